"""Homogeneous polynomials over an exact scalar field."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..scalarfield import GaussRat
from ..symtensor import MultiIndex


def default_varnames(n: int) -> tuple[str, ...]:
    if n == 3:
        return ("x", "y", "z")
    if n == 4:
        return ("w", "x", "y", "z")
    if n == 6:
        return ("u", "v", "w", "x", "y", "z")
    return tuple(f"x{i + 1}" for i in range(n))


@dataclass(frozen=True)
class Form:
    """sum_alpha terms[alpha] * x^alpha with every |alpha| == degree."""

    n: int
    degree: int
    terms: Mapping = field(default_factory=dict)
    varnames: tuple = ()

    def __post_init__(self):
        clean = {}
        for a, c in dict(self.terms).items():
            a = MultiIndex(a)
            if a.n != self.n:
                raise ValueError(f"term {a.label()} has {a.n} variables, expected {self.n}")
            if a.order != self.degree:
                raise ValueError(
                    f"term {a.label()} has degree {a.order}, expected {self.degree}"
                )
            if c:
                clean[a] = c
        object.__setattr__(self, "terms", clean)
        if not self.varnames:
            object.__setattr__(self, "varnames", default_varnames(self.n))
        elif len(self.varnames) != self.n:
            raise ValueError("varnames length does not match n")
        else:
            object.__setattr__(self, "varnames", tuple(self.varnames))

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, n: int, degree: int, varnames=()) -> "Form":
        return cls(n, degree, {}, varnames)

    @classmethod
    def variable(cls, n: int, k: int, varnames=()) -> "Form":
        e = [0] * n
        e[k] = 1
        return cls(n, 1, {MultiIndex(e): Fraction(1)}, varnames)

    @classmethod
    def monomial(cls, exps, coeff=Fraction(1), varnames=()) -> "Form":
        a = MultiIndex(exps)
        return cls(a.n, a.order, {a: coeff}, varnames)

    def with_names(self, varnames) -> "Form":
        return Form(self.n, self.degree, self.terms, tuple(varnames))

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, alpha):
        return self.terms.get(MultiIndex(alpha), Fraction(0))

    def support(self) -> list[MultiIndex]:
        return sorted(self.terms, reverse=True)

    def is_even_in(self, k: int) -> bool:
        return all(a[k] % 2 == 0 for a in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Form"):
        if self.n != other.n:
            raise ValueError("forms in different numbers of variables")

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return Form(self.n, other.degree, other.terms, self.varnames)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return Form(self.n, self.degree, out, self.varnames)

    def __neg__(self):
        return Form(self.n, self.degree, {a: -c for a, c in self.terms.items()}, self.varnames)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Form":
        return Form(self.n, self.degree, {a: c * v for a, v in self.terms.items()}, self.varnames)

    def __mul__(self, other):
        if isinstance(other, Form):
            self._check(other)
            out: dict = {}
            for a, c in self.terms.items():
                for b, d in other.terms.items():
                    k = a + b
                    v = c * d
                    out[k] = out[k] + v if k in out else v
            return Form(self.n, self.degree + other.degree, out, self.varnames)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a form")
        out = Form(self.n, 0, {MultiIndex([0] * self.n): Fraction(1)}, self.varnames)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.is_zero() and other.is_zero():
            return True
        if self.degree != other.degree:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(
            self.terms.get(a, 0) == other.terms.get(a, 0) for a in keys
        )

    def __hash__(self):
        return hash((self.n, self.degree, len(self.terms)))

    def map_coeffs(self, fn) -> "Form":
        return Form(self.n, self.degree, {a: fn(c) for a, c in self.terms.items()}, self.varnames)

    def embed(self, n_new: int, positions: Sequence[int], varnames=()) -> "Form":
        """Rename variable i to variable positions[i] of a larger ring."""
        out = {}
        for a, c in self.terms.items():
            e = [0] * n_new
            for i, k in enumerate(a):
                e[positions[i]] += k
            out[MultiIndex(e)] = c
        return Form(n_new, self.degree, out, varnames)

    # -- display ------------------------------------------------------------

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a in self.support():
            c = self.terms[a]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.varnames, a) if e
            )
            neg = isinstance(c, (int, Fraction)) and c < 0
            mag = -c if neg else c
            cs = str(mag)
            if not isinstance(mag, (int, Fraction)) and any(ch in cs for ch in "+- "):
                cs = f"({cs})"
            if not mono:
                body = cs
            elif mag == 1:
                body = mono
            else:
                body = f"{cs}*{mono}"
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    __str__ = to_str

    def __repr__(self):
        return f"Form({self.to_str()})"


def eval_at(f: Form, z: Sequence):
    """Exact value sum c_alpha z^alpha."""
    if len(z) != f.n:
        raise ValueError(f"point has {len(z)} coordinates, form has {f.n} variables")
    acc = 0
    for a, c in f.terms.items():
        m = c
        for zi, e in zip(z, a):
            if e:
                m = m * zi ** e
        acc = acc + m
    return acc


def even_substitute(f: Form, k: int, replacement: Form) -> Form:
    """Replace x_k^2 by the quadratic form `replacement` throughout f."""
    if replacement.n != f.n or (replacement.degree != 2 and not replacement.is_zero()):
        raise ValueError("replacement must be a quadratic form in the same variables")
    for a in f.terms:
        if a[k] % 2:
            raise ValueError(f"form is not even in variable {f.varnames[k]}: term {a.label()}")
    powers = [Form.monomial([0] * f.n, Fraction(1), f.varnames)]
    out = Form.zero(f.n, f.degree, f.varnames)
    for a, c in f.terms.items():
        half = a[k] // 2
        while len(powers) <= half:
            powers.append(powers[-1] * replacement)
        rest = list(a)
        rest[k] = 0
        out = out + Form.monomial(rest, c, f.varnames) * powers[half]
    return out


@dataclass(frozen=True)
class SosExpression:
    """sum_j weights[j] * squares[j]^2 with positive weights."""

    weights: tuple
    squares: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "squares", tuple(self.squares))
        if len(self.weights) != len(self.squares):
            raise ValueError("weights and squares differ in length")
        from ..scalarfield import sign

        for w in self.weights:
            try:
                s = sign(w)
            except TypeError:
                continue  # parametric weights are trusted by the caller
            if s <= 0:
                raise ValueError(f"weight {w} is not positive")
        if self.squares:
            n, p = self.squares[0].n, self.squares[0].degree
            for q in self.squares:
                if q.n != n or (q.degree != p and not q.is_zero()):
                    raise ValueError("all squared forms must share n and degree")

    @classmethod
    def unit(cls, squares) -> "SosExpression":
        squares = tuple(squares)
        return cls(tuple(Fraction(1) for _ in squares), squares)

    @property
    def n(self) -> int:
        return self.squares[0].n

    @property
    def p(self) -> int:
        return self.squares[0].degree

    def __len__(self):
        return len(self.squares)


def sos_expand(e: SosExpression) -> Form:
    if not e.squares:
        raise ValueError("empty sum of squares has no variable count")
    out = Form.zero(e.n, 2 * e.p, e.squares[0].varnames)
    for w, q in zip(e.weights, e.squares):
        out = out + (q * q).scale(w)
    return out
