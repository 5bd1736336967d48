"""Multi-indices and coordinates on the symmetric tensor space S^p(R^n).

Elements of S^p(R^n) are stored in the basis E_alpha (|alpha| = p), where
E_alpha is the symmetrization of the standard tensor with alpha_i copies of
e_i. Two facts drive everything else:

    E_alpha . E_beta = alpha!/p!  if alpha == beta, else 0
    E_alpha . x^(tensor p) = x^alpha

so x^(tensor p) has coordinate (p!/alpha!) x^alpha on E_alpha.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable, Sequence

from .scalarfield import GaussRat


class MultiIndex(tuple):
    """Exponent vector alpha in N_0^n."""

    def __new__(cls, exps: Iterable[int]):
        exps = tuple(int(e) for e in exps)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        return super().__new__(cls, exps)

    @classmethod
    def parse(cls, text: str) -> "MultiIndex":
        """Accept "2,0,0,0" or the compact "2000" (single-digit exponents)."""
        t = text.strip()
        if "," in t:
            return cls(int(x) for x in t.split(","))
        if not t.isdigit():
            raise ValueError(f"bad multi-index {text!r}")
        return cls(int(ch) for ch in t)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def order(self) -> int:
        return sum(self)

    def factorial(self) -> int:
        return prod(factorial(e) for e in self)

    def __add__(self, other):
        return MultiIndex(a + b for a, b in zip(self, other))

    def label(self) -> str:
        if all(e < 10 for e in self):
            return "".join(str(e) for e in self)
        return ",".join(str(e) for e in self)

    def __str__(self):
        return ",".join(str(e) for e in self)

    def __repr__(self):
        return f"E{self.label()}"


def dim_sym(n: int, p: int) -> int:
    """Dimension C(n+p-1, p) of S^p(R^n)."""
    if n < 1 or p < 0:
        raise ValueError("need n >= 1 and p >= 0")
    return comb(n + p - 1, p)


def multi_indices(n: int, p: int) -> list[MultiIndex]:
    """All alpha with |alpha| = p in graded-lex order: (p,0,..) first."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(MultiIndex(prefix + [left]))
            return
        for e in range(left, -1, -1):
            rec(prefix + [e], left - e, slots - 1)

    rec([], p, n)
    return out


@dataclass(frozen=True)
class BasisOrder:
    n: int
    p: int
    sequence: tuple
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        seq = tuple(MultiIndex(a) for a in self.sequence)
        object.__setattr__(self, "sequence", seq)
        for a in seq:
            if a.n != self.n or a.order != self.p:
                raise ValueError(f"multi-index {a.label()} does not have n={self.n}, order {self.p}")
        if len(set(seq)) != len(seq):
            dup = [a.label() for a in seq if seq.count(a) > 1]
            raise ValueError(f"duplicate multi-indices in basis order: {sorted(set(dup))}")
        if len(seq) != dim_sym(self.n, self.p):
            raise ValueError(
                f"basis order has {len(seq)} entries, expected {dim_sym(self.n, self.p)}"
            )
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(seq)})

    def __len__(self):
        return len(self.sequence)

    def __iter__(self):
        return iter(self.sequence)

    def __getitem__(self, i):
        return self.sequence[i]

    def index(self, alpha) -> int:
        return self._index[MultiIndex(alpha)]

    def weights(self) -> list[Fraction]:
        return [Fraction(a.factorial(), factorial(self.p)) for a in self.sequence]

    def labels(self) -> list[str]:
        return [a.label() for a in self.sequence]


def enumerate_basis(n: int, p: int, scheme="graded-lex") -> BasisOrder:
    """Basis order of S^p(R^n); scheme is "graded-lex" or an explicit list."""
    if isinstance(scheme, str):
        if scheme != "graded-lex":
            raise ValueError(f"unknown basis scheme {scheme!r}")
        return BasisOrder(n, p, tuple(multi_indices(n, p)))
    return BasisOrder(n, p, tuple(MultiIndex(a) for a in scheme))


def monomial_exponents(text: str, variables: Sequence[str]) -> MultiIndex:
    """Exponents of a monomial written like "w^2", "w²", "x*y", "yz"."""
    exps = [0] * len(variables)
    t = text.strip().replace(" ", "")
    if "*" in t:
        pieces = t.split("*")
    else:
        # compact products of single-letter variables: "wx", "y^2z"
        pieces = re.findall(r"[A-Za-z]\d*(?:\^\d+|²|³)?", t)
        if "".join(pieces) != t:
            raise ValueError(f"cannot read monomial {text!r}")
    for piece in pieces:
        m = re.fullmatch(r"([A-Za-z]\w*?)(?:\^(\d+)|(²|³))?", piece)
        if not m:
            raise ValueError(f"cannot read monomial factor {piece!r}")
        name, e, sup = m.groups()
        if name not in variables:
            raise ValueError(f"unknown variable {name!r} in {text!r}")
        k = int(e) if e else ({"²": 2, "³": 3}[sup] if sup else 1)
        exps[list(variables).index(name)] += k
    return MultiIndex(exps)


def basis_from_monomials(monomials: Sequence[str], variables: Sequence[str]) -> BasisOrder:
    idx = [monomial_exponents(m, variables) for m in monomials]
    if not idx:
        raise ValueError("empty basis order")
    return BasisOrder(len(variables), idx[0].order, tuple(idx))


def basis_inner(alpha, beta, p: int | None = None) -> Fraction:
    """E_alpha . E_beta."""
    a, b = MultiIndex(alpha), MultiIndex(beta)
    if p is None:
        p = a.order
    if a.order != p or b.order != p:
        raise ValueError(f"degree mismatch: |{a.label()}|, |{b.label()}| vs p={p}")
    if a != b:
        return Fraction(0)
    return Fraction(a.factorial(), factorial(p))


def raw_components(alpha) -> dict[tuple[int, ...], Fraction]:
    """E_alpha as an unsymmetrized p-tensor: word (i1..ip) -> component."""
    a = MultiIndex(alpha)
    p = a.order
    w = Fraction(a.factorial(), factorial(p))
    out = {}
    for word in itertools.product(range(a.n), repeat=p):
        counts = [0] * a.n
        for i in word:
            counts[i] += 1
        if tuple(counts) == tuple(a):
            out[word] = w
    return out


@dataclass(frozen=True)
class SymCoords:
    """t = sum_alpha coords[alpha] E_alpha."""

    order: BasisOrder
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) != len(self.order):
            raise ValueError("coordinate count does not match basis order")

    @classmethod
    def zero(cls, order: BasisOrder) -> "SymCoords":
        return cls(order, (Fraction(0),) * len(order))

    @classmethod
    def basis(cls, order: BasisOrder, alpha, coeff=Fraction(1)) -> "SymCoords":
        c = [Fraction(0)] * len(order)
        c[order.index(alpha)] = coeff
        return cls(order, tuple(c))

    def __getitem__(self, alpha):
        return self.coords[self.order.index(alpha)]

    def __add__(self, other: "SymCoords") -> "SymCoords":
        self._same(other)
        return SymCoords(self.order, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "SymCoords") -> "SymCoords":
        self._same(other)
        return SymCoords(self.order, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return SymCoords(self.order, tuple(-a for a in self.coords))

    def scale(self, c) -> "SymCoords":
        return SymCoords(self.order, tuple(c * a for a in self.coords))

    __rmul__ = scale

    def _same(self, other):
        if self.order.sequence != other.order.sequence:
            raise ValueError("symmetric tensors use different basis orders")

    def monomial_vector(self) -> list:
        """mu(t): the pairings E_alpha . t in basis order."""
        return [w * c for w, c in zip(self.order.weights(), self.coords)]

    def dot(self, other: "SymCoords"):
        self._same(other)
        acc = 0
        for w, a, b in zip(self.order.weights(), self.coords, other.coords):
            if a and b:
                acc = acc + w * a * b
        return acc

    def is_zero(self) -> bool:
        return all(not c for c in self.coords)

    def reorder(self, order: BasisOrder) -> "SymCoords":
        return SymCoords(order, tuple(self[a] for a in order))

    def __str__(self):
        parts = [f"{c}*E{a.label()}" for a, c in zip(self.order, self.coords) if c]
        return " + ".join(parts) if parts else "0"


def rankone_coords(x: Sequence, p: int, order: BasisOrder | None = None) -> SymCoords:
    """Coordinates of x^(tensor p): (p!/alpha!) x^alpha on E_alpha."""
    n = len(x)
    order = order or enumerate_basis(n, p)
    pf = factorial(p)
    coords = []
    for a in order:
        mono = 1
        for xi, e in zip(x, a):
            if e:
                mono = mono * xi ** e
        coords.append(Fraction(pf, a.factorial()) * mono)
    return SymCoords(order, tuple(coords))


def tensor_eval(alpha, z: Sequence):
    """z^alpha, the pairing E_alpha . z^(tensor p)."""
    out = GaussRat(1)
    for zi, e in zip(z, MultiIndex(alpha)):
        if e:
            out = out * zi ** e
    return out


def complex_rankone_parts(z: Sequence, p: int, order: BasisOrder | None = None):
    """(Re z^(tensor p), Im z^(tensor p)) as real symmetric tensors."""
    zz = [zi if isinstance(zi, GaussRat) else GaussRat(zi) for zi in z]
    full = rankone_coords(zz, p, order)
    re_part = SymCoords(full.order, tuple(c.re for c in full.coords))
    im_part = SymCoords(full.order, tuple(c.im for c in full.coords))
    return re_part, im_part
