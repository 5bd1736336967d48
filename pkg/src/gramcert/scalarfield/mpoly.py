"""Sparse multivariate polynomials with named variables.

A monomial is a sorted tuple of (name, exponent) pairs; coefficients are
any exact scalars that support +, *, and truth testing (Fraction by
default). Used for symbolic principal minors and for reducing identities
modulo simple relation sets.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple  # tuple[tuple[str, int], ...]

ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_str(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def _mono_key(m: Monomial):
    return (-sum(e for _, e in m), tuple((v, -e) for v, e in m))


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({ONE_MONO: c})

    @staticmethod
    def coerce(other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly({ONE_MONO: Fraction(other)})
        # any other exact scalar type is accepted as a constant coefficient
        if hasattr(other, "__add__") and hasattr(other, "__mul__") and not isinstance(other, (str, bytes)):
            return MPoly({ONE_MONO: other})
        return NotImplemented

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def degree_in(self, v: str) -> int:
        return max((dict(m).get(v, 0) for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(m == ONE_MONO for m in self.terms)

    def constant_term(self):
        return self.terms.get(ONE_MONO, Fraction(0))

    def coeff_in(self, v: str, k: int) -> "MPoly":
        """Coefficient of v^k, as a polynomial in the remaining variables."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(v, 0) == k:
                d.pop(v, None)
                out[tuple(sorted(d.items()))] = c
        return MPoly(out)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = MPoly.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out[m] + c if m in out else c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = MPoly.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = MPoly.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = MPoly.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return MPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if other.is_constant() and not other.is_zero():
                other = other.constant_term()
            else:
                return self.exact_div(other)
        return MPoly({m: c / other for m, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = MPoly.const(Fraction(1)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = MPoly.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- substitution and division -------------------------------------------

    def subs(self, values: Mapping[str, object]) -> "MPoly":
        """Substitute variables by scalars or MPolys."""
        out = MPoly()
        cache: dict = {}
        for m, c in self.terms.items():
            term = MPoly({ONE_MONO: c})
            rest = []
            for v, e in m:
                if v in values:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = MPoly.coerce(values[v]) ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term * MPoly({tuple(rest): Fraction(1)})
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, object]):
        r = self.subs(values)
        if not r.is_constant():
            raise ValueError(f"unassigned variables {sorted(r.variables())}")
        return r.constant_term()

    def leading(self):
        m = min(self.terms, key=_lex_key)
        return m, self.terms[m]

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Quotient when other divides self exactly (lex order division)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lm, lc = other.leading()
        rem = self
        quot = MPoly()
        while not rem.is_zero():
            m, c = rem.leading()
            q = _mono_div(m, lm)
            if q is None:
                raise ArithmeticError("inexact multivariate division")
            t = MPoly({q: c / lc})
            quot = quot + t
            rem = rem - t * other
        return quot

    def reduce(self, rules: Iterable[tuple[str, int, "MPoly"]]) -> "MPoly":
        """Rewrite v^k -> replacement repeatedly until no rule applies.

        Rules like ("r", 3, -1/2) or ("c", 2, 2*r^2) form a triangular system
        that terminates when each replacement has lower degree in its variable.
        """
        rules = [(v, k, MPoly.coerce(r)) for v, k, r in rules]
        cur = self
        for _ in range(1000):
            changed = False
            out = MPoly()
            for m, c in cur.terms.items():
                d = dict(m)
                hit = None
                for v, k, r in rules:
                    if d.get(v, 0) >= k:
                        hit = (v, k, r)
                        break
                if hit is None:
                    out = out + MPoly({m: c})
                    continue
                v, k, r = hit
                d[v] -= k
                if d[v] == 0:
                    del d[v]
                out = out + MPoly({tuple(sorted(d.items())): c}) * r
                changed = True
            cur = out
            if not changed:
                return cur
        raise RuntimeError("relation reduction did not terminate")

    def is_provably_positive(self, positive: Iterable[str]) -> bool:
        """True if every coefficient is positive rational and every variable is
        a positive symbol, which makes the value positive whenever they are."""
        pos = set(positive)
        if self.is_zero():
            return False
        for m, c in self.terms.items():
            if not isinstance(c, (int, Fraction)) or c <= 0:
                return False
            if any(v not in pos for v, _ in m):
                return False
        return True

    # -- display ------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _mono_key(mc[0]))

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            neg = isinstance(c, (int, Fraction)) and c < 0
            a = -c if neg else c
            ms = _mono_str(m)
            if not ms:
                body = str(a)
            elif a == 1:
                body = ms
            else:
                cs = str(a)
                if not isinstance(a, (int, Fraction)) and any(ch in cs for ch in "+- "):
                    cs = f"({cs})"
                body = f"{cs}*{ms}"
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"MPoly({self.to_str()})"

    __str__ = to_str


def _lex_key(m: Monomial):
    # larger monomials first in lex order on variable names
    d = dict(m)
    names = sorted(d)
    return tuple((0, n, -d[n]) for n in names) + ((1,),)


def _mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    d = dict(a)
    for v, e in b:
        if d.get(v, 0) < e:
            return None
        d[v] -= e
        if d[v] == 0:
            del d[v]
    return tuple(sorted(d.items()))


def symbols(names: str) -> list[MPoly]:
    return [MPoly.var(n) for n in names.replace(",", " ").split()]
