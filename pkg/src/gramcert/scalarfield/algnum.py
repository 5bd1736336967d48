"""Real algebraic numbers as residues modulo a polynomial with a chosen real root."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .roots import count_roots, isolate_real_roots, refine_root
from .unipoly import UniPoly, poly_gcd, poly_xgcd, squarefree_part


@dataclass(frozen=True)
class AlgField:
    """Q[s]/(modulus) together with the real root s isolated in (lo, hi)."""

    modulus: UniPoly
    lo: Fraction
    hi: Fraction
    name: str = "s"

    def __post_init__(self):
        m = self.modulus
        if m.degree < 1:
            raise ValueError("modulus must have positive degree")
        if squarefree_part(m).degree != m.degree:
            raise ValueError("modulus must be square-free")
        if m(self.lo) == 0 or m(self.hi) == 0:
            raise ValueError("isolating interval endpoints must not be roots")
        if count_roots(m, self.lo, self.hi) != 1:
            raise ValueError("interval must contain exactly one real root")

    @classmethod
    def from_root_index(cls, modulus: UniPoly, index: int, name: str = "s") -> "AlgField":
        """Field for the index-th real root of modulus (ascending, 0-based)."""
        ivs = isolate_real_roots(modulus)
        lo, hi = ivs[index]
        return cls(squarefree_part(modulus).monic(), lo, hi, name)

    @property
    def gen(self) -> "AlgNum":
        return AlgNum(self, UniPoly.x())

    def __call__(self, value) -> "AlgNum":
        return AlgNum(self, value)

    def approx(self, width=Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
        return refine_root(self.modulus, self.lo, self.hi, width)


class AlgNum:
    __slots__ = ("field", "residue")

    def __init__(self, field: AlgField, residue):
        r = UniPoly.coerce(residue)
        if r is NotImplemented:
            raise TypeError("residue must be a polynomial or rational")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "residue", r % field.modulus)

    def __setattr__(self, name, value):
        raise AttributeError("AlgNum is immutable")

    def _wrap(self, other):
        if isinstance(other, AlgNum):
            if other.field != self.field:
                raise ValueError("cannot mix algebraic numbers from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return AlgNum(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgNum(self.field, self.residue + o.residue)

    __radd__ = __add__

    def __neg__(self):
        return AlgNum(self.field, -self.residue)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgNum(self.field, self.residue - o.residue)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgNum(self.field, self.residue * o.residue)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = AlgNum(self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "AlgNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero algebraic number")
        m = self.field.modulus
        g = poly_gcd(self.residue, m)
        if g.degree > 0:
            # s is not a root of g, so it is a root of m/g
            m = m.exact_div(g)
        _, u, _ = poly_xgcd(self.residue % m, m)
        return AlgNum(self.field, u)

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def is_zero(self) -> bool:
        f = self.field
        if self.residue.is_zero():
            return True
        g = poly_gcd(self.residue, f.modulus)
        if g.degree < 1:
            return False
        return count_roots(g, f.lo, f.hi) == 1

    def sign(self) -> int:
        return algnum_sign(self)

    def __eq__(self, other):
        if isinstance(other, AlgNum) and other.field != self.field:
            return False
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        # residues are canonical only for an irreducible modulus
        r = self.rational_value()
        return hash(r) if r is not None else hash((self.field, self.residue))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return not self.is_zero()

    def rational_value(self) -> Fraction | None:
        r = self.residue
        if r.degree <= 0:
            return r[0]
        return None

    def __float__(self):
        lo, hi = self.field.approx()
        return float(self.residue((lo + hi) / 2))

    def to_str(self) -> str:
        body = self.residue.to_str(self.field.name)
        return body

    def __repr__(self):
        return f"AlgNum({self.to_str()})"

    __str__ = to_str


def algnum_sign(a: AlgNum) -> int:
    """Sign of the real number a, by exact zero test then interval refinement."""
    if a.is_zero():
        return 0
    f = a.field
    r = squarefree_part(a.residue)
    lo, hi = f.lo, f.hi
    m = f.modulus
    while True:
        inside = count_roots(r, lo, hi) if r.degree >= 1 else 0
        if inside == 0 and r(hi) != 0 and r(lo) != 0:
            v = a.residue((lo + hi) / 2)
            return 1 if v > 0 else -1
        lo, hi = refine_root(m, lo, hi, (hi - lo) / 2)
