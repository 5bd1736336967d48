"""Rational functions in one parameter over Q."""

from __future__ import annotations

from fractions import Fraction

from .roots import count_roots
from .unipoly import UniPoly, poly_gcd


class RatFunc:
    """Normalized quotient num/den with den monic and gcd(num, den) = 1.

    `var` is only a display name; two RatFuncs with different names still
    combine, so callers should use one parameter per computation.
    """

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=None, var: str = "t", _normalized: bool = False):
        num = UniPoly.coerce(num)
        den = UniPoly([1]) if den is None else UniPoly.coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc needs polynomial numerator and denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def param(cls, var: str = "t") -> "RatFunc":
        return cls(UniPoly.x(), var=var)

    def _wrap(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, UniPoly)):
            return RatFunc(other, var=self.var)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num[0]

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den, self.var)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, self.var)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, self.var, _normalized=True)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, self.var)

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

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, self.var, _normalized=True)

    def __eq__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.num[0])
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("rational function has a pole there")
        return self.num(x) / d

    def subs(self, x) -> Fraction:
        return Fraction(self(Fraction(x)))

    def sign_on_interval(self, lo: Fraction, hi: Fraction) -> int:
        """Constant sign on the open interval (lo, hi), or raise if it changes."""
        for poly in (self.num, self.den):
            if poly.is_zero():
                return 0
            if poly.degree >= 1:
                inside = count_roots(poly, lo, hi)
                if poly(hi) == 0:
                    inside -= 1
                if inside:
                    raise ValueError(
                        f"sign of {self} is not constant on ({lo}, {hi})"
                    )
        mid = (lo + hi) / 2
        v = self(mid)
        return (v > 0) - (v < 0)

    def to_str(self) -> str:
        n = self.num.to_str(self.var)
        if self.den.is_constant():
            return n
        d = self.den.to_str(self.var)
        n = n if len(self.num.coeffs) <= 1 or n.startswith("(") else f"({n})"
        return f"{n}/({d})"

    def __repr__(self):
        return f"RatFunc({self.to_str()})"

    __str__ = to_str


def _normalize(num: UniPoly, den: UniPoly) -> tuple[UniPoly, UniPoly]:
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return UniPoly(), UniPoly([1])
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num.exact_div(g), den.exact_div(g)
    lc = den.lc
    return num / lc, den / lc


def ratfunc_normalize(n: UniPoly, d: UniPoly, var: str = "t") -> RatFunc:
    return RatFunc(n, d, var)
