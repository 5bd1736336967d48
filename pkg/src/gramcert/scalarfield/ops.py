"""Helpers that work uniformly across the scalar tower."""

from __future__ import annotations

from fractions import Fraction

from .algnum import AlgNum, algnum_sign
from .gauss import GaussRat
from .ratfunc import RatFunc
from .unipoly import UniPoly


def sign(x) -> int:
    """Sign of a real exact scalar (Fraction, int or AlgNum)."""
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    if isinstance(x, AlgNum):
        return algnum_sign(x)
    if isinstance(x, RatFunc) and x.is_constant():
        return sign(x.constant_value())
    raise TypeError(f"sign is undefined for {type(x).__name__}")


def is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, RatFunc) and x.is_constant():
        return x.constant_value()
    if isinstance(x, AlgNum):
        r = x.rational_value()
        if r is not None:
            return r
    if isinstance(x, GaussRat) and x.im == 0:
        return x.re
    raise TypeError(f"{x!r} is not rational")


def fmt(x) -> str:
    """Compact exact string form, e.g. "3/4", "(1 - 16*g^3)/(...)"."""
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


def scalar_to_json(x):
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, GaussRat):
        return {"re": str(x.re), "im": str(x.im)}
    if isinstance(x, RatFunc):
        return {
            "var": x.var,
            "num": [str(c) for c in x.num.coeffs],
            "den": [str(c) for c in x.den.coeffs],
        }
    if isinstance(x, AlgNum):
        f = x.field
        return {
            "modulus": [str(c) for c in f.modulus.coeffs],
            "residue": [str(c) for c in x.residue.coeffs],
            "interval": [str(f.lo), str(f.hi)],
        }
    if isinstance(x, UniPoly):
        return [str(c) for c in x.coeffs]
    return str(x)


def parse_rational(text: str) -> Fraction:
    t = text.strip()
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
