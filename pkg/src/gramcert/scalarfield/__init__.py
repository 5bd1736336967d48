"""Exact scalars: rationals, polynomials, rational functions, algebraic numbers."""

from fractions import Fraction as Rat

from .algnum import AlgField, AlgNum, algnum_sign
from .gauss import GaussRat, parse_gauss
from .mpoly import MPoly, symbols
from .ops import as_fraction, fmt, is_zero, parse_rational, scalar_to_json, sign
from .ratfunc import RatFunc, ratfunc_normalize
from .roots import count_roots, isolate_real_roots, refine_root, sturm_sequence
from .unipoly import UniPoly, from_roots, poly_gcd, poly_xgcd, squarefree_part

__all__ = [
    "Rat",
    "UniPoly",
    "RatFunc",
    "AlgField",
    "AlgNum",
    "GaussRat",
    "MPoly",
    "algnum_sign",
    "as_fraction",
    "count_roots",
    "fmt",
    "from_roots",
    "is_zero",
    "isolate_real_roots",
    "parse_gauss",
    "parse_rational",
    "poly_gcd",
    "poly_xgcd",
    "ratfunc_normalize",
    "refine_root",
    "scalar_to_json",
    "sign",
    "squarefree_part",
    "sturm_sequence",
    "symbols",
]
