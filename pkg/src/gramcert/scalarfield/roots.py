"""Sturm sequences and real root isolation over Q."""

from __future__ import annotations

from fractions import Fraction

from .unipoly import UniPoly, squarefree_part


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: list[UniPoly], x: Fraction) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: UniPoly, lo: Fraction, hi: Fraction, seq=None) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    if seq is None:
        seq = sturm_sequence(squarefree_part(p))
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def cauchy_bound(p: UniPoly) -> Fraction:
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(p: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (lo, hi), one per distinct real root, ascending.

    Each returned interval satisfies p(lo) != 0, p(hi) != 0 and contains
    exactly one root of p in its interior.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    sf = squarefree_part(p)
    if sf.degree < 1:
        return []
    seq = sturm_sequence(sf)
    b = cauchy_bound(sf)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(sf, lo, hi, seq)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        # keep endpoints off the roots so every interval is open and clean
        step = (hi - lo) / 64
        while sf(mid) == 0:
            mid += step
            step /= 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    # endpoints might be roots only for the outer bound; the Cauchy bound is strict
    return out


def refine_root(p: UniPoly, lo: Fraction, hi: Fraction, width: Fraction):
    """Shrink (lo, hi) around its unique simple root of p until hi - lo < width."""
    slo = _sign(p(lo))
    while hi - lo >= width:
        mid = (lo + hi) / 2
        sm = _sign(p(mid))
        if sm == 0:
            eps = (hi - lo) / 8
            return mid - eps, mid + eps
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi
