"""Hand-chosen null-space bases whose coordinates give the classical RREF columns."""

from __future__ import annotations

from fractions import Fraction

from ..symtensor import BasisOrder, SymCoords, enumerate_basis


def _vec(order: BasisOrder, entries: dict) -> SymCoords:
    zero = Fraction(0)
    c = [zero] * len(order)
    for label, v in entries.items():
        c[order.index(tuple(int(ch) for ch in label))] = v
    return SymCoords(order, tuple(c))


def cone_quartic_null_basis(gamma, order: BasisOrder | None = None) -> list[SymCoords]:
    """Null vectors scaled so that sum v_i n_i is
    2a(E1100+E0011) + 2b(E1010+E0101) + 2c(E1001+E0110)
    + g d E2000 + (d+e+f) E0200 + (d-e) E0020 + (d-f) E0002."""
    order = order or enumerate_basis(4, 2)
    one = gamma - gamma + 1
    two = 2 * one
    return [
        _vec(order, {"1100": two, "0011": two}),
        _vec(order, {"1010": two, "0101": two}),
        _vec(order, {"1001": two, "0110": two}),
        _vec(order, {"2000": gamma, "0200": one, "0020": one, "0002": one}),
        _vec(order, {"0200": one, "0020": -one}),
        _vec(order, {"0200": one, "0002": -one}),
    ]


def f_rho_null_basis(rho, order: BasisOrder | None = None) -> list[SymCoords]:
    """Null vectors scaled so that sum v_i n_i is
    a E300 + 3(b - r a) E120 + 6 r b E102 + c E030 + 3(d - r c) E012 + 6 r d E210
    + e E003 + 3(f - r e) E201 + 6 r f E021 + 6 g E111."""
    order = order or enumerate_basis(3, 3)
    one = rho - rho + 1
    return [
        _vec(order, {"300": one, "120": -3 * rho}),
        _vec(order, {"120": 3 * one, "102": 6 * rho}),
        _vec(order, {"030": one, "012": -3 * rho}),
        _vec(order, {"012": 3 * one, "210": 6 * rho}),
        _vec(order, {"003": one, "201": -3 * rho}),
        _vec(order, {"201": 3 * one, "021": 6 * rho}),
        _vec(order, {"111": 6 * one}),
    ]
