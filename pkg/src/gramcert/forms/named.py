"""Builders for the specific forms studied in this package.

Each builder works over whatever scalar type its parameters live in:
rationals, a rational function field, or an algebraic number field.
"""

from __future__ import annotations

from fractions import Fraction

from ..scalarfield import AlgField, UniPoly
from .form import Form, SosExpression

F = Fraction
WXYZ = ("w", "x", "y", "z")
XYZ = ("x", "y", "z")
UVWXYZ = ("u", "v", "w", "x", "y", "z")


def _vars(names):
    n = len(names)
    return [Form.variable(n, i, names) for i in range(n)]


def q_form() -> Form:
    w, x, y, z = _vars(WXYZ)
    return w**4 + x**2 * y**2 + y**2 * z**2 + z**2 * x**2 - (w * x * y * z).scale(F(4))


def q_eta(eta) -> Form:
    _, x, y, z = _vars(WXYZ)
    return q_form() + (x**4 + y**4 + z**4).scale(eta)


def s_form() -> Form:
    x, y, z = _vars(XYZ)
    return x**4 * y**2 + y**4 * z**2 + z**4 * x**2 - (x**2 * y**2 * z**2).scale(F(3))


def s_eta(eta) -> Form:
    x, y, z = _vars(XYZ)
    return s_form() + (x**6 + y**6 + z**6).scale(eta)


def eta0_field() -> AlgField:
    """Q[s]/(s^3 - s/2 + 1/9) at its smallest positive root, s in (1/4, 13/50)."""
    return AlgField(UniPoly([F(1, 9), F(-1, 2), 0, 1]), F(1, 4), F(13, 50), "s")


def sosquartic(field: AlgField | None = None) -> SosExpression:
    """The four weighted squares representing q + s^2 (x^4+y^4+z^4) with s = sqrt(eta0)."""
    K = field or eta0_field()
    s = K.gen
    w, x, y, z = _vars(WXYZ)
    one = K(1)
    lift = lambda f: f.map_coeffs(lambda c: one * c)
    squares = [
        lift(w * w) - (x * x + y * y + z * z).scale(s),
        (w * x).scale(3 * s) - lift(y * z),
        (w * y).scale(3 * s) - lift(z * x),
        (w * z).scale(3 * s) - lift(x * y),
    ]
    c = F(2, 9) / s
    return SosExpression((one, c, c, c), tuple(squares))


def cone_quartic(gamma, a=(1, 1, 1, 1)) -> SosExpression:
    """a1 (3w^2 - g(x^2+y^2+z^2))^2 + a2 (wx-yz)^2 + a3 (wy-zx)^2 + a4 (wz-xy)^2."""
    w, x, y, z = _vars(WXYZ)
    first = (w * w).scale(F(3)) - (x * x + y * y + z * z).scale(gamma)
    squares = (first, w * x - y * z, w * y - z * x, w * z - x * y)
    return SosExpression(tuple(F(v) if isinstance(v, (int, str)) else v for v in a), squares)


def noncoercive_quartic(gamma) -> SosExpression:
    u, v, w, x, y, z = _vars(UVWXYZ)
    squares = (
        u * u + v * v + v * w,
        w * w - (x * x + y * y + z * z).scale(gamma),
        w * x - y * z,
        w * y - z * x,
        w * z - x * y,
    )
    return SosExpression.unit(squares)


def f_rho(rho) -> SosExpression:
    """x^2 (r^2 x^2 + r y^2 - z^2/2)^2 + cyclic, as three squared cubics."""
    x, y, z = _vars(XYZ)
    r2 = rho * rho
    half = F(1, 2)

    def cubic(a, b, c):
        return a * ((a * a).scale(r2) + (b * b).scale(rho) - (c * c).scale(half))

    return SosExpression.unit((cubic(x, y, z), cubic(y, z, x), cubic(z, x, y)))


def noncoercive_sextic() -> SosExpression:
    """f_{-1}(sqrt(w^2+x^2), y, z) written as four squared cubics."""
    w, x, y, z = _vars(WXYZ)
    h = F(1, 2)
    squares = (
        w**3 + w * x * x - w * y * y - (w * z * z).scale(h),
        x * w * w + x**3 - x * y * y - (x * z * z).scale(h),
        y**3 - y * z * z - (y * w * w).scale(h) - (y * x * x).scale(h),
        z**3 - z * w * w - z * x * x - (z * y * y).scale(h),
    )
    return SosExpression.unit(squares)


NAMES = (
    "q",
    "q_eta",
    "s",
    "s_eta",
    "sosquartic",
    "cone_quartic",
    "noncoercive_quartic",
    "f_rho",
    "noncoercive_sextic",
)


def build_named(name: str, **params):
    """Dispatch by name; returns a Form or an SosExpression."""
    if name == "q":
        return q_form()
    if name == "q_eta":
        return q_eta(params.get("eta", 0))
    if name == "s":
        return s_form()
    if name == "s_eta":
        return s_eta(params.get("eta", 0))
    if name == "sosquartic":
        return sosquartic(params.get("field"))
    if name == "cone_quartic":
        return cone_quartic(params["gamma"], params.get("a", (1, 1, 1, 1)))
    if name == "noncoercive_quartic":
        return noncoercive_quartic(params.get("gamma", F(1, 9)))
    if name == "f_rho":
        return f_rho(params["rho"])
    if name == "noncoercive_sextic":
        return noncoercive_sextic()
    raise ValueError(f"unknown named form {name!r}; choose from {', '.join(NAMES)}")
