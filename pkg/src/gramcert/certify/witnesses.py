"""Exact algebraic facts about the sextic family f_rho.

Common real roots of the three cubics occur for rho^3 = -1/2 and for the
two roots of rho^2 + rho - 1/2, whose cubes are (-5 +- 3 sqrt 3)/4. The
same numbers bound the uniqueness intervals, so they are handled in
Q[sqrt 3].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..forms import eval_at, f_rho, s_eta, sos_expand
from ..scalarfield import AlgField, AlgNum, MPoly, RatFunc, UniPoly, sign

HALF = Fraction(1, 2)


def sqrt_field(n: int) -> AlgField:
    """Q[s]/(s^2 - n) at the positive root."""
    lo = Fraction(int(n**0.5))
    return AlgField(UniPoly([-n, 0, 1]), lo, lo + 1, f"sqrt{n}")


def sigma_tau_phi(rho):
    """The three free-column entries, as functions of rho (up to sign)."""
    u = rho * rho * rho
    d = 1 - 4 * u
    sigma = (1 - 16 * u) / (rho * d)
    tau = 3 * rho / d
    phi = 4 * rho * rho * (2 * u + 1) / d
    return sigma, tau, phi


def st_minus_one(rho):
    """sigma*tau - 1 written over (1 - 4 rho^3)^2."""
    u = rho * rho * rho
    return (3 * (1 - 16 * u) - (1 - 4 * u) ** 2) / ((1 - 4 * u) ** 2)


def interval_endpoints() -> tuple[AlgNum, AlgNum]:
    """(-(5+3 sqrt3)/4, (-5+3 sqrt3)/4) in Q[sqrt 3]."""
    K = sqrt_field(3)
    s = K.gen
    return (-(s * 3 + 5)) / 4, (s * 3 - 5) / 4


def in_unique_interval(rho: Fraction) -> bool:
    """rho^3 in (-(5+3 sqrt3)/4, -1/2) or (0, (-5+3 sqrt3)/4), decided exactly."""
    lo, hi = interval_endpoints()
    u = Fraction(rho) ** 3
    left = sign(u - lo) > 0 and u < -HALF
    right = u > 0 and sign(hi - u) > 0
    return left or right


@dataclass
class RootWitness:
    rho: object
    point: tuple
    values: list

    @property
    def vanishes(self) -> bool:
        return all(not v for v in self.values)


def sqrt3_root_witnesses() -> list[RootWitness]:
    """rho = (-1 +- sqrt3)/2 with the common root (1, 1, 1)."""
    K = sqrt_field(3)
    s = K.gen
    out = []
    for rho in ((s - 1) / 2, (-s - 1) / 2):
        e = f_rho(rho)
        pt = (K(1), K(1), K(1))
        out.append(RootWitness(rho, pt, [eval_at(q, pt) for q in e.squares]))
    return out


def relation_root_witness() -> RootWitness:
    """rho^3 = -1/2 and c^2 = 2 rho^2 with the common root (1, 0, c).

    The cubics are evaluated with symbolic rho and c and reduced modulo the
    two relations.
    """
    r, c = MPoly.var("rho"), MPoly.var("c")
    rules = [("rho", 3, MPoly.const(-HALF)), ("c", 2, r * r * 2)]
    e = f_rho(r)
    pt = (MPoly.const(1), MPoly.const(0), c)
    vals = [eval_at(q, pt).reduce(rules) for q in e.squares]
    return RootWitness("rho^3 = -1/2", ("1", "0", "c"), vals)


def s_eta0_relation():
    """s_{eta0} - (1+sqrt5) f_rho with rho = 1/(1+sqrt5), eta0 = rho^3, in Q[sqrt 5].

    Returns (difference form, rho, eta0).
    """
    K = sqrt_field(5)
    s = K.gen
    k = s + 1
    rho = k.inverse()
    eta0 = rho**3
    lhs = s_eta(eta0)
    rhs = sos_expand(f_rho(rho)).map_coeffs(lambda c: c * k)
    return lhs - rhs.with_names(lhs.varnames), rho, eta0


def sigma_tau_phi_symbolic(var: str = "rho"):
    return sigma_tau_phi(RatFunc.param(var))
