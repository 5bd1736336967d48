"""Common complex roots, coercive certificates, and forced changes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..forms import Form, SosExpression, eval_at
from ..gramlin import ChangeBasis, LdlCertificate, RepMatrix, change_basis, psd_check_exact, sos_from_gram
from ..scalarfield import GaussRat
from ..symtensor import BasisOrder, complex_rankone_parts

ALL_VANISH = "ALL_VANISH"
FAILS = "FAILS"


@dataclass
class WitnessResult:
    verdict: str
    index: int | None = None  # 1-based index of the first square not vanishing
    values: list = field(default_factory=list)

    def __str__(self):
        return self.verdict if self.index is None else f"{self.verdict}({self.index})"


def _as_gauss(z) -> list[GaussRat]:
    return [c if isinstance(c, GaussRat) else GaussRat(c) for c in z]


def witness_verify(forms: SosExpression | Sequence[Form], z: Sequence) -> WitnessResult:
    """Evaluate every squared form at the complex point z."""
    squares = forms.squares if isinstance(forms, SosExpression) else list(forms)
    zz = _as_gauss(z)
    if all(c.is_zero() for c in zz):
        raise ValueError("trivial witness: the point is zero")
    values = [eval_at(q, zz) for q in squares]
    for k, v in enumerate(values):
        if v:
            return WitnessResult(FAILS, k + 1, values)
    return WitnessResult(ALL_VANISH, None, values)


@dataclass
class CoercivityCertificate:
    certified: bool
    reason: str
    ldl: LdlCertificate | None = None
    squares: SosExpression | None = None


def coercive_from_pd_gram(g: RepMatrix, varnames=()) -> CoercivityCertificate:
    """A positive definite Gram matrix has no rank-one complex tensor in its kernel.

    Failure only means this particular matrix does not certify coercivity.
    """
    cert = psd_check_exact(g)
    if not cert.accepted:
        return CoercivityCertificate(False, "matrix is not positive semidefinite", cert)
    if not cert.positive_definite:
        return CoercivityCertificate(
            False, f"matrix is singular (rank {cert.rank} of {g.dim})", cert
        )
    return CoercivityCertificate(
        True, "positive definite Gram matrix", cert, sos_from_gram(g, varnames)
    )


@dataclass
class ForcedChange:
    index: int  # 1-based position in the change basis
    label: str
    element: RepMatrix
    rr: object
    qq: object
    rq: object
    normalized: RepMatrix  # scaled so that Delta . rr = 1 when rr != 0


def forced_delta_analysis(
    g: RepMatrix | BasisOrder | None,
    z: Sequence,
    basis: ChangeBasis | None = None,
) -> list[ForcedChange]:
    """Change-basis elements that see the real or imaginary part of z^(tensor p).

    `g` only supplies the basis order; pass a BasisOrder or None together
    with a basis to skip building a Gram matrix.
    """
    zz = _as_gauss(z)
    if all(c.is_zero() for c in zz):
        raise ValueError("trivial witness: the point is zero")
    if isinstance(g, RepMatrix):
        order = g.order
    elif isinstance(g, BasisOrder):
        order = g
    elif basis is not None:
        order = basis.order
    else:
        raise ValueError("need a Gram matrix, a basis order, or a change basis")
    if len(zz) != order.n:
        raise ValueError(f"point has {len(zz)} coordinates, basis has {order.n} variables")
    basis = basis or change_basis(order.n, order.p, order)
    r, q = complex_rankone_parts(zz, order.p, order)
    out = []
    for k, (lab, d) in enumerate(zip(basis.labels, basis.elements)):
        rr, qq, rq = d.pair(r, r), d.pair(q, q), d.pair(r, q)
        if rr or qq or rq:
            scale = Fraction(1) / rr if rr else Fraction(1)
            out.append(ForcedChange(k + 1, str(lab), d, rr, qq, rq, d.scale(scale)))
    return out
