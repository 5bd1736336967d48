"""Gram-matrix uniqueness by restricting every change to the null space.

Pipeline for a psd representation matrix G:

1. t = sum_i v_i n_i over a basis n_1..n_m of Null(G), v_i fresh variables.
2. For each change Delta_k, the quadratic Delta_k . t t in v.
3. Coefficient matrix over v_1^2, ..., v_m^2, v_1 v_2, ..., v_{m-1} v_m.
4. Reduced row echelon form (with the row transform, so witnesses map back).
5. Span test: UNIQUE when no nonzero psd quadratic is in the span.

A psd combination that is definite on the null space yields a change
Delta with G + eps*Delta psd for small eps, so G is not unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..gramlin import (
    ChangeBasis,
    RepMatrix,
    change_basis,
    linalg,
    matrix_rank,
    null_space,
    psd_check_exact,
)
from ..scalarfield import RatFunc
from ..symtensor import SymCoords
from .perturb import PerturbationReport, perturb_check
from .span import INCONCLUSIVE as SPAN_INCONCLUSIVE
from .span import NONTRIVIAL, TRIVIAL, SpanResult, monomial_list, monomial_name, psd_span_trivial

UNIQUE = "UNIQUE"
NON_UNIQUE = "NON_UNIQUE"
INCONCLUSIVE = "INCONCLUSIVE"


class NotPsdError(ValueError):
    def __init__(self, message, refutation=None):
        super().__init__(message)
        self.refutation = refutation


@dataclass
class UniquenessReport:
    verdict: str
    variables: list
    null_basis: list
    monomials: list
    coefficient_matrix: list
    rref: list
    pivots: list
    transform: list
    equivalent_quadratics: list  # nonzero RREF rows
    span: SpanResult | None = None
    witness: RepMatrix | None = None
    epsilon: Fraction | None = None
    perturbation: PerturbationReport | None = None
    notes: list = field(default_factory=list)

    def column(self, k: int) -> list:
        """Entries of the k-th monomial column (1-based) of the RREF, all rows."""
        return [row[k - 1] for row in self.rref]

    def quadratic_strings(self) -> list[str]:
        out = []
        for row in self.equivalent_quadratics:
            parts = []
            for mono, c in zip(self.monomials, row):
                if c:
                    name = monomial_name(mono, self.variables)
                    parts.append(name if c == 1 else f"({c})*{name}")
            out.append(" + ".join(parts))
        return out


def _pair_value(label, order, mu_s, mu_t):
    """(E_a0 (x)_s E_b0 - E_ak (x)_s E_bk) . s t from monomial vectors."""
    total = 0
    for (a, b), sgn in ((label.first, 1), (label.other, -1)):
        i, j = order.index(a), order.index(b)
        v = mu_s[i] * mu_t[j] + mu_s[j] * mu_t[i]
        total = total + v if sgn > 0 else total - v
    return total


def restricted_quadratics(basis: ChangeBasis, null: Sequence[SymCoords]) -> list[list[list]]:
    """For each change, the symmetric matrix (Delta . n_i n_j)_{ij}."""
    order = basis.order
    mus = [n.reorder(order).monomial_vector() if n.order.sequence != order.sequence
           else n.monomial_vector() for n in null]
    m = len(null)
    out = []
    for lab in basis.labels:
        q = [[None] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                v = _pair_value(lab, order, mus[i], mus[j])
                q[i][j] = q[j][i] = v
        out.append(q)
    return out


def coefficient_rows(quads: Sequence[Sequence[Sequence]], m: int) -> list[list]:
    monos = monomial_list(m)
    rows = []
    for q in quads:
        rows.append([q[i][i] if i == j else 2 * q[i][j] for i, j in monos])
    return rows


def _check_null_basis(g: RepMatrix, null: Sequence[SymCoords]):
    for k, t in enumerate(null):
        r = g.apply(t)
        if not r.is_zero():
            raise ValueError(f"supplied null vector {k + 1} is not in the null space")
    raw = [list(t.monomial_vector()) for t in null]
    if raw and linalg.rank(raw) != len(null):
        raise ValueError("supplied null vectors are linearly dependent")
    expected = g.dim - matrix_rank(g)
    if len(null) != expected:
        raise ValueError(f"supplied {len(null)} null vectors, null space has dimension {expected}")


def uniqueness_pipeline(
    g: RepMatrix,
    null_basis: Sequence[SymCoords] | None = None,
    basis: ChangeBasis | None = None,
    variables: Sequence[str] | None = None,
    sign: Callable | None = None,
    check_psd: bool = True,
) -> UniquenessReport:
    """Run Steps 1-5 on a Gram matrix.

    For matrices over a rational function field pass `sign` (an interval
    sign oracle) and check_psd=False; such runs can return UNIQUE but report
    INCONCLUSIVE instead of NON_UNIQUE since no epsilon can be certified
    symbolically.
    """
    symbolic = any(isinstance(x, RatFunc) for row in g.entries for x in row)
    if check_psd and not symbolic:
        cert = psd_check_exact(g)
        if not cert.accepted:
            raise NotPsdError("matrix is not positive semidefinite", cert.refutation)

    order = g.order
    basis = basis or change_basis(order.n, order.p, order)
    if null_basis is None:
        null = null_space(g)
    else:
        null = [t.reorder(order) if t.order.sequence != order.sequence else t for t in null_basis]
        _check_null_basis(g, null)
    m = len(null)
    names = list(variables or [chr(ord("a") + i) for i in range(m)])
    monos = monomial_list(m)

    if m == 0:
        rep = UniquenessReport(NON_UNIQUE if len(basis) else UNIQUE, names, [], [], [], [], [], [], [])
        if len(basis) and not symbolic:
            delta = basis[0]
            pr = perturb_check(g, delta)
            rep.witness, rep.perturbation, rep.epsilon = delta, pr, pr.epsilon
            rep.notes.append("matrix is positive definite; any change keeps it psd for small eps")
        elif len(basis):
            rep.verdict = INCONCLUSIVE
        return rep

    quads = restricted_quadratics(basis, null)
    coeffs = coefficient_rows(quads, m)
    r, piv, t = linalg.rref_with_transform(coeffs)
    nonzero = [row for row in r if any(x for x in row)]
    rep = UniquenessReport(
        INCONCLUSIVE, names, list(null), monos, coeffs, r, piv, t, nonzero
    )
    kernel = [basis.combine(t[i]) for i in range(len(piv), len(r))]
    if kernel and symbolic:
        rep.notes.append(f"{len(kernel)} change(s) vanish identically on the null space")
        rep.span = SpanResult(SPAN_INCONCLUSIVE, proof={"reason": "restriction map is not injective"})
        return rep

    if nonzero:
        span = psd_span_trivial(nonzero, m, sign=sign, names=names, exact_check=not symbolic)
    else:
        span = SpanResult(TRIVIAL, proof={"reason": "every change vanishes on the null space"})
    rep.span = span
    if span.verdict == TRIVIAL:
        if not kernel:
            rep.verdict = UNIQUE
            return rep
        # every psd-preserving change now lies in the kernel and must annihilate Null(G)
        delta = _kernel_change(g, kernel)
        if delta is None:
            rep.verdict = UNIQUE
            rep.notes.append(
                f"{len(kernel)} change(s) vanish on the null space; no combination of them "
                "annihilates the null space"
            )
            return rep
        pr = perturb_check(g, delta)
        rep.witness, rep.perturbation = delta, pr
        if pr.verdict == "PSD_FOR_SMALL_EPS":
            rep.verdict, rep.epsilon = NON_UNIQUE, pr.epsilon
            rep.notes.append("a change that annihilates the null space keeps the matrix psd")
        return rep
    if span.verdict != NONTRIVIAL:
        return rep
    if symbolic:
        rep.notes.append("psd combination found symbolically; specialize the parameter to certify eps")
        return rep

    # map the RREF-row weights back to a change: Delta = sum_i l_i sum_k T_ik Delta_k
    nrows = len(r)
    kweights = [Fraction(0)] * len(basis)
    for i in range(nrows):
        li = span.weights[i] if i < len(span.weights) else 0
        if not li:
            continue
        for k in range(len(basis)):
            if t[i][k]:
                kweights[k] = kweights[k] + li * t[i][k]
    delta = basis.combine(kweights)
    pr = perturb_check(g, delta)
    rep.witness, rep.perturbation = delta, pr
    if pr.verdict == "PSD_FOR_SMALL_EPS":
        rep.verdict = NON_UNIQUE
        rep.epsilon = pr.epsilon
    else:
        rep.notes.append("psd combination does not satisfy the kernel condition")
    return rep


def _kernel_change(g: RepMatrix, kernel: Sequence[RepMatrix]) -> RepMatrix | None:
    """A nonzero combination D of `kernel` with D z = 0 for all z in Null(G), if any."""
    nvecs = linalg.null_space(g.rows())
    cols = []
    for d in kernel:
        rows = d.rows()
        cols.append([x for z in nvecs for x in linalg.matvec(rows, z)])
    system = linalg.transpose(cols)
    sol = linalg.null_space(system) if system else [[Fraction(1)] + [Fraction(0)] * (len(kernel) - 1)]
    if not sol:
        return None
    out = kernel[0].scale(sol[0][0])
    for c, d in zip(sol[0][1:], kernel[1:]):
        out = out + d.scale(c)
    return out


def interval_sign(lo: Fraction, hi: Fraction) -> Callable:
    """Sign oracle for rational functions valid on the open interval (lo, hi)."""

    def _sign(x):
        if isinstance(x, RatFunc):
            return x.sign_on_interval(lo, hi)
        from ..scalarfield import sign

        return sign(x)

    return _sign
