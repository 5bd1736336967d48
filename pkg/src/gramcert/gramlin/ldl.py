"""Exact psd certification by symmetric pivoted LDL^T."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..forms import Form, SosExpression
from ..scalarfield import sign
from ..symtensor import SymCoords
from . import linalg
from .matrix import RepMatrix


@dataclass(frozen=True)
class LdlCertificate:
    """Either P M P^T = L D L^T with D >= 0, or a vector v with v^T M v < 0.

    `perm[k]` is the original index placed at position k.
    """

    accepted: bool
    perm: tuple = ()
    L: tuple = ()
    D: tuple = ()
    refutation: tuple | None = None
    value: object = None
    notes: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.D if d)

    @property
    def positive_definite(self) -> bool:
        return self.accepted and all(d and sign(d) > 0 for d in self.D)

    def verify(self, m) -> bool:
        """Re-check the certificate against the matrix exactly."""
        a = m.rows() if isinstance(m, RepMatrix) else [list(r) for r in m]
        n = len(a)
        if not self.accepted:
            v = list(self.refutation)
            return sign(linalg.quad(a, v)) < 0
        if any(sign(d) < 0 for d in self.D):
            return False
        pa = [[a[self.perm[i]][self.perm[j]] for j in range(n)] for i in range(n)]
        ld = [[self.L[i][k] * self.D[k] for k in range(n)] for i in range(n)]
        rhs = linalg.matmul(ld, linalg.transpose([list(r) for r in self.L]))
        return all(pa[i][j] == rhs[i][j] for i in range(n) for j in range(n))


def psd_check_exact(m) -> LdlCertificate:
    """Decide positive semidefiniteness of a symmetric matrix over an ordered field.

    Accepts Fraction or AlgNum entries (anything with an exact sign).
    """
    a = m.rows() if isinstance(m, RepMatrix) else [list(r) for r in m]
    n = len(a)
    if n == 0:
        return LdlCertificate(True)
    if not linalg.is_symmetric(a):
        raise ValueError("matrix is not symmetric")
    zero = a[0][0] - a[0][0]
    one = zero + 1
    perm = list(range(n))
    work = [list(r) for r in a]  # rows/cols permuted alongside perm
    L = [[one if i == j else zero for j in range(n)] for i in range(n)]
    D: list = []

    for k in range(n):
        # choose a pivot among remaining diagonal entries
        piv = None
        for j in range(k, n):
            s = sign(work[j][j])
            if s < 0:
                return _refute(a, perm, L, k, {j: one}, n, zero)
            if s > 0 and piv is None:
                piv = j
        if piv is None:
            # remaining diagonal is zero; any nonzero off-diagonal is fatal
            for i in range(k, n):
                for j in range(i + 1, n):
                    s = sign(work[i][j])
                    if s:
                        return _refute(a, perm, L, k, {i: one, j: -one if s > 0 else one}, n, zero)
            D.extend([zero] * (n - k))
            break
        if piv != k:
            perm[k], perm[piv] = perm[piv], perm[k]
            work[k], work[piv] = work[piv], work[k]
            for r in work:
                r[k], r[piv] = r[piv], r[k]
            for c in range(k):
                L[k][c], L[piv][c] = L[piv][c], L[k][c]
        d = work[k][k]
        D.append(d)
        for i in range(k + 1, n):
            L[i][k] = work[i][k] / d
        for i in range(k + 1, n):
            lik = L[i][k]
            if not lik:
                continue
            for j in range(k + 1, n):
                if work[k][j]:
                    work[i][j] = work[i][j] - lik * work[k][j]
        for i in range(k + 1, n):
            work[i][k] = work[k][i] = zero
    return LdlCertificate(
        True,
        tuple(perm),
        tuple(tuple(r) for r in L),
        tuple(D),
    )


def _refute(a, perm, L, k, local: dict, n, zero) -> LdlCertificate:
    """Lift a negative direction of the Schur complement back to the original."""
    w = [zero] * n
    for j, v in local.items():
        w[j] = v
    # solve L^T y = w by back substitution (rows >= k of L below the diagonal
    # in columns < k are the eliminations already performed)
    y = list(w)
    for i in range(n - 1, -1, -1):
        acc = y[i]
        for j in range(i + 1, n):
            if L[j][i] and y[j]:
                acc = acc - L[j][i] * y[j]
        y[i] = acc
    x = [zero] * n
    for pos, orig in enumerate(perm):
        x[orig] = y[pos]
    val = linalg.quad(a, x)
    if sign(val) >= 0:
        raise AssertionError("internal error: refutation vector is not negative")
    return LdlCertificate(False, tuple(perm), refutation=tuple(x), value=val)


def sos_from_gram(g: RepMatrix, varnames=()) -> SosExpression:
    """Weighted squares from an LDL factorization of a psd representation matrix.

    Raises ValueError carrying the refutation vector when g is not psd.
    """
    cert = psd_check_exact(g)
    if not cert.accepted:
        err = ValueError("matrix is not positive semidefinite")
        err.refutation = cert.refutation
        raise err
    order = g.order
    n = len(order)
    weights, squares = [], []
    for k in range(n):
        d = cert.D[k]
        if not d:
            continue
        # column k of P^T L gives the coefficient vector of the k-th square
        coeffs = [None] * n
        for pos, orig in enumerate(cert.perm):
            coeffs[orig] = cert.L[pos][k]
        terms = {a: c for a, c in zip(order, coeffs) if c}
        weights.append(d)
        squares.append(Form(order.n, order.p, terms, varnames))
    return SosExpression(tuple(weights), tuple(squares))


def square_coords(e: SosExpression, order) -> list[SymCoords]:
    zero = Fraction(0)
    return [SymCoords(order, tuple(q.terms.get(a, zero) for a in order)) for q in e.squares]
