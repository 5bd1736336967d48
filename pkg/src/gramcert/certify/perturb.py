"""When is A + eps*B psd for all small eps > 0?

With A psd and N a basis of Null(A), let R = N^T B N. Then A + eps*B is
psd for all small eps exactly when R is psd and every z in Null(A) with
z^T B z = 0 also has B z = 0. Given that, the descent eps = 1, 1/2, 1/4, ...
reaches a psd matrix after finitely many halvings; each candidate is
checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..gramlin import RepMatrix, linalg, psd_check_exact
from ..gramlin.ldl import LdlCertificate

PSD_FOR_SMALL_EPS = "PSD_FOR_SMALL_EPS"
NEVER_PSD = "NEVER_PSD"

MAX_HALVINGS = 200


class NotPsdOnNullError(ValueError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


@dataclass
class PerturbationReport:
    verdict: str
    epsilon: Fraction | None = None
    kernel_violation: list | None = None
    positive_definite: bool = False
    certificate: LdlCertificate | None = None
    restricted: list | None = None


def _rows(m):
    return m.rows() if isinstance(m, RepMatrix) else [list(r) for r in m]


def perturb_check(a, b) -> PerturbationReport:
    """Decide psd-ness of A + eps B for small eps and certify a concrete eps."""
    A, B = _rows(a), _rows(b)
    n = len(A)
    if len(B) != n:
        raise ValueError("A and B differ in size")
    cert = psd_check_exact(A)
    if not cert.accepted:
        raise ValueError("A is not positive semidefinite")
    null = linalg.null_space(A) if n else []
    if not null:
        # A is pd: the descent terminates by continuity
        return _descend(A, B, restricted=[])
    N = linalg.transpose(null)  # n x k
    BN = linalg.matmul(B, N)
    R = linalg.matmul(linalg.transpose(N), BN)
    rc = psd_check_exact(R)
    if not rc.accepted:
        v = rc.refutation
        z = linalg.matvec(N, v)
        raise NotPsdOnNullError("B is not psd on the null space of A", z)
    for v in linalg.null_space(R):
        bz = linalg.matvec(BN, v)
        if any(x for x in bz):
            z = linalg.matvec(N, v)
            return PerturbationReport(NEVER_PSD, kernel_violation=z, restricted=R)
    return _descend(A, B, restricted=R)


def _descend(A, B, restricted) -> PerturbationReport:
    n = len(A)
    eps = Fraction(1)
    for _ in range(MAX_HALVINGS):
        m = [[A[i][j] + eps * B[i][j] for j in range(n)] for i in range(n)]
        c = psd_check_exact(m)
        if c.accepted:
            return PerturbationReport(
                PSD_FOR_SMALL_EPS,
                epsilon=eps,
                positive_definite=c.positive_definite,
                certificate=c,
                restricted=restricted,
            )
        eps /= 2
    raise RuntimeError("epsilon descent did not terminate; kernel analysis is inconsistent")
