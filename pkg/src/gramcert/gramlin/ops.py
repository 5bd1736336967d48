"""Operations on representation matrices that return tensors or polynomials."""

from __future__ import annotations

from typing import Sequence

from ..symtensor import SymCoords
from . import linalg
from .matrix import RepMatrix


def null_space(m: RepMatrix) -> list[SymCoords]:
    """Basis of {t : M t = 0} in E-coordinates.

    M t = 0 means M mu(t) = 0, so each kernel vector v of the raw matrix
    gives t = mu^{-1}(v).
    """
    w = m.order.weights()
    out = []
    for v in linalg.null_space(m.rows()):
        out.append(SymCoords(m.order, tuple(x / wi for x, wi in zip(v, w))))
    return out


def matrix_rank(m: RepMatrix) -> int:
    return linalg.rank(m.rows())


def principal_minor_det(m, rows: Sequence[int]):
    """Determinant of the principal submatrix on 1-based indices, e.g. [3, 4, 5].

    Works for any commutative entries with exact division, including
    multivariate polynomials in proof parameters.
    """
    a = m.rows() if isinstance(m, RepMatrix) else m
    n = len(a)
    for r in rows:
        if not 1 <= r <= n:
            raise IndexError(f"index {r} outside 1..{n}")
    idx = [r - 1 for r in rows]
    return linalg.det([[a[i][j] for j in idx] for i in idx])
