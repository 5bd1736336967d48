"""Representation matrices, the change subspace, and exact linear algebra."""

from .changes import (
    ChangeBasis,
    ChangeLabel,
    DecompositionError,
    change_basis,
    change_count,
    decompose_into_changes,
    pair_classes,
)
from .ldl import LdlCertificate, psd_check_exact, sos_from_gram
from .linalg import det, null_space as matrix_null_space, rank, rref, rref_with_transform
from .matrix import (
    RepMatrix,
    gram_from_sos,
    identity_matrix,
    rep_to_form,
    s_a_matrix,
    sym_coords_of,
)
from .ops import matrix_rank, null_space, principal_minor_det

__all__ = [
    "ChangeBasis",
    "ChangeLabel",
    "DecompositionError",
    "LdlCertificate",
    "RepMatrix",
    "change_basis",
    "change_count",
    "decompose_into_changes",
    "det",
    "gram_from_sos",
    "identity_matrix",
    "matrix_null_space",
    "matrix_rank",
    "null_space",
    "pair_classes",
    "principal_minor_det",
    "psd_check_exact",
    "rank",
    "rep_to_form",
    "rref",
    "rref_with_transform",
    "s_a_matrix",
    "sos_from_gram",
    "sym_coords_of",
]
