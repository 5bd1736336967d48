"""Decision procedures and certificate checkers built on exact arithmetic."""

from .bases import cone_quartic_null_basis, f_rho_null_basis
from .coercive import (
    ALL_VANISH,
    FAILS,
    CoercivityCertificate,
    ForcedChange,
    WitnessResult,
    coercive_from_pd_gram,
    forced_delta_analysis,
    witness_verify,
)
from .game import (
    NOT_PSD,
    PD,
    PSD,
    BoardError,
    GameBoard,
    admissible_minors,
    game_search,
    game_verify,
    gamematrix_board,
    stored_certificate,
)
from .obstruction import (
    NONCOERCIVE_CONFIRMED,
    QUARTIC_SCRIPT,
    SEXTIC_SCRIPT,
    STEP_FAILED,
    ObstructionScript,
    ReplayResult,
    replay_quartic,
    replay_sextic,
    replay_steps,
)
from .perturb import NEVER_PSD, PSD_FOR_SMALL_EPS, NotPsdOnNullError, PerturbationReport, perturb_check
from .span import NONTRIVIAL, TRIVIAL, SpanResult, psd_span_trivial
from .uniqueness import (
    INCONCLUSIVE,
    NON_UNIQUE,
    UNIQUE,
    NotPsdError,
    UniquenessReport,
    interval_sign,
    uniqueness_pipeline,
)

__all__ = [
    "ALL_VANISH",
    "BoardError",
    "CoercivityCertificate",
    "FAILS",
    "ForcedChange",
    "GameBoard",
    "INCONCLUSIVE",
    "NEVER_PSD",
    "NONCOERCIVE_CONFIRMED",
    "NONTRIVIAL",
    "NON_UNIQUE",
    "NOT_PSD",
    "NotPsdError",
    "NotPsdOnNullError",
    "ObstructionScript",
    "PD",
    "PSD",
    "PSD_FOR_SMALL_EPS",
    "PerturbationReport",
    "QUARTIC_SCRIPT",
    "ReplayResult",
    "SEXTIC_SCRIPT",
    "STEP_FAILED",
    "SpanResult",
    "TRIVIAL",
    "UNIQUE",
    "UniquenessReport",
    "WitnessResult",
    "admissible_minors",
    "coercive_from_pd_gram",
    "cone_quartic_null_basis",
    "f_rho_null_basis",
    "forced_delta_analysis",
    "game_search",
    "game_verify",
    "gamematrix_board",
    "interval_sign",
    "perturb_check",
    "psd_span_trivial",
    "replay_quartic",
    "replay_sextic",
    "replay_steps",
    "stored_certificate",
    "uniqueness_pipeline",
    "witness_verify",
]
