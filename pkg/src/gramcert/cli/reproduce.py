"""Named reproduction cases with stored expected summaries."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..certify import (
    ALL_VANISH,
    NEVER_PSD,
    NON_UNIQUE,
    NONCOERCIVE_CONFIRMED,
    PD,
    UNIQUE,
    cone_quartic_null_basis,
    f_rho_null_basis,
    forced_delta_analysis,
    game_search,
    game_verify,
    gamematrix_board,
    perturb_check,
    replay_quartic,
    replay_sextic,
    stored_certificate,
    uniqueness_pipeline,
    witness_verify,
)
from ..certify.witnesses import (
    in_unique_interval,
    relation_root_witness,
    s_eta0_relation,
    sigma_tau_phi,
    sqrt3_root_witnesses,
    st_minus_one,
)
from ..forms import (
    cone_quartic,
    eta0_field,
    even_substitute,
    f_rho,
    noncoercive_quartic,
    noncoercive_sextic,
    q_eta,
    sos_expand,
    sosquartic,
)
from ..forms.form import Form
from ..forms.parse import parse_poly
from ..gramlin import RepMatrix, gram_from_sos
from ..scalarfield import GaussRat, count_roots, sign
from ..symtensor import SymCoords, enumerate_basis, multi_indices
from .serialize import schema, scalar


class CaseInputError(ValueError):
    pass


@dataclass
class CaseOutcome:
    case: str
    params: dict
    summary: dict
    expected: dict
    notes: list = field(default_factory=list)

    def diff(self) -> list[dict]:
        return [
            {"key": k, "expected": v, "got": self.summary.get(k)}
            for k, v in self.expected.items()
            if self.summary.get(k) != v
        ]

    @property
    def ok(self) -> bool:
        return not self.diff()

    def to_json(self) -> dict:
        return {
            "schema": schema("reproduction"),
            "case": self.case,
            "params": self.params,
            "summary": self.summary,
            "expected": self.expected,
            "ok": self.ok,
            "diff": self.diff(),
            "notes": self.notes,
        }


def _strs(xs) -> list:
    return [scalar(x) for x in xs]


# -- cases ------------------------------------------------------------------


def eta0_cubic() -> CaseOutcome:
    K = eta0_field()
    s = K.gen
    lo, hi = K.approx(Fraction(1, 10**9))
    summary = {
        "modulus": K.modulus.to_str("s"),
        "interval": [str(K.lo), str(K.hi)],
        "roots_in_interval": count_roots(K.modulus, K.lo, K.hi),
        "smallest_positive_root": count_roots(K.modulus, Fraction(0), K.lo) == 0,
        "sqrt_eta0_below_one_third": sign(s - Fraction(1, 3)) < 0,
        "eta0_below_one_ninth": sign(s * s - Fraction(1, 9)) < 0,
        "refined_interval": [str(lo), str(hi)],
    }
    expected = {
        "interval": ["1/4", "13/50"],
        "roots_in_interval": 1,
        "smallest_positive_root": True,
        "sqrt_eta0_below_one_third": True,
    }
    return CaseOutcome("eta0-cubic", {}, summary, expected)


def sosquartic_identity() -> CaseOutcome:
    K = eta0_field()
    s = K.gen
    lhs = sos_expand(sosquartic(K))
    rhs = q_eta(s * s)
    monos = multi_indices(4, 4)
    bad = [a.label() for a in monos if lhs.coefficient(a) != rhs.coefficient(a)]
    summary = {
        "coefficients_compared": len(monos),
        "mismatches": bad,
        "identity": not bad,
        "squares": len(sosquartic(K)),
    }
    expected = {"coefficients_compared": 35, "mismatches": [], "identity": True}
    return CaseOutcome("sosquartic-identity", {}, summary, expected)


def cone_quartic_case(gamma=Fraction(1, 2)) -> CaseOutcome:
    g = Fraction(gamma)
    if g == 1:
        raise CaseInputError("gamma = 1 changes the null space; the column formula needs gamma != 1")
    rep = uniqueness_pipeline(gram_from_sos(cone_quartic(g)), cone_quartic_null_basis(g),
                              variables=list("abcdef"))
    col = rep.column(21)
    summary = {
        "verdict": rep.verdict,
        "column_21": _strs(col),
        "quadratics": rep.quadratic_strings(),
    }
    if rep.epsilon is not None:
        summary["epsilon"] = str(rep.epsilon)
        summary["pd_on_null"] = rep.span.definite
        summary["perturbed_pd"] = rep.perturbation.positive_definite
    x, y = g / (1 - g), 1 / (1 - g)
    expected = {
        "verdict": UNIQUE if 0 < g < 1 else NON_UNIQUE,
        "column_21": _strs([x, x, x, y, 2, 2] + [0] * 14),
    }
    return CaseOutcome("cone-quartic", {"gamma": str(g)}, summary, expected)


def noncoercive_quartic_case(gamma=Fraction(1, 9)) -> CaseOutcome:
    g = Fraction(gamma)
    i = GaussRat.i()
    z = [1, i, 0, 0, 0, 0]
    w = witness_verify(noncoercive_quartic(g), z)
    forced = forced_delta_analysis(enumerate_basis(6, 2), z)
    rep = replay_quartic(None)
    dets = {s.label: s.polynomial for s in rep.transcript}
    want = {
        "det[3 4 5]": parse_poly("-(b - a*gamma)^2"),
        "det[2 4 5]": parse_poly("-(e - d*gamma)^2"),
    }
    summary = {
        "witness": str(w),
        "forced_changes": [f.label for f in forced],
        "forced_normalized_rr_qq": [[scalar(f.normalized.pair(*p)) for p in _rq(z, 2)] for f in forced],
        "replay": str(rep),
        "transcript": [f"{s.label}: {s.derived}" for s in rep.transcript],
        "preconditions_hold": all(ok for _, ok, _ in rep.preconditions),
    }
    for k, v in want.items():
        summary[f"{k} = {v.to_str()}"] = k in dets and dets[k] == v
    expected = {
        "witness": ALL_VANISH,
        "forced_changes": ["E200000*E020000 - E110000*E110000"],
        "forced_normalized_rr_qq": [["1", "1"]],
        "replay": NONCOERCIVE_CONFIRMED,
        "preconditions_hold": True,
    }
    for k, v in want.items():
        expected[f"{k} = {v.to_str()}"] = True
    return CaseOutcome("noncoercive-quartic", {"gamma": str(g)}, summary, expected)


def _rq(z, p):
    from ..symtensor import complex_rankone_parts

    n = len(z)
    r, q = complex_rankone_parts(z, p, enumerate_basis(n, p))
    return [(r, r), (q, q)]


def _frho_expected_column(rho):
    sigma, tau, phi = sigma_tau_phi(rho)
    return [-sigma, -tau] * 3 + [-phi, -1] + [0] * 10 + [-1] + [0] * 8


def _frho_valid(rho: Fraction):
    u = rho**3
    if rho == 0 or 1 - 4 * u == 0:
        raise CaseInputError(f"rho = {rho} makes the column formula singular")


def frho_column(rho=Fraction(-1)) -> CaseOutcome:
    r = Fraction(rho)
    _frho_valid(r)
    rep = uniqueness_pipeline(gram_from_sos(f_rho(r)), f_rho_null_basis(r), variables=list("abcdefg"))
    summary = {
        "verdict": rep.verdict,
        "column_26": _strs(rep.column(26)),
        "sigma_tau_minus_one": str(st_minus_one(r)),
        "in_theorem_interval": in_unique_interval(r),
    }
    if rep.epsilon is not None:
        summary["epsilon"] = str(rep.epsilon)
    expected = {
        "verdict": UNIQUE if in_unique_interval(r) else NON_UNIQUE,
        "column_26": _strs(_frho_expected_column(r)),
    }
    return CaseOutcome("frho-column", {"rho": str(r)}, summary, expected)


FRHO_SAMPLES = (Fraction(-2), Fraction(-1), Fraction(-3, 5), Fraction(1, 5), Fraction(1, 2), Fraction(1))


def frho_intervals() -> CaseOutcome:
    rows = []
    for r in FRHO_SAMPLES:
        rep = uniqueness_pipeline(gram_from_sos(f_rho(r)), f_rho_null_basis(r))
        rows.append({
            "rho": str(r),
            "rho_cubed": str(r**3),
            "sign_sigma_tau_minus_one": sign(st_minus_one(r)),
            "theorem": UNIQUE if in_unique_interval(r) else NON_UNIQUE,
            "pipeline": rep.verdict,
        })
    sq3 = sqrt3_root_witnesses()
    rel = relation_root_witness()
    summary = {
        "samples": rows,
        "agree": all(x["theorem"] == x["pipeline"] for x in rows),
        "unique_at": [x["rho"] for x in rows if x["pipeline"] == UNIQUE],
        "endpoint_roots_vanish": [w.vanishes for w in sq3] + [rel.vanishes],
        "endpoint_cubes": [w.rho.__pow__(3).to_str() for w in sq3] + ["-1/2"],
    }
    expected = {
        "agree": True,
        "unique_at": ["-1", "1/5"],
        "endpoint_roots_vanish": [True, True, True],
    }
    return CaseOutcome("frho-intervals", {}, summary, expected)


def s_eta0_case() -> CaseOutcome:
    diff, rho, eta0 = s_eta0_relation()
    summary = {
        "difference_is_zero": diff.is_zero(),
        "rho": rho.to_str(),
        "eta0": eta0.to_str(),
        "field": "Q[sqrt5]",
    }
    return CaseOutcome("s-eta0-relation", {}, summary, {"difference_is_zero": True})


def noncoercive_sextic_case() -> CaseOutcome:
    i = GaussRat.i()
    e = noncoercive_sextic()
    w = witness_verify(e, [1, i, 0, 0])
    f = sos_expand(f_rho(Fraction(-1)))
    names = ("w", "x", "y", "z")
    lifted = f.embed(4, [0, 2, 3], names)
    wx = Form.variable(4, 0, names) ** 2 + Form.variable(4, 1, names) ** 2
    g = even_substitute(lifted, 0, wx)
    rep = replay_sextic()
    summary = {
        "witness": str(w),
        "matches_even_substitution": g == sos_expand(e),
        "replay": str(rep),
        "transcript": [f"{s.label}: {s.derived}" for s in rep.transcript],
        "forced_values": {k: v.to_str() for k, v in sorted(rep.substitutions.items())},
        "preconditions_hold": all(ok for _, ok, _ in rep.preconditions),
    }
    expected = {
        "witness": ALL_VANISH,
        "matches_even_substitution": True,
        "replay": NONCOERCIVE_CONFIRMED,
        "forced_values": {"a": "delta", "b": "delta", "c": "0", "d": "-2*delta"},
        "preconditions_hold": True,
    }
    out = CaseOutcome("noncoercive-sextic", {}, summary, expected)
    out.notes.append("final step: d = -2*delta contradicts the diagonal entry 2d >= 0")
    return out


def game_n4(search: bool = False) -> CaseOutcome:
    board = gamematrix_board()
    res = game_verify(board, stored_certificate())
    summary = {
        "stored_verdict": res.verdict,
        "minors_used": res.used,
        "quadratic": res.quadratic.to_str(),
    }
    expected = {"stored_verdict": PD}
    if search:
        found = game_search(board)
        summary["search"] = found.verdict
        summary["search_verdict"] = found.result.verdict if found.result else None
        expected["search_verdict"] = PD
    return CaseOutcome("game-n4", {"search": search}, summary, expected)


def matrixprop_example() -> CaseOutcome:
    small = {}
    for b in (Fraction(1), Fraction(-1), Fraction(1, 7)):
        a = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
        bm = [[0, b, 0], [b, 0, 0], [0, 0, 1]]
        r = perturb_check(a, bm)
        small[str(b)] = {"verdict": r.verdict, "kernel_violation": _strs(r.kernel_violation or [])}
    o = enumerate_basis(3, 2)
    E = lambda lab: SymCoords.basis(o, tuple(int(c) for c in lab))
    A = sum((RepMatrix.outer(t) for t in (E("200") + E("020"), E("002"), E("011"), E("101"))),
            RepMatrix.zero(o))
    D = RepMatrix.sym_pair(o, (0, 0, 2), (1, 1, 0)) - RepMatrix.sym_pair(o, (0, 1, 1), (1, 0, 1))
    r = perturb_check(A, D)
    z = r.kernel_violation
    zlabels = [a.label() for a, c in zip(o, z or []) if c]
    summary = {
        "three_by_three": small,
        "gram_example": r.verdict,
        "violation_support": zlabels,
        "delta_E110_E110": scalar(D.pair(E("110"), E("110"))),
        "delta_E110": str(D.apply(E("110"))),
    }
    expected = {
        "three_by_three": {k: {"verdict": NEVER_PSD, "kernel_violation": ["0", "1", "0"]} for k in ("1", "-1", "1/7")},
        "gram_example": NEVER_PSD,
        "violation_support": ["110"],
        "delta_E110_E110": "0",
        "delta_E110": "1/2*E002",
    }
    return CaseOutcome("matrixprop-example", {}, summary, expected)


CASES = {
    "eta0-cubic": eta0_cubic,
    "sosquartic-identity": sosquartic_identity,
    "cone-quartic": cone_quartic_case,
    "noncoercive-quartic": noncoercive_quartic_case,
    "frho-column": frho_column,
    "frho-intervals": frho_intervals,
    "s-eta0-relation": s_eta0_case,
    "noncoercive-sextic": noncoercive_sextic_case,
    "game-n4": game_n4,
    "matrixprop-example": matrixprop_example,
}


def run_case(name: str, **params) -> CaseOutcome:
    if name not in CASES:
        raise CaseInputError(f"unknown case {name!r}; choose from {', '.join(CASES)}")
    return CASES[name](**{k: v for k, v in params.items() if v is not None})
