import dataclasses
import random
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gramcert.certify import (
    ALL_VANISH,
    FAILS,
    NEVER_PSD,
    NON_UNIQUE,
    NONCOERCIVE_CONFIRMED,
    NOT_PSD,
    PD,
    PSD_FOR_SMALL_EPS,
    QUARTIC_SCRIPT,
    SEXTIC_SCRIPT,
    STEP_FAILED,
    TRIVIAL,
    NONTRIVIAL,
    UNIQUE,
    BoardError,
    GameBoard,
    NotPsdError,
    NotPsdOnNullError,
    admissible_minors,
    coercive_from_pd_gram,
    cone_quartic_null_basis,
    f_rho_null_basis,
    forced_delta_analysis,
    game_search,
    game_verify,
    gamematrix_board,
    perturb_check,
    psd_span_trivial,
    replay_quartic,
    replay_steps,
    stored_certificate,
    uniqueness_pipeline,
    witness_verify,
)
from gramcert.certify.game import parse_minor, small_board
from gramcert.certify.obstruction import PRECONDITION_FAILED, check_preconditions, parametric_submatrix
from gramcert.certify.witnesses import in_unique_interval, sigma_tau_phi, st_minus_one
from gramcert.forms import SosExpression, cone_quartic, f_rho, noncoercive_quartic, noncoercive_sextic, parse_form
from gramcert.gramlin import change_basis, gram_from_sos, null_space, psd_check_exact, rep_to_form
from gramcert.scalarfield import GaussRat


def random_changes(basis, rng, count):
    for _ in range(count):
        coeffs = [F(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < 0.3 else F(0) for _ in basis]
        if not any(coeffs):
            coeffs[rng.randrange(len(coeffs))] = F(1)
        yield basis.combine(coeffs)


def assert_unique_by_sampling(g, rng, count=25):
    """No sampled change keeps G psd at any sampled eps."""
    basis = change_basis(g.order.n, g.order.p, g.order)
    for d in random_changes(basis, rng, count):
        for k in range(0, 12, 3):
            for eps in (F(1, 2**k), -F(1, 2**k)):
                assert not psd_check_exact(g + d.scale(eps)).accepted


def assert_witness_valid(rep, g):
    assert rep.witness is not None and not rep.witness.is_zero()
    moved = g + rep.witness.scale(rep.epsilon)
    assert psd_check_exact(moved).accepted
    assert rep_to_form(moved) == rep_to_form(g)


@pytest.mark.parametrize("gamma", [F(1, 10), F(1, 2), F(9, 10)])
def test_cone_quartic_unique_is_sound(gamma):
    g = gram_from_sos(cone_quartic(gamma))
    assert uniqueness_pipeline(g, cone_quartic_null_basis(gamma)).verdict == UNIQUE
    assert_unique_by_sampling(g, random.Random(int(gamma * 100)))


@pytest.mark.parametrize("rho", [F(-1), F(1, 5)])
def test_f_rho_unique_is_sound(rho):
    g = gram_from_sos(f_rho(rho))
    assert uniqueness_pipeline(g, f_rho_null_basis(rho)).verdict == UNIQUE
    assert_unique_by_sampling(g, random.Random(7), count=10)


@pytest.mark.parametrize("rho", [F(-2), F(-3, 5), F(1, 2), F(1)])
def test_f_rho_nonunique_witness(rho):
    g = gram_from_sos(f_rho(rho))
    rep = uniqueness_pipeline(g, f_rho_null_basis(rho))
    assert rep.verdict == NON_UNIQUE
    assert_witness_valid(rep, g)
    assert not in_unique_interval(rho)


def test_minus_three_fifths_has_sigma_tau_above_one_yet_is_not_unique():
    rho = F(-3, 5)
    sigma, tau, _ = sigma_tau_phi(rho)
    assert sigma * tau - 1 == st_minus_one(rho) > 0
    assert not in_unique_interval(rho)


def test_default_null_space_matches_supplied_basis():
    gamma = F(1, 2)
    g = gram_from_sos(cone_quartic(gamma))
    a = uniqueness_pipeline(g)
    b = uniqueness_pipeline(g, cone_quartic_null_basis(gamma))
    assert a.verdict == b.verdict == UNIQUE
    assert len(null_space(g)) == 6


def test_pipeline_rejects_non_psd_and_bad_null_basis():
    g = gram_from_sos(cone_quartic(F(1, 2)))
    with pytest.raises(NotPsdError):
        uniqueness_pipeline(g.scale(F(-1)))
    with pytest.raises(ValueError):
        uniqueness_pipeline(g, cone_quartic_null_basis(F(1, 3)))


quad_coeff = st.integers(-2, 2)


@st.composite
def small_sos(draw):
    k = draw(st.integers(1, 4))
    forms = []
    for _ in range(k):
        cs = [draw(quad_coeff) for _ in range(6)]
        if not any(cs):
            cs[0] = 1
        text = " + ".join(f"({c})*{m}" for c, m in zip(cs, ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]))
        forms.append(parse_form(text, ["x", "y", "z"]))
    return SosExpression.unit(forms)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_sos())
def test_pipeline_soundness_on_random_ternary_quartics(e):
    g = gram_from_sos(e)
    rep = uniqueness_pipeline(g)
    if rep.verdict == UNIQUE:
        assert_unique_by_sampling(g, random.Random(0), count=8)
    elif rep.verdict == NON_UNIQUE:
        assert_witness_valid(rep, g)


def test_span_trivial_and_nontrivial():
    # rows over monomials v1^2, v2^2, v1 v2
    assert psd_span_trivial([[1, -1, 0]], 2).verdict == TRIVIAL
    res = psd_span_trivial([[1, 1, 0]], 2)
    assert res.verdict == NONTRIVIAL and res.definite


# -- perturbation --------------------------------------------------------------


def test_perturb_pd_and_not_psd_on_null():
    a = [[F(1), F(0)], [F(0), F(1)]]
    r = perturb_check(a, [[F(-5), F(0)], [F(0), F(1)]])
    assert r.verdict == PSD_FOR_SMALL_EPS
    assert psd_check_exact([[F(1) - 5 * r.epsilon, 0], [0, 1 + r.epsilon]]).accepted
    with pytest.raises(NotPsdOnNullError):
        perturb_check([[F(1), 0], [0, F(0)]], [[F(0), 0], [0, F(-1)]])
    with pytest.raises(ValueError):
        perturb_check([[F(-1)]], [[F(0)]])


# -- witnesses and coercivity -------------------------------------------------


def test_witness_fails_reports_first_nonvanishing():
    w = witness_verify(noncoercive_quartic(F(1, 9)), [1, 0, 0, 0, 0, 0])
    assert w.verdict == FAILS and w.index == 1 and str(w) == "FAILS(1)"
    with pytest.raises(ValueError, match="trivial"):
        witness_verify(noncoercive_quartic(F(1, 9)), [0] * 6)


def test_forced_delta_empty_for_real_point():
    assert forced_delta_analysis(None, [1, 1, 0, 0], basis=change_basis(4, 2)) == []


def test_forced_delta_sextic_context():
    i = GaussRat.i()
    forced = forced_delta_analysis(None, [1, i, 0, 0], basis=change_basis(4, 3))
    assert [f.index for f in forced] == [1, 25]


def test_coercivity_from_pd_gram():
    g = gram_from_sos(f_rho(F(-1)))
    cert = coercive_from_pd_gram(g)
    assert not cert.certified and "singular" in cert.reason
    from gramcert.gramlin import identity_matrix
    from gramcert.symtensor import enumerate_basis

    assert coercive_from_pd_gram(identity_matrix(enumerate_basis(3, 2))).certified


# -- obstruction ---------------------------------------------------------------


def test_quartic_replay_at_numeric_gamma():
    assert replay_quartic(F(1, 9)).verdict == NONCOERCIVE_CONFIRMED


def test_quartic_replay_fails_at_gamma_zero():
    r = replay_quartic(F(0))
    assert r.verdict == STEP_FAILED and r.failed_step == 3


def test_tampered_forced_change_fails_preconditions():
    bad = dataclasses.replace(QUARTIC_SCRIPT, forced=())
    g0 = gram_from_sos(noncoercive_quartic(F(1, 9)))
    checks = check_preconditions(bad, g0, lambda blk: (True, "assumed"))
    assert not all(ok for _, ok, _ in checks)


def test_sextic_replay_without_constraint_fails():
    bad = dataclasses.replace(SEXTIC_SCRIPT, constraints=())
    g0 = gram_from_sos(noncoercive_sextic())
    res = replay_steps(bad, parametric_submatrix(bad, g0))
    assert res.verdict == STEP_FAILED


# -- game ------------------------------------------------------------------------


def test_admissible_minors_count():
    ms = admissible_minors(4)
    assert len(ms) == 19
    assert parse_minor("det[1 2]") not in ms


def test_game_zero_combination_refutes():
    r = game_verify(gamematrix_board(), {})
    assert r.verdict == NOT_PSD and r.witness["c"] == 1


def test_stored_certificate():
    r = game_verify(gamematrix_board(), stored_certificate())
    assert r.verdict == PD and r.used == 18
    assert r.quadratic.to_str() == "a^2 + b^2 + 12*c^2 + 2*d^2 + 2*e^2 + 6*f^2"


def test_game_search_small_board_and_zero_budget():
    s = game_search(small_board())
    assert s.result is not None and s.result.verdict == PD
    assert game_search(gamematrix_board(), 0).verdict == "NOT_FOUND"


def test_game_rejects_bad_combinations():
    with pytest.raises(ValueError):
        game_verify(gamematrix_board(), {parse_minor("det[1 2]"): F(1)})
    with pytest.raises(ValueError):
        game_verify(gamematrix_board(), {parse_minor("det[2 4|1 3]"): F(1)})


@pytest.mark.parametrize(
    "rows",
    [
        [["b+c", "a"], ["a", "-b+c"], ["0", "0"]],
        [["b+c", "a", "1"], ["a", "-b+c", "0"], ["0", "0", "c"]],
        [["b+c", "a", "0"], ["a", "-b+c", "0"], ["0", "0", "c^2"]],
        [["b+c", "a", "0"], ["a", "b+c", "0"], ["0", "0", "c"]],
        [["b+c", "a", "a"], ["a", "-b+c", "0"], ["a", "0", "c"]],
        [["b+c", "a", "0"], ["a", "-b+c", "0"], ["0", "0", "d"]],
    ],
    ids=["not-square", "asymmetric", "nonlinear", "bad-block", "a-outside", "no-c-outside"],
)
def test_board_validation(rows):
    with pytest.raises((BoardError, ValueError)):
        GameBoard.parse(rows)


@st.composite
def quadratic_spans(draw):
    from gramcert.gramlin import linalg

    m = draw(st.integers(2, 4))
    width = m * (m + 1) // 2
    k = draw(st.integers(1, width - 1))
    rows = [[F(draw(st.integers(-2, 2))) for _ in range(width)] for _ in range(k)]
    r, _ = linalg.rref(rows)
    return [row for row in r if any(row)], m


@settings(max_examples=60, deadline=None)
@given(quadratic_spans())
def test_span_verdicts_carry_valid_certificates(data):
    from gramcert.certify.span import monomial_list, row_to_matrix

    rows, m = data
    if not rows:
        return
    res = psd_span_trivial(rows, m)
    if res.verdict == TRIVIAL and "dual" in res.proof:
        y = res.proof["dual"]
        assert psd_check_exact(y).positive_definite
        for row in rows:
            q = row_to_matrix(row, m)
            assert sum(y[i][j] * q[i][j] for i in range(m) for j in range(m)) == 0
    elif res.verdict == NONTRIVIAL:
        q = res.combination
        assert psd_check_exact(q).accepted and any(x for r in q for x in r)
