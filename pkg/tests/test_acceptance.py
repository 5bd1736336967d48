"""Acceptance criteria 1-11.

Each check returns a list of problems; an empty list is a pass. Every
criterion also has a wall-clock limit. Run directly with
``python tests/test_acceptance.py`` or through pytest; either way one
PASS/FAIL line per criterion is printed.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction as F

import pytest

from gramcert.certify import (
    ALL_VANISH,
    NEVER_PSD,
    NON_UNIQUE,
    NONCOERCIVE_CONFIRMED,
    PD,
    PSD_FOR_SMALL_EPS,
    UNIQUE,
    NotPsdOnNullError,
    cone_quartic_null_basis,
    f_rho_null_basis,
    forced_delta_analysis,
    game_search,
    game_verify,
    gamematrix_board,
    interval_sign,
    perturb_check,
    replay_quartic,
    replay_sextic,
    stored_certificate,
    uniqueness_pipeline,
    witness_verify,
)
from gramcert.certify.witnesses import (
    interval_endpoints,
    relation_root_witness,
    s_eta0_relation,
    sigma_tau_phi,
    sigma_tau_phi_symbolic,
    sqrt3_root_witnesses,
    st_minus_one,
)
from gramcert.forms import (
    Form,
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
from gramcert.forms.parse import parse_poly
from gramcert.gramlin import RepMatrix, change_basis, change_count, gram_from_sos, psd_check_exact, rep_to_form
from gramcert.scalarfield import GaussRat, RatFunc, count_roots, sign
from gramcert.symtensor import (
    SymCoords,
    complex_rankone_parts,
    dim_sym,
    enumerate_basis,
    multi_indices,
    rankone_coords,
)

CRITERIA: dict = {}
RESULTS: dict = {}


def criterion(k: int, title: str, limit: float):
    def deco(fn):
        CRITERIA[k] = (title, limit, fn)
        return fn

    return deco


def run_criterion(k: int) -> tuple[bool, str]:
    title, limit, fn = CRITERIA[k]
    t0 = time.perf_counter()
    try:
        problems = list(fn())
    except Exception as exc:  # a crash is a failure, reported as such
        problems = [f"raised {type(exc).__name__}: {exc}"]
    elapsed = time.perf_counter() - t0
    if elapsed >= limit:
        problems.append(f"took {elapsed:.1f}s, limit {limit:g}s")
    ok = not problems
    line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:6.2f}s, limit {limit:g}s) {title}"
    if problems:
        line += "\n" + "\n".join(f"      - {p}" for p in problems)
    RESULTS[k] = line
    print(line)
    return ok, line


PAIRS = [(2, 2), (4, 2), (6, 2), (3, 3)]


def _rand_q(rng, lo=-5, hi=5):
    return F(rng.randint(lo, hi), rng.randint(1, 4))


def _nonzero_point(rng, n, make):
    while True:
        z = [make() for _ in range(n)]
        if any(z):
            return z


# -- 1 ----------------------------------------------------------------------


@criterion(1, "dimension and change-space counts", 1.0)
def check_dimensions():
    want = {(2, 2): 1, (4, 2): 20, (6, 2): 105, (3, 3): 27}
    probs = []
    if dim_sym(4, 2) != 10 or dim_sym(6, 2) != 21 or dim_sym(3, 3) != 10:
        probs.append("dim_sym disagrees with C(n+p-1, p)")
    for (n, p), c in want.items():
        if change_count(n, p) != c:
            probs.append(f"change_count({n},{p}) = {change_count(n, p)}, want {c}")
        got = len(change_basis(n, p))
        if got != c:
            probs.append(f"change basis for ({n},{p}) has {got} elements, want {c}")
    return probs


# -- 2 ----------------------------------------------------------------------


@criterion(2, "every change annihilates real and complex rank-one tensors", 10.0)
def check_annihilation():
    rng = random.Random(2)
    probs = []
    for n, p in PAIRS:
        order = enumerate_basis(n, p)
        basis = change_basis(n, p, order)
        xs = [_nonzero_point(rng, n, lambda: _rand_q(rng)) for _ in range(50)]
        zs = [_nonzero_point(rng, n, lambda: GaussRat(_rand_q(rng), _rand_q(rng))) for _ in range(50)]
        xt = [rankone_coords(x, p, order) for x in xs]
        zt = [complex_rankone_parts(z, p, order) for z in zs]
        for k, d in enumerate(basis):
            for t in xt:
                if d.pair(t, t):
                    probs.append(f"({n},{p}) Delta_{k + 1} does not vanish at a real point")
                    break
            for r, q in zt:
                if d.pair(r, r) != d.pair(q, q) or d.pair(r, q):
                    probs.append(f"({n},{p}) Delta_{k + 1} fails the complex identities")
                    break
    return probs


# -- 3 ----------------------------------------------------------------------


@criterion(3, "eta0 isolation and the degree-4 identity over Q[s]", 1.0)
def check_eta0():
    probs = []
    K = eta0_field()
    s = K.gen
    if (K.lo, K.hi) != (F(1, 4), F(13, 50)):
        probs.append(f"isolating interval is ({K.lo}, {K.hi})")
    if count_roots(K.modulus, F(1, 4), F(13, 50)) != 1:
        probs.append("interval does not isolate exactly one root")
    if K.modulus.coeffs != (F(1, 9), F(-1, 2), F(0), F(1)) and list(K.modulus.coeffs) != [F(1, 9), F(-1, 2), 0, 1]:
        probs.append(f"unexpected modulus {K.modulus.to_str('s')}")
    if not sign(s - F(1, 3)) < 0:
        probs.append("sqrt(eta0) < 1/3 not confirmed")
    lhs = sos_expand(sosquartic(K))
    rhs = q_eta(s * s)
    monos = multi_indices(4, 4)
    if len(monos) != 35:
        probs.append(f"{len(monos)} quartic monomials, want 35")
    bad = [a.label() for a in monos if lhs.coefficient(a) != rhs.coefficient(a)]
    if bad:
        probs.append(f"coefficients differ at {bad}")
    return probs


# -- 4 ----------------------------------------------------------------------


def _check_nonunique(rep, g, label):
    probs = []
    if rep.witness is None or rep.witness.is_zero():
        return [f"{label}: no witness change"]
    if not (rep.span and rep.span.definite):
        probs.append(f"{label}: witness quadratic not verified definite on the null space")
    moved = g + rep.witness.scale(rep.epsilon)
    if not psd_check_exact(moved).accepted:
        probs.append(f"{label}: G + eps*Delta is not psd at eps = {rep.epsilon}")
    if rep_to_form(moved) != rep_to_form(g):
        probs.append(f"{label}: G + eps*Delta represents a different form")
    return probs


@criterion(4, "cone quartic: 21st column over Q(gamma) and verdicts", 30.0)
def check_quartic():
    probs = []
    g = RatFunc.param("gamma")
    rep = uniqueness_pipeline(gram_from_sos(cone_quartic(g)), cone_quartic_null_basis(g),
                              sign=interval_sign(F(1, 10), F(9, 10)), check_psd=False)
    want = [g / (1 - g)] * 3 + [1 / (1 - g), 2, 2] + [0] * 14
    col = rep.column(21)
    if len(col) != 20 or any(a != b for a, b in zip(col, want)):
        probs.append("symbolic 21st column: " + ", ".join(x.to_str() if isinstance(x, RatFunc) else str(x) for x in col))
    for gv, verdict in [(F(1, 10), UNIQUE), (F(1, 2), UNIQUE), (F(9, 10), UNIQUE), (F(-1), NON_UNIQUE), (F(2), NON_UNIQUE)]:
        gm = gram_from_sos(cone_quartic(gv))
        r = uniqueness_pipeline(gm, cone_quartic_null_basis(gv))
        if r.verdict != verdict:
            probs.append(f"gamma = {gv}: {r.verdict}, want {verdict}")
        elif verdict == NON_UNIQUE:
            probs += _check_nonunique(r, gm, f"gamma = {gv}")
    return probs


# -- 5 ----------------------------------------------------------------------


@criterion(5, "f_rho: 26th column over Q(rho)", 30.0)
def check_sextic_column():
    rho = RatFunc.param("rho")
    rep = uniqueness_pipeline(gram_from_sos(f_rho(rho)), f_rho_null_basis(rho),
                              sign=interval_sign(F(-1), F(-9, 10)), check_psd=False)
    sigma, tau, phi = sigma_tau_phi_symbolic()
    u = rho**3
    probs = []
    if sigma != (1 - 16 * u) / (rho * (1 - 4 * u)) or tau != 3 * rho / (1 - 4 * u) or phi != 4 * rho**2 * (2 * u + 1) / (1 - 4 * u):
        probs.append("sigma, tau, phi closed forms disagree")
    want = [-sigma, -tau] * 3 + [-phi, -1] + [0] * 10 + [-1] + [0] * 8
    col = rep.column(26)
    if len(col) != len(want) or any(a != b for a, b in zip(col, want)):
        probs.append("26th column: " + ", ".join(x.to_str() if isinstance(x, RatFunc) else str(x) for x in col))
    zeros = [i for i, x in enumerate(col) if not x]
    if zeros != list(range(8, 18)) + list(range(19, 27)):
        probs.append(f"zero positions {zeros}")
    return probs


# -- 6 ----------------------------------------------------------------------

RHO_SAMPLES = [F(-2), F(-1), F(-3, 5), F(1, 5), F(1, 2), F(1)]
STATED_UNIQUE = {F(-1), F(-3, 5), F(1, 5)}


@criterion(6, "f_rho uniqueness at sampled rho against the interval theorem", 30.0)
def check_intervals():
    probs = []
    lo, hi = interval_endpoints()
    # boundary exclusion: the endpoints are irrational, -1/2 and 0 are excluded
    for b in (lo, hi):
        if b.rational_value() is not None:
            probs.append(f"endpoint {b.to_str()} is rational")
    if not (sign(lo + F(255, 100)) > 0 and sign(lo + F(254, 100)) < 0):
        probs.append("left endpoint not in (-2.55, -2.54)")
    if not (sign(hi - F(49, 1000)) > 0 and sign(hi - F(50, 1000)) < 0):
        probs.append("right endpoint not in (0.049, 0.050)")
    stmt = set()
    pipe = set()
    for r in RHO_SAMPLES:
        rep = uniqueness_pipeline(gram_from_sos(f_rho(r)), f_rho_null_basis(r))
        u = r**3
        in_thm = (sign(u - lo) > 0 and u < F(-1, 2)) or (u > 0 and sign(hi - u) > 0)
        if sign(st_minus_one(r)) > 0:
            stmt.add(r)
        if rep.verdict == UNIQUE:
            pipe.add(r)
        if in_thm != (rep.verdict == UNIQUE):
            probs.append(f"rho = {r}: pipeline {rep.verdict} but theorem membership {in_thm}")
        if rep.verdict == NON_UNIQUE:
            probs += _check_nonunique(rep, gram_from_sos(f_rho(r)), f"rho = {r}")
    if pipe != STATED_UNIQUE:
        missing = sorted(STATED_UNIQUE - pipe)
        extra = sorted(pipe - STATED_UNIQUE)
        probs.append(
            f"UNIQUE set {sorted(map(str, pipe))} differs from the stated {sorted(map(str, STATED_UNIQUE))}"
            + (f"; certified NON_UNIQUE at {', '.join(map(str, missing))}" if missing else "")
            + (f"; extra {extra}" if extra else "")
        )
    if stmt != STATED_UNIQUE:
        probs.append(f"sign(sigma*tau - 1) > 0 at {sorted(map(str, stmt))}")
    return probs


# -- 7 ----------------------------------------------------------------------


@criterion(7, "noncoercive quartic: witness, forced change, symbolic replay", 10.0)
def check_noncoercive_quartic():
    probs = []
    i = GaussRat.i()
    z = [1, i, 0, 0, 0, 0]
    w = witness_verify(noncoercive_quartic(F(1, 9)), z)
    if w.verdict != ALL_VANISH:
        probs.append(f"witness: {w}")
    forced = forced_delta_analysis(enumerate_basis(6, 2), z)
    if [(f.index, f.label) for f in forced] != [(1, "E200000*E020000 - E110000*E110000")]:
        probs.append(f"forced changes {[(f.index, f.label) for f in forced]}")
    rep = replay_quartic(None)
    if rep.verdict != NONCOERCIVE_CONFIRMED:
        probs.append(f"replay: {rep}")
    dets = {s.label: s.polynomial for s in rep.transcript}
    for lab, text in (("det[3 4 5]", "-(b - a*gamma)^2"), ("det[2 4 5]", "-(e - d*gamma)^2")):
        if dets.get(lab) != parse_poly(text):
            probs.append(f"{lab} = {dets.get(lab)}, want {text}")
    if not any("delta" in str(s.derived) for s in rep.transcript):
        probs.append("transcript never uses delta")
    return probs


# -- 8 ----------------------------------------------------------------------


@criterion(8, "noncoercive sextic: witness, even substitution, replay", 10.0)
def check_noncoercive_sextic():
    probs = []
    e = noncoercive_sextic()
    w = witness_verify(e, [1, GaussRat.i(), 0, 0])
    if w.verdict != ALL_VANISH:
        probs.append(f"witness: {w}")
    names = ("w", "x", "y", "z")
    lifted = sos_expand(f_rho(F(-1))).embed(4, [0, 2, 3], names)
    wx = Form.variable(4, 0, names) ** 2 + Form.variable(4, 1, names) ** 2
    g = even_substitute(lifted, 0, wx)
    h = sos_expand(e)
    if g != h:
        diff = [a.label() for a in multi_indices(4, 6) if g.coefficient(a) != h.coefficient(a)]
        probs.append(f"even substitution differs at {diff}")
    rep = replay_sextic()
    if rep.verdict != NONCOERCIVE_CONFIRMED:
        probs.append(f"replay: {rep}")
    got = {k: v.to_str() for k, v in rep.substitutions.items()}
    if got != {"a": "delta", "b": "delta", "c": "0", "d": "-2*delta"}:
        probs.append(f"substitutions {got}")
    if not rep.transcript or rep.transcript[-1].derived != "contradiction":
        probs.append("transcript does not end in a contradiction")
    if not all(ok for _, ok, _ in rep.preconditions):
        probs.append("a precondition failed")
    return probs


# -- 9 ----------------------------------------------------------------------


def random_instance(rng):
    """A psd 5x5 A of random rank and a symmetric B of one of three kinds."""
    n = 5
    r = rng.randint(1, 4)
    L = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(r)]
    A = [[sum(L[k][i] * L[k][j] for k in range(r)) for j in range(n)] for i in range(n)]
    kind = rng.randrange(3)
    S = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            S[i][j] = S[j][i] = rng.randint(-3, 3)
    if kind == 0:
        B = S
    else:
        M = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(1, 3))]
        P = [[sum(M[k][i] * M[k][j] for k in range(len(M))) for j in range(n)] for i in range(n)]
        # A Y + Y^T A vanishes on Null(A) from both sides
        Y = [[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)]
        AY = [[sum(A[i][k] * Y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        B = [[P[i][j] + AY[i][j] + AY[j][i] for j in range(n)] for i in range(n)]
        if kind == 2:
            B = [[B[i][j] + (S[i][j] if i == j == 0 else 0) for j in range(n)] for i in range(n)]
    return [[F(x) for x in row] for row in A], [[F(x) for x in row] for row in B]


def brute_force_agrees(A, B) -> str | None:
    epsilons = [F(1, 2**k) for k in range(1, 21)]
    psd = {e: psd_check_exact([[a + e * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]).accepted
           for e in epsilons}
    try:
        r = perturb_check(A, B)
    except NotPsdOnNullError:
        bad = [e for e in epsilons if psd[e]]
        return f"not psd on null but psd at eps = {bad[0]}" if bad else None
    if r.verdict == NEVER_PSD:
        bad = [e for e in epsilons if psd[e]]
        return f"NEVER_PSD but psd at eps = {bad[0]}" if bad else None
    bad = [e for e in epsilons if e <= r.epsilon and not psd[e]]
    if bad:
        return f"PSD_FOR_SMALL_EPS({r.epsilon}) but not psd at eps = {bad[0]}"
    if not psd_check_exact([[a + r.epsilon * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]).accepted:
        return f"certified eps = {r.epsilon} is not psd"
    return None


@criterion(9, "perturbation decision: counterexamples and 200 random 5x5 instances", 60.0)
def check_perturbation():
    probs = []
    for b in (F(1), F(-1), F(1, 7)):
        A = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
        B = [[0, b, 0], [b, 0, 0], [0, 0, 1]]
        r = perturb_check(A, B)
        if r.verdict != NEVER_PSD:
            probs.append(f"3x3 example with b = {b}: {r.verdict}")
    o = enumerate_basis(3, 2)

    def E(lab):
        return SymCoords.basis(o, tuple(int(c) for c in lab))

    A = RepMatrix.zero(o)
    for t in (E("200") + E("020"), E("002"), E("011"), E("101")):
        A = A + RepMatrix.outer(t)
    D = RepMatrix.sym_pair(o, (0, 0, 2), (1, 1, 0)) - RepMatrix.sym_pair(o, (0, 1, 1), (1, 0, 1))
    if D.pair(E("110"), E("110")) != 0:
        probs.append("Delta . E110 E110 is not 0")
    if D.apply(E("110")) != E("002").scale(F(1, 2)):
        probs.append(f"Delta E110 = {D.apply(E('110'))}")
    if not rep_to_form(D).is_zero():
        probs.append("Delta is not a change")
    if perturb_check(A, D).verdict != NEVER_PSD:
        probs.append("Gram/Delta example is not refuted")
    rng = random.Random(9)
    kinds = {}
    for k in range(200):
        A5, B5 = random_instance(rng)
        msg = brute_force_agrees(A5, B5)
        if msg:
            probs.append(f"instance {k}: {msg}")
        try:
            v = perturb_check(A5, B5).verdict
        except NotPsdOnNullError:
            v = "NOT_PSD_ON_NULL"
        kinds[v] = kinds.get(v, 0) + 1
    if len(kinds) < 3:
        probs.append(f"random instances do not exercise all outcomes: {kinds}")
    return probs


# -- 10 ---------------------------------------------------------------------


@criterion(10, "algebraic relations in Q[sqrt5], Q[sqrt3] and the relation ideal", 5.0)
def check_relations():
    probs = []
    diff, rho, eta0 = s_eta0_relation()
    if not diff.is_zero():
        probs.append("s_eta0 - (1+sqrt5) f_rho is not zero")
    ws = sqrt3_root_witnesses()
    s3 = ws[0].rho.field.gen
    if ws[0].rho != (s3 - 1) / 2:
        probs.append(f"first witness rho = {ws[0].rho.to_str()}")
    if ws[0].point != (1, 1, 1) and tuple(str(x) for x in ws[0].point) != ("1", "1", "1"):
        probs.append(f"point {ws[0].point}")
    for w in ws:
        if not w.vanishes:
            probs.append(f"cubics do not vanish at rho = {w.rho.to_str()}")
    rel = relation_root_witness()
    if not rel.vanishes:
        probs.append(f"relation-ideal witness leaves {[v.to_str() for v in rel.values]}")
    return probs


# -- 11 ---------------------------------------------------------------------


@criterion(11, "minor game: stored certificate and search", 300.0)
def check_game():
    probs = []
    board = gamematrix_board()
    t0 = time.perf_counter()
    r = game_verify(board, stored_certificate())
    cert = psd_check_exact(r.matrix)
    if r.verdict != PD or not cert.positive_definite or not cert.verify(r.matrix):
        probs.append(f"stored certificate: {r.verdict}")
    if time.perf_counter() - t0 >= 5:
        probs.append("stored verification slower than 5 s")
    s = game_search(board)
    if s.result is None or s.result.verdict not in (PD, "PSD"):
        probs.append(f"search: {s.verdict}")
    elif not psd_check_exact(s.result.matrix).accepted:
        probs.append("search result fails the exact psd check")
    return probs


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_acceptance(k):
    ok, line = run_criterion(k)
    assert ok, line


if __name__ == "__main__":
    import sys

    results = [run_criterion(k)[0] for k in sorted(CRITERIA)]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
