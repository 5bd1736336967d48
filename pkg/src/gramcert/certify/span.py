"""Does a linear span of quadratic forms meet the psd cone only at zero?

The input is a list of quadratics in m variables, given by coefficient rows
over the monomials v0^2, ..., v_{m-1}^2, v0 v1, v0 v2, ..., v_{m-2} v_{m-1}.
Two exact certificates are tried in turn.

Pattern (after RREF): exactly one monomial v_p v_q is not a pivot, and
every row reads  pivot + c * v_p v_q.  Write c_j for the square rows and
c_jk for the cross rows. A combination is then

    Q = sum_j l_j v_j^2 + sum_jk m_jk v_j v_k + S v_p v_q,
    S = sum_j l_j c_j + sum_jk m_jk c_jk.

TRIVIAL when all c_j are nonzero of one sign and the pair {p,q} together
with the cross rows having c_jk != 0 are disjoint, |c_p c_q| > 1 and
|c_j c_k| > c_jk^2 for each such cross row. Then any psd Q has S = 0 and
vanishes: AM-GM on each pair bounds S by the 2x2 minors.

Dual: the span holds no nonzero psd quadratic exactly when some positive
definite Y has tr(Y Q) = 0 for every Q in it. Y is first tried as the
orthogonal projection of the identity, then found by a semidefinite program
whose rounded output is projected back and checked exactly. The same
program looks for a definite member of the span when no Y exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..gramlin import linalg, psd_check_exact
from ..scalarfield import sign as exact_sign

TRIVIAL = "TRIVIAL"
NONTRIVIAL = "NONTRIVIAL"
INCONCLUSIVE = "INCONCLUSIVE"


def monomial_list(m: int) -> list[tuple[int, int]]:
    return [(i, i) for i in range(m)] + [(i, j) for i in range(m) for j in range(i + 1, m)]


def monomial_name(mono, names) -> str:
    i, j = mono
    return f"{names[i]}^2" if i == j else f"{names[i]}{names[j]}"


def row_to_matrix(row: Sequence, m: int) -> list[list]:
    monos = monomial_list(m)
    zero = row[0] - row[0] if row else Fraction(0)
    q = [[zero] * m for _ in range(m)]
    for (i, j), c in zip(monos, row):
        if i == j:
            q[i][i] = c
        else:
            q[i][j] = q[j][i] = c / 2
    return q


def matrix_to_row(q: Sequence[Sequence]) -> list:
    m = len(q)
    return [q[i][i] if i == j else 2 * q[i][j] for i, j in monomial_list(m)]


@dataclass
class SpanResult:
    verdict: str
    weights: list | None = None  # lambda over the input rows, for NONTRIVIAL
    combination: list | None = None  # the psd quadratic as a symmetric matrix
    definite: bool = False
    proof: dict = field(default_factory=dict)


def _default_sign(x) -> int:
    return exact_sign(x)


def psd_span_trivial(
    rows: Sequence[Sequence],
    m: int,
    sign: Callable | None = None,
    names: Sequence[str] | None = None,
    exact_check: bool = True,
) -> SpanResult:
    """Decide whether span(rows) contains a nonzero psd quadratic.

    `rows` must already be in reduced row echelon form. `sign` maps a scalar
    to -1/0/1 (defaults to exact rational/algebraic sign; pass an interval
    sign for rational functions). Set exact_check=False for symbolic rows;
    only the pattern test runs then.
    """
    res = _pattern_test(rows, m, sign, names, exact_check)
    if res.verdict == TRIVIAL or (res.verdict == NONTRIVIAL and res.definite) or not exact_check:
        return res
    rows = [list(r) for r in rows if any(x for x in r)]
    if not rows or not all(isinstance(x, (int, Fraction)) for r in rows for x in r):
        return res
    if res.verdict == NONTRIVIAL:
        lam = definite_member(rows, m)
        if lam is None:
            return res
        return _nontrivial(rows, lam, m, sign or _default_sign, True, {
            **res.proof, "upgrade": "semidefinite search found a definite member of the span",
        })
    y = dual_certificate(rows, m)
    if y is not None:
        return SpanResult(TRIVIAL, proof={
            "reason": "a positive definite matrix is orthogonal to every quadratic in the span",
            "dual": y,
            "pattern": res.proof.get("reason"),
        })
    lam = definite_member(rows, m)
    if lam is not None:
        return _nontrivial(rows, lam, m, sign or _default_sign, True, {
            "reason": "semidefinite search found a definite member of the span",
            "pattern": res.proof.get("reason"),
        })
    return res


def _pattern_test(rows, m, sign, names, exact_check) -> SpanResult:
    sign = sign or _default_sign
    names = list(names or [chr(ord("a") + i) for i in range(m)])
    monos = monomial_list(m)
    rows = [list(r) for r in rows if any(x for x in r)]
    pivots = []
    for r in rows:
        c = next(k for k, x in enumerate(r) if x)
        if sign(r[c] - 1) != 0:
            return SpanResult(INCONCLUSIVE, proof={"reason": "rows are not in reduced echelon form"})
        pivots.append(c)
    free = [k for k in range(len(monos)) if k not in pivots]

    # a row that is a bare monomial square is itself psd
    for idx, r in enumerate(rows):
        nz = [k for k, x in enumerate(r) if x]
        if len(nz) == 1 and monos[nz[0]][0] == monos[nz[0]][1]:
            lam = [Fraction(0)] * len(rows)
            lam[idx] = Fraction(1)
            return _nontrivial(rows, lam, m, sign, exact_check, {
                "reason": f"row {idx + 1} is the square {monomial_name(monos[nz[0]], names)}",
            })

    if len(free) != 1 or monos[free[0]][0] == monos[free[0]][1]:
        return SpanResult(INCONCLUSIVE, proof={
            "reason": "pattern needs exactly one non-pivot monomial, a cross term",
            "free": [monomial_name(monos[k], names) for k in free],
        })
    fcol = free[0]
    p, q = monos[fcol]
    if any(monos[k][0] != monos[k][1] for k in range(m) if k not in pivots):
        return SpanResult(INCONCLUSIVE, proof={"reason": "some square monomial is not a pivot"})

    sq_c: dict[int, object] = {}
    cross_c: dict[tuple[int, int], object] = {}
    row_of: dict = {}
    for idx, (r, c) in enumerate(zip(rows, pivots)):
        i, j = monos[c]
        if i == j:
            sq_c[i] = r[fcol]
        else:
            cross_c[(i, j)] = r[fcol]
        row_of[monos[c]] = idx

    signs = {j: sign(c) for j, c in sq_c.items()}
    proof = {
        "free_monomial": monomial_name((p, q), names),
        "square_coefficients": {names[j]: sq_c[j] for j in range(m)},
        "cross_coefficients": {
            monomial_name(k, names): v for k, v in cross_c.items() if sign(v) != 0
        },
    }

    zero_sq = [j for j in range(m) if signs[j] == 0]
    if zero_sq:
        j = zero_sq[0]
        lam = [Fraction(0)] * len(rows)
        lam[row_of[(j, j)]] = Fraction(1)
        proof["reason"] = f"row {names[j]}^2 has no cross coupling"
        return _nontrivial(rows, lam, m, sign, exact_check, proof)

    pos = [j for j in range(m) if signs[j] > 0]
    neg = [j for j in range(m) if signs[j] < 0]
    if pos and neg:
        # balance the coupling to zero with all squares present: a pd diagonal
        ptot = sum((sq_c[j] for j in pos), Fraction(0))
        ntot = sum((-sq_c[j] for j in neg), Fraction(0))
        lam = [Fraction(0)] * len(rows)
        for j in pos:
            lam[row_of[(j, j)]] = ntot
        for j in neg:
            lam[row_of[(j, j)]] = ptot
        proof["reason"] = "square coefficients of mixed sign; balanced diagonal combination"
        return _nontrivial(rows, lam, m, sign, exact_check, proof)

    s = 1 if pos else -1
    coupled = [(i, j) for (i, j), v in cross_c.items() if sign(v) != 0]
    groups = [(p, q)] + coupled
    used: set = set()
    overlap = False
    for a, b in groups:
        if a in used or b in used:
            overlap = True
        used.update((a, b))
    if overlap:
        return SpanResult(INCONCLUSIVE, proof={**proof, "reason": "coupled pairs overlap"})

    # pair conditions
    def excess(a, b, cab):
        # |c_a c_b| - cab^2 must be positive; for the free pair cab = 1
        return abs_(sq_c[a] * sq_c[b], sign) - cab * cab

    failures = []
    for a, b in groups:
        cab = 1 if (a, b) == (p, q) else cross_c[(a, b)]
        e = excess(a, b, cab)
        proof.setdefault("pair_conditions", {})[monomial_name((a, b), names)] = e
        if sign(e) <= 0:
            failures.append((a, b, cab))
    if not failures:
        proof["reason"] = (
            "same-sign square coefficients and every coupled pair has "
            "|c_j c_k| > c_jk^2 (free pair: |c_p c_q| > 1)"
        )
        return SpanResult(TRIVIAL, proof=proof)

    a, b, cab = failures[0]
    lam = [Fraction(0)] * len(rows)
    lam[row_of[(a, a)]] = abs_(sq_c[b], sign)
    lam[row_of[(b, b)]] = abs_(sq_c[a], sign)
    if (a, b) != (p, q):
        # cancel the free coupling with the cross row a*b
        total = lam[row_of[(a, a)]] * sq_c[a] + lam[row_of[(b, b)]] * sq_c[b]
        lam[row_of[(a, b)]] = -total / cab
    proof["reason"] = f"pair {monomial_name((a, b), names)} violates its 2x2 minor condition"
    res = _nontrivial(rows, lam, m, sign, exact_check, proof)
    if exact_check and not res.definite:
        res = _try_definite(rows, lam, m, sign, proof) or res
    return res


def abs_(x, sign):
    return x if sign(x) >= 0 else -x


def _combine(rows, lam, m):
    zero = rows[0][0] - rows[0][0]
    total = [zero] * len(rows[0])
    for l, r in zip(lam, rows):
        if l:
            total = [t + l * x for t, x in zip(total, r)]
    return row_to_matrix(total, m)


def _nontrivial(rows, lam, m, sign, exact_check, proof) -> SpanResult:
    qmat = _combine(rows, lam, m)
    definite = False
    if exact_check:
        cert = psd_check_exact(qmat)
        if not cert.accepted:
            return SpanResult(INCONCLUSIVE, proof={**proof, "reason": "witness failed exact psd check"})
        if all(not x for row in qmat for x in row):
            return SpanResult(INCONCLUSIVE, proof={**proof, "reason": "witness combination vanished"})
        definite = cert.positive_definite
    return SpanResult(NONTRIVIAL, weights=lam, combination=qmat, definite=definite, proof=proof)


def _try_definite(rows, lam, m, sign, proof) -> SpanResult | None:
    """Push a psd witness toward definiteness by adding small multiples of all squares."""
    base = list(lam)
    sq_rows = [idx for idx, r in enumerate(rows) if _pivot_is_square(r, m)]
    for k in range(1, 40):
        eps = Fraction(1, 2**k)
        trial = list(base)
        for idx in sq_rows:
            trial[idx] = trial[idx] + eps
        qmat = _combine(rows, trial, m)
        cert = psd_check_exact(qmat)
        if cert.accepted and cert.positive_definite:
            return SpanResult(NONTRIVIAL, weights=trial, combination=qmat, definite=True,
                              proof={**proof, "upgrade_epsilon": eps})
    return None


def _pivot_is_square(row, m) -> bool:
    monos = monomial_list(m)
    c = next(k for k, x in enumerate(row) if x)
    return monos[c][0] == monos[c][1]


def linear_span_rows(quadratics: Sequence[Sequence[Sequence]]) -> list[list]:
    """Coefficient rows (RREF) for a list of symmetric matrices."""
    raw = [matrix_to_row(q) for q in quadratics]
    r, _ = linalg.rref(raw)
    return [row for row in r if any(x for x in row)]


# -- dual and semidefinite search ----------------------------------------------


def _complement_basis(rows: list[list]) -> list[list]:
    """Basis of the vectors orthogonal to every row; rows are in RREF."""
    width = len(rows[0])
    piv = [next(k for k, x in enumerate(r) if x) for r in rows]
    out = []
    for f in range(width):
        if f in piv:
            continue
        v = [Fraction(0)] * width
        v[f] = Fraction(1)
        for r, c in zip(rows, piv):
            if r[f]:
                v[c] = -r[f]
        out.append(v)
    return out


def _project_out(rows: list[list], y: list, basis: list[list] | None = None) -> list:
    """Orthogonal projection of y onto the complement of the row space."""
    k = basis if basis is not None else _complement_basis(rows)
    if not k:
        return [Fraction(0)] * len(y)
    gram = [[linalg.dot(a, b) for b in k] for a in k]
    c = linalg.solve(gram, [linalg.dot(a, y) for a in k])
    return [sum((ci * a[j] for ci, a in zip(c, k) if ci), Fraction(0)) for j in range(len(y))]


def _vec_to_matrix(y: Sequence, m: int) -> list[list]:
    q = [[Fraction(0)] * m for _ in range(m)]
    for (i, j), v in zip(monomial_list(m), y):
        q[i][j] = q[j][i] = v
    return q


def _is_pd(q) -> bool:
    cert = psd_check_exact(q)
    return cert.accepted and cert.positive_definite


def dual_certificate(rows: list[list], m: int) -> list[list] | None:
    """A positive definite Y with tr(Y Q) = 0 on the span, checked exactly.

    With Y_ii = y_ii and Y_ij = y_ij, tr(Y Q) is the plain dot product of y
    with a coefficient row.
    """
    monos = monomial_list(m)
    k = _complement_basis(rows)
    if not k:
        return None
    e = [Fraction(1) if i == j else Fraction(0) for i, j in monos]
    y = _vec_to_matrix(_project_out(rows, e, k), m)
    if _is_pd(y):
        return y
    guess = _sdp(rows, m, dual=True, basis=k)
    if guess is None:
        return None
    y = _vec_to_matrix(_project_out(rows, guess, k), m)
    return y if _is_pd(y) else None


def definite_member(rows: list[list], m: int) -> list | None:
    """Row weights whose combination is positive definite, checked exactly."""
    lam = _sdp(rows, m, dual=False)
    if lam is None:
        return None
    return lam if _is_pd(_combine(rows, lam, m)) else None


def _round(xs, denominators=(1, 2, 4, 8, 16, 64, 256, 1024, 2**16)):
    for d in denominators:
        yield [Fraction(round(float(x) * d), d) for x in xs]


def _sdp(rows: list[list], m: int, dual: bool, basis: list[list] | None = None) -> list | None:
    """Maximize the smallest eigenvalue over the orthogonal complement (dual)
    or over the span itself, with unit trace. Returns rational data or None."""
    import cvxpy as cp
    import numpy as np

    monos = monomial_list(m)
    R = np.array([[float(x) for x in r] for r in rows])
    X = cp.Variable((m, m), symmetric=True)
    t = cp.Variable()
    cons = [cp.trace(X) == m, X - t * np.eye(m) >> 0]
    if dual:
        vec = cp.hstack([X[i, j] for i, j in monos])
        cons.append(R @ vec == 0)
    else:
        lam = cp.Variable(len(rows))
        comb = R.T @ lam
        for k, (i, j) in enumerate(monos):
            cons.append(X[i, j] == (comb[k] if i == j else comb[k] / 2))
    prob = cp.Problem(cp.Maximize(t), cons)
    try:
        prob.solve()
    except cp.error.SolverError:
        return None
    if prob.status not in ("optimal", "optimal_inaccurate") or t.value is None or t.value <= 1e-9:
        return None
    if dual:
        raw = [X.value[i, j] for i, j in monos]
        for y in _round(raw):
            if _is_pd(_vec_to_matrix(_project_out(rows, y, basis), m)):
                return y
        return None
    for lw in _round(lam.value):
        if _is_pd(_combine(rows, lw, m)):
            return lw
    return None
