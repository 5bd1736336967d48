"""The minor game on a parametric symmetric matrix.

A board is a symmetric n x n matrix t of linear forms whose [1 2] block is
(b+c, a; a, -b+c), with a and b absent elsewhere and c present elsewhere.
A move is a combination of 2x2 minors of t, never using det[1 2]; it wins
when a^2 + b^2 - c^2 plus the combination is a psd quadratic form in the
board variables.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..gramlin import linalg, psd_check_exact
from ..gramlin.ldl import LdlCertificate
from ..scalarfield import MPoly

PSD = "PSD"
PD = "PD"
NOT_PSD = "NOT_PSD"
FOUND = "FOUND"
NOT_FOUND = "NOT_FOUND"

DEFAULT_BUDGET = 8


class BoardError(ValueError):
    pass


@dataclass(frozen=True)
class Minor:
    rows: tuple  # 1-based
    cols: tuple

    @property
    def principal(self) -> bool:
        return self.rows == self.cols

    def __str__(self):
        r = " ".join(map(str, self.rows))
        if self.principal:
            return f"det[{r}]"
        return f"det[{r}|{' '.join(map(str, self.cols))}]"

    def evaluate(self, t):
        (i, j), (k, l) = [x - 1 for x in self.rows], [x - 1 for x in self.cols]
        return t[i][k] * t[j][l] - t[i][l] * t[j][k]


def parse_minor(text: str) -> Minor:
    body = text.strip()
    if body.startswith("det"):
        body = body[3:]
    body = body.strip("[] ")
    if "|" in body:
        r, c = body.split("|")
    else:
        r = c = body
    rows = tuple(int(x) for x in r.split())
    cols = tuple(int(x) for x in c.split())
    if len(rows) != 2 or len(cols) != 2:
        raise ValueError(f"not a 2x2 minor: {text!r}")
    return Minor(rows, cols)


def _generic(n: int):
    return [[MPoly.var(f"s{min(i, j)}_{max(i, j)}") for j in range(n)] for i in range(n)]


@functools.lru_cache(maxsize=None)
def admissible_minors(n: int) -> tuple:
    """A basis of the 2x2-minor quadratics of a symmetric matrix, det[1 2] removed.

    All minors are listed with row pair <= column pair; det[1 2] is taken
    first and the rest greedily while they stay linearly independent.
    """
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    cands = [Minor(r, c) for r, c in itertools.combinations_with_replacement(pairs, 2)]
    first = Minor((1, 2), (1, 2))
    cands.remove(first)
    cands.insert(0, first)
    s = _generic(n)
    monos: dict = {}
    rows: list = []
    chosen: list[Minor] = []
    rank = 0
    for m in cands:
        poly = m.evaluate(s)
        for mono in poly.terms:
            monos.setdefault(mono, len(monos))
        vec = [Fraction(0)] * len(monos)
        for mono, c in poly.terms.items():
            vec[monos[mono]] = Fraction(c)
        trial = [r + [Fraction(0)] * (len(monos) - len(r)) for r in rows] + [vec]
        new_rank = linalg.rank(trial)
        if new_rank > rank:
            rows, rank = trial, new_rank
            chosen.append(m)
    return tuple(chosen[1:])


@dataclass(frozen=True)
class GameBoard:
    entries: tuple  # n x n of MPoly
    variables: tuple

    def __post_init__(self):
        ent = tuple(tuple(MPoly.coerce(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "variables", tuple(self.variables))
        validate_board(self)

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]], variables: Sequence[str] | None = None) -> "GameBoard":
        from ..forms.parse import parse_poly

        ent = [[parse_poly(x) for x in row] for row in rows]
        names = set()
        for row in ent:
            for x in row:
                names |= x.variables()
        if variables is None:
            variables = ["a", "b", "c"] + sorted(names - {"a", "b", "c"})
        return cls(tuple(tuple(r) for r in ent), tuple(variables))

    def to_strings(self) -> list[list[str]]:
        return [[x.to_str() for x in row] for row in self.entries]


def validate_board(board: GameBoard):
    t = board.entries
    n = len(t)
    if n < 2 or any(len(r) != n for r in t):
        raise BoardError("board must be a square matrix of size at least 2")
    for i in range(n):
        for j in range(n):
            if t[i][j] != t[j][i]:
                raise BoardError(f"board is not symmetric at ({i + 1},{j + 1})")
            x = t[i][j]
            if x.constant_term() or x.total_degree() > 1:
                raise BoardError(f"entry ({i + 1},{j + 1}) is not a linear form")
            if not x.variables() <= set(board.variables):
                raise BoardError(f"entry ({i + 1},{j + 1}) uses undeclared variables")
    a, b, c = MPoly.var("a"), MPoly.var("b"), MPoly.var("c")
    if (t[0][0], t[0][1], t[1][1]) != (b + c, a, c - b):
        raise BoardError("the [1 2] block must be (b+c, a; a, -b+c)")
    outside = [t[i][j] for i in range(n) for j in range(n) if not (i < 2 and j < 2)]
    for x in outside:
        if x.variables() & {"a", "b"}:
            raise BoardError("variables a and b may only appear in the [1 2] block")
    if not any("c" in x.variables() for x in outside):
        raise BoardError(
            "c must appear outside the [1 2] block; otherwise a rank-one matrix is reachable"
        )


def gamematrix_board() -> GameBoard:
    rows = [
        ["b+c", "a", "e", "f"],
        ["a", "-b+c", "d", "e"],
        ["e", "d", "c+d", "f"],
        ["f", "e", "f", "c-d"],
    ]
    return GameBoard.parse(rows, ["a", "b", "c", "d", "e", "f"])


def small_board() -> GameBoard:
    """c alone on the third diagonal entry."""
    return GameBoard.parse([["b+c", "a", "0"], ["a", "-b+c", "0"], ["0", "0", "c"]], ["a", "b", "c"])


# -- verification -----------------------------------------------------------


def _quadratic_matrix(q: MPoly, variables) -> list[list[Fraction]]:
    k = len(variables)
    pos = {v: i for i, v in enumerate(variables)}
    m = [[Fraction(0)] * k for _ in range(k)]
    for mono, c in q.terms.items():
        if sum(e for _, e in mono) != 2:
            raise ValueError("combination is not a quadratic form")
        if len(mono) == 1:
            i = pos[mono[0][0]]
            m[i][i] += Fraction(c)
        else:
            i, j = pos[mono[0][0]], pos[mono[1][0]]
            m[i][j] += Fraction(c) / 2
            m[j][i] += Fraction(c) / 2
    return m


def _normalize(coeffs, minors) -> dict:
    if isinstance(coeffs, Mapping):
        out = {}
        for k, v in coeffs.items():
            m = k if isinstance(k, Minor) else parse_minor(k)
            out[m] = Fraction(v)
        return out
    coeffs = list(coeffs)
    if len(coeffs) != len(minors):
        raise ValueError(f"expected {len(minors)} coefficients, got {len(coeffs)}")
    return {m: Fraction(v) for m, v in zip(minors, coeffs) if v}


@dataclass
class GameResult:
    verdict: str
    quadratic: MPoly
    matrix: list
    certificate: LdlCertificate
    coefficients: dict
    witness: dict | None = None

    @property
    def used(self) -> int:
        return sum(1 for v in self.coefficients.values() if v)


def combination(board: GameBoard, coeffs) -> MPoly:
    a, b, c = (MPoly.var(x) for x in "abc")
    q = a * a + b * b - c * c
    minors = admissible_minors(board.n)
    for m, lam in _normalize(coeffs, minors).items():
        if lam:
            q = q + m.evaluate(board.entries) * lam
    return q


def game_verify(board: GameBoard, coeffs) -> GameResult:
    """Exact psd test of a^2 + b^2 - c^2 + sum lambda_k minor_k(t)."""
    minors = admissible_minors(board.n)
    lam = _normalize(coeffs, minors)
    for m, v in lam.items():
        if m.rows == m.cols == (1, 2) and v:
            raise ValueError("det[1 2] is not allowed in the combination")
        if m.rows > m.cols:
            raise ValueError(f"{m} must be written with the row pair first")
        if m not in minors:
            raise ValueError(f"{m} is not one of the admissible minors")
    q = combination(board, lam)
    mat = _quadratic_matrix(q, board.variables)
    cert = psd_check_exact(mat)
    if not cert.accepted:
        w = dict(zip(board.variables, cert.refutation))
        return GameResult(NOT_PSD, q, mat, cert, lam, w)
    return GameResult(PD if cert.positive_definite else PSD, q, mat, cert, lam)


# -- search -----------------------------------------------------------------


@dataclass
class SearchResult:
    verdict: str
    coefficients: dict = field(default_factory=dict)
    result: GameResult | None = None
    attempts: int = 0


def _float_matrix(q: MPoly, variables):
    return [[float(x) for x in row] for row in _quadratic_matrix(q, variables)]


def game_search(board: GameBoard, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Linear program over diagonal dominance, then exact verification.

    Each attempt solves one LP with a box bound on the coefficients and
    rounds the optimum to a small denominator. NOT_FOUND proves nothing.
    """
    if budget <= 0:
        return SearchResult(NOT_FOUND)
    import numpy as np
    from scipy.optimize import linprog

    minors = admissible_minors(board.n)
    a, b, c = (MPoly.var(x) for x in "abc")
    q0 = _float_matrix(a * a + b * b - c * c, board.variables)
    qs = [_float_matrix(m.evaluate(board.entries), board.variables) for m in minors]
    k, n = len(qs), len(board.variables)
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    nv = k + len(off) + 1
    rows, rhs = [], []
    for t, (i, j) in enumerate(off):
        for s in (1, -1):
            r = np.zeros(nv)
            r[:k] = [s * qm[i][j] for qm in qs]
            r[k + t] = -1
            rows.append(r)
            rhs.append(-s * q0[i][j])
    for i in range(n):
        r = np.zeros(nv)
        r[:k] = [-qm[i][i] for qm in qs]
        for t, (ii, _) in enumerate(off):
            if ii == i:
                r[k + t] = 1
        r[-1] = 1
        rows.append(r)
        rhs.append(q0[i][i])
    cost = np.zeros(nv)
    cost[-1] = -1
    a_ub, b_ub = np.array(rows), np.array(rhs)

    attempts = 0
    best = None
    for box in (10, 100, 1000, 10000):
        for den in (1, 2, 10, 1000):
            if attempts >= budget:
                break
            attempts += 1
            bounds = [(-box, box)] * k + [(0, None)] * len(off) + [(None, 1)]
            res = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
            if res.status != 0 or res.x[-1] < 0:
                break  # a larger box may help; rounding cannot
            lam = {m: Fraction(float(v)).limit_denominator(den) for m, v in zip(minors, res.x[:k])}
            lam = {m: v for m, v in lam.items() if v}
            gr = game_verify(board, lam)
            if gr.verdict == PD:
                return SearchResult(FOUND, lam, gr, attempts)
            if gr.verdict == PSD and best is None:
                best = SearchResult(FOUND, lam, gr, attempts)
    if best is not None:
        best.attempts = attempts
        return best
    return SearchResult(NOT_FOUND, attempts=attempts)


# A combination found by game_search on the 4x4 board and stored verbatim;
# it uses 18 of the 19 admissible minors and leaves a^2+b^2+12c^2+2d^2+2e^2+6f^2.
STORED_CERTIFICATE: dict = {
    "det[1 2|1 3]": 10,
    "det[1 2|1 4]": 6,
    "det[1 2|2 3]": -6,
    "det[1 2|2 4]": 10,
    "det[1 2|3 4]": 6,
    "det[1 3|1 4]": -5,
    "det[1 3|2 3]": 3,
    "det[1 3|2 4]": 6,
    "det[1 3|3 4]": -10,
    "det[1 4]": 9,
    "det[1 4|2 4]": -3,
    "det[1 4|3 4]": -10,
    "det[2 3]": 5,
    "det[2 3|2 4]": 5,
    "det[2 3|3 4]": 2,
    "det[2 4]": 4,
    "det[2 4|3 4]": -2,
    "det[3 4]": -5,
}


def stored_certificate() -> dict:
    return {parse_minor(k): Fraction(v) for k, v in STORED_CERTIFICATE.items()}
