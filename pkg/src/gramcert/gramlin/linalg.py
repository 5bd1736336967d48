"""Dense exact linear algebra on lists of lists.

Entries may be Fractions, RatFuncs, AlgNums or (for determinants only)
MPolys. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..scalarfield import MPoly, RatFunc, UniPoly

Matrix = list  # list[list[scalar]]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc if acc != 0 or not isinstance(acc, int) else Fraction(0))
        out.append(out_row)
    return out


def matvec(a: Matrix, v: Sequence) -> list:
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(Fraction(0) if isinstance(acc, int) and acc == 0 else acc)
    return out


def dot(u: Sequence, v: Sequence):
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    return Fraction(0) if isinstance(acc, int) and acc == 0 else acc


def quad(a: Matrix, v: Sequence):
    """v^T a v."""
    return dot(v, matvec(a, v))


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(len(r) == n for r in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


# -- reduced row echelon form ------------------------------------------------


def _is_zero(x) -> bool:
    return not x


def _clear_ratfunc_row(row):
    den = UniPoly([1])
    from ..scalarfield import poly_gcd

    for x in row:
        if not x.den.is_constant():
            g = poly_gcd(den, x.den)
            den = den * x.den.exact_div(g)
    return [(x.num * den.exact_div(x.den)) for x in row], den


def _fraction_free_gj(rows, exact_div):
    """Fraction-free Gauss-Jordan on a ring; returns rows and pivot columns."""
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    prev = None
    r = 0
    pivots = []
    for c in range(ncols):
        if r >= m:
            break
        piv = next((i for i in range(r, m) if not _is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(m):
            if i == r:
                continue
            a = rows[i][c]
            new = []
            for j in range(ncols):
                v = p * rows[i][j] - a * rows[r][j]
                if prev is not None and not _is_zero(v):
                    v = exact_div(v, prev)
                new.append(v)
            rows[i] = new
        prev = p
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Exact reduced row echelon form and pivot column list.

    RatFunc matrices go through fraction-free elimination on cleared
    polynomial rows, then get normalized by the pivots. Rational and other
    field entries use Gauss-Jordan that skips zero entries, which is much
    faster on the sparse coefficient matrices met here.
    """
    if not a:
        return [], []
    flat = [x for row in a for x in row]
    if not any(isinstance(x, RatFunc) for x in flat):
        return _plain_rref(a)
    if all(isinstance(x, (int, Fraction, RatFunc)) for x in flat):
        var = next(x.var for x in flat if isinstance(x, RatFunc))
        cleared = [
            _clear_ratfunc_row([x if isinstance(x, RatFunc) else RatFunc(x, var=var) for x in row])[0]
            for row in a
        ]
        try:
            rows, piv = _fraction_free_gj(cleared, lambda x, y: x.exact_div(y))
        except ArithmeticError:
            return _plain_rref(a)
        return _normalize_rows(rows, piv, lambda x, p: RatFunc(x, p, var=var)), piv
    return _plain_rref(a)


def _normalize_rows(rows, piv, divide):
    out = []
    for r, c in enumerate(piv):
        p = rows[r][c]
        out.append([divide(x, p) for x in rows[r]])
    ncols = len(rows[0])
    zero = out[0][0] * 0 if out else Fraction(0)
    for _ in range(len(rows) - len(piv)):
        out.append([zero] * ncols)
    return out


def _plain_rref(a: Matrix):
    rows = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in a]
    m, ncols = len(rows), len(rows[0])
    r = 0
    piv = []
    for c in range(ncols):
        if r >= m:
            break
        k = next((i for i in range(r, m) if not _is_zero(rows[i][c])), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        p = rows[r][c]
        pr = [x if _is_zero(x) else x / p for x in rows[r]]
        rows[r] = pr
        nz = [j for j, x in enumerate(pr) if not _is_zero(x)]
        for i in range(m):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                ri = rows[i]
                for j in nz:
                    ri[j] = ri[j] - f * pr[j]
        piv.append(c)
        r += 1
    return rows, piv


def rref_with_transform(a: Matrix) -> tuple[Matrix, list[int], Matrix]:
    """RREF R of a plus T with T a = R (run on the augmented [a | I])."""
    m = len(a)
    n = len(a[0]) if a else 0
    one = Fraction(1)
    aug = [list(row) + [one if i == j else Fraction(0) for j in range(m)] for i, row in enumerate(a)]
    rows, piv = rref(aug)
    r = [row[:n] for row in rows]
    t = [row[n:] for row in rows]
    piv = [c for c in piv if c < n]
    return r, piv, t


def rank(a: Matrix) -> int:
    return len(rref(a)[1]) if a and a[0] else 0


def null_space(a: Matrix) -> list[list]:
    """Basis of {v : a v = 0}, one vector per free column, from the RREF."""
    if not a:
        return []
    ncols = len(a[0])
    r, piv = rref(a)
    free = [c for c in range(ncols) if c not in piv]
    sample = next((x for row in r for x in row if x), Fraction(1))
    one = sample / sample
    zero = one - one
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, c in enumerate(piv):
            v[c] = -r[i][f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence) -> list | None:
    """One solution of a x = b, or None when inconsistent."""
    m = len(a)
    n = len(a[0]) if a else 0
    aug = [list(a[i]) + [b[i]] for i in range(m)]
    r, piv = rref(aug)
    if n in piv:
        return None
    sample = next((x for row in r for x in row if x), Fraction(1))
    zero = sample - sample
    x = [zero] * n
    for i, c in enumerate(piv):
        x[c] = r[i][n]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    r, piv, t = rref_with_transform(a)
    if len(piv) != n:
        raise ZeroDivisionError("matrix is singular")
    return t


# -- determinants over commutative rings ---------------------------------------


def _ring_div(x, y):
    if isinstance(x, MPoly):
        return x.exact_div(MPoly.coerce(y))
    if isinstance(x, UniPoly):
        return x.exact_div(y)
    return x / y


def det(a: Matrix):
    """Bareiss determinant; exact division keeps polynomial entries polynomial."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in a]
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            sw = next((i for i in range(k + 1, n) if not _is_zero(m[i][k])), None)
            if sw is None:
                return m[k][k] * 0 if not isinstance(m[k][k], int) else Fraction(0)
            m[k], m[sw] = m[sw], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                if prev is not None and not _is_zero(v):
                    v = _ring_div(v, prev)
                m[i][j] = v
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d
