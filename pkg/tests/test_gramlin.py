from fractions import Fraction as F

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gramcert.forms import cone_quartic, f_rho, sos_expand
from gramcert.gramlin import (
    DecompositionError,
    RepMatrix,
    change_basis,
    change_count,
    decompose_into_changes,
    det,
    gram_from_sos,
    matrix_null_space,
    pair_classes,
    psd_check_exact,
    rank,
    rep_to_form,
    rref,
    sos_from_gram,
)
from gramcert.symtensor import enumerate_basis, rankone_coords

ints = st.integers(-3, 3)


@st.composite
def sym_matrices(draw, n=None):
    n = n or draw(st.integers(1, 5))
    m = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = F(draw(ints))
    return m


@st.composite
def gram_products(draw):
    """L^T L, psd by construction, often singular."""
    n = draw(st.integers(1, 5))
    r = draw(st.integers(1, n))
    L = [[draw(ints) for _ in range(n)] for _ in range(r)]
    return [[F(sum(L[k][i] * L[k][j] for k in range(r))) for j in range(n)] for i in range(n)]


def min_eig(m):
    return np.linalg.eigvalsh(np.array(m, dtype=float)).min()


@settings(max_examples=150)
@given(st.one_of(sym_matrices(), gram_products()))
def test_psd_check_matches_eigenvalues(m):
    cert = psd_check_exact(m)
    assert cert.verify(m)
    lam = min_eig(m)
    if lam < -1e-9:
        assert not cert.accepted
    elif lam > 1e-9:
        assert cert.accepted and cert.positive_definite
    # near-zero eigenvalues: the exact answer must agree with sympy
    else:
        sm = sympy.Matrix(m)
        assert cert.accepted == sm.is_positive_semidefinite


@settings(max_examples=100)
@given(sym_matrices())
def test_rref_and_rank_match_sympy(m):
    r, piv = rref(m)
    sr, spiv = sympy.Matrix(m).rref()
    assert tuple(piv) == spiv
    assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in r] == sr.tolist()
    assert rank(m) == len(spiv)
    assert det(m) == sympy.Matrix(m).det()


@given(gram_products())
def test_null_space_is_kernel(m):
    null = matrix_null_space(m)
    assert len(null) == len(m) - rank(m)
    for v in null:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)])
def test_change_basis_elements_represent_zero(n, p):
    basis = change_basis(n, p)
    assert len(basis) == change_count(n, p)
    for d in basis:
        assert rep_to_form(d).is_zero()
        assert not d.is_zero()


def test_pair_classes_cover_upper_triangle():
    o = enumerate_basis(3, 2)
    seen = [ij for _, pairs in pair_classes(o) for ij in pairs]
    assert sorted(seen) == [(i, j) for i in range(6) for j in range(i, 6)]


@pytest.mark.parametrize("e", [cone_quartic(F(1, 2)), f_rho(F(1, 5))], ids=["quartic", "sextic"])
def test_gram_roundtrip(e):
    g = gram_from_sos(e)
    assert psd_check_exact(g).accepted
    assert rep_to_form(g) == sos_expand(e)
    assert sos_expand(sos_from_gram(g)) == sos_expand(e)


def test_pairing_with_rank_one_is_evaluation():
    e = cone_quartic(F(1, 2))
    g = gram_from_sos(e)
    x = [F(1), F(-2), F(3), F(1, 2)]
    t = rankone_coords(x, 2, g.order)
    f = sos_expand(e)
    val = sum(f.coefficient(a) * np.prod([F(c) ** k for c, k in zip(x, a)]) for a in f.support())
    assert g.pair(t, t) == val


def test_decompose_into_changes():
    g = gram_from_sos(cone_quartic(F(1, 2)))
    basis = change_basis(4, 2)
    coeffs = [F(k % 3 - 1, 7) for k in range(len(basis))]
    h = g + basis.combine(coeffs)
    assert decompose_into_changes(g, h) == coeffs
    other = g + RepMatrix.sym_pair(g.order, (2, 0, 0, 0), (2, 0, 0, 0))
    with pytest.raises(DecompositionError) as err:
        decompose_into_changes(g, other)
    assert err.value.monomial.label() == "4000"


def test_refutation_vector_is_negative():
    m = [[F(1), F(2)], [F(2), F(1)]]
    cert = psd_check_exact(m)
    v = cert.refutation
    assert sum(m[i][j] * v[i] * v[j] for i in range(2) for j in range(2)) < 0


def test_integer_input_stays_exact():
    r, piv = rref([[2, 1], [1, 3]])
    assert piv == [0, 1] and all(isinstance(x, F) for row in r for x in row)
    assert det([[2, 1], [1, 3]]) == 5
