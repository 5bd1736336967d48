import itertools
from fractions import Fraction as F
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gramcert.scalarfield import GaussRat
from gramcert.symtensor import (
    MultiIndex,
    SymCoords,
    basis_from_monomials,
    basis_inner,
    complex_rankone_parts,
    dim_sym,
    enumerate_basis,
    monomial_exponents,
    multi_indices,
    rankone_coords,
    raw_components,
    tensor_eval,
)

np_pairs = st.tuples(st.integers(1, 4), st.integers(1, 4))
rats = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(np_pairs)
def test_dimension_and_enumeration(np_):
    n, p = np_
    idx = multi_indices(n, p)
    assert len(idx) == dim_sym(n, p) == comb(n + p - 1, p)
    assert len(set(idx)) == len(idx)
    assert all(a.order == p and a.n == n for a in idx)
    assert idx[0] == MultiIndex([p] + [0] * (n - 1))


def test_graded_lex_order():
    assert enumerate_basis(3, 2).labels() == ["200", "110", "101", "020", "011", "002"]


def test_weights_are_multinomial_reciprocals():
    o = enumerate_basis(3, 3)
    for a, w in zip(o, o.weights()):
        assert w == F(a.factorial(), factorial(3))


def test_parse_and_label():
    assert MultiIndex.parse("2,0,1") == MultiIndex([2, 0, 1])
    assert MultiIndex.parse("201").label() == "201"
    assert monomial_exponents("w^2*x", ["w", "x", "y"]) == MultiIndex([2, 1, 0])
    with pytest.raises(ValueError):
        MultiIndex([1, -1])


def test_basis_from_monomials():
    o = basis_from_monomials(["y^2", "x*y", "x^2"], ["x", "y"])
    assert o.labels() == ["02", "11", "20"]


@pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_basis_inner_matches_raw_tensor_dot(n, p):
    idx = multi_indices(n, p)
    for a, b in itertools.product(idx, idx):
        ra, rb = raw_components(a), raw_components(b)
        brute = sum(c * rb.get(w, 0) for w, c in ra.items())
        assert basis_inner(a, b) == brute


@given(st.lists(rats, min_size=3, max_size=3), st.lists(rats, min_size=3, max_size=3))
def test_rankone_pairing_is_power_of_dot(x, y):
    o = enumerate_basis(3, 3)
    tx, ty = rankone_coords(x, 3, o), rankone_coords(y, 3, o)
    assert tx.dot(ty) == sum(a * b for a, b in zip(x, y)) ** 3


@given(st.lists(rats, min_size=3, max_size=3))
def test_rankone_monomial_vector(x):
    o = enumerate_basis(3, 2)
    t = rankone_coords(x, 2, o)
    assert t.monomial_vector() == [tensor_eval(a, x) for a in o]


def test_complex_parts_recombine():
    o = enumerate_basis(2, 2)
    z = [GaussRat(F(1), F(0)), GaussRat(F(0), F(1))]
    r, q = complex_rankone_parts(z, 2, o)
    # (1, i)^2 -> x^2, 2xy*i, -y^2
    assert r.coords == (F(1), F(0), F(-1))
    assert q.coords == (F(0), F(2), F(0))


def test_symcoords_algebra():
    o = enumerate_basis(2, 2)
    e = SymCoords.basis(o, (2, 0))
    f = SymCoords.basis(o, (1, 1), F(3))
    assert (e + f - f) == e
    assert (-e).scale(F(-1)) == e
    assert SymCoords.zero(o).is_zero()
    assert str(e + f) == "1*E20 + 3*E11"
