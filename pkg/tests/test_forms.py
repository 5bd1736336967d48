from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gramcert.forms import (
    Form,
    FormSyntaxError,
    SosExpression,
    build_named,
    cone_quartic,
    eval_at,
    even_substitute,
    f_rho,
    noncoercive_quartic,
    parse_form,
    parse_form_lines,
    q_eta,
    s_eta,
    sos_expand,
)

X, Y, Z = sympy.symbols("x y z")


def to_sympy(f: Form):
    syms = sympy.symbols(" ".join(f.varnames))
    syms = syms if isinstance(syms, tuple) else (syms,)
    out = 0
    for a in f.support():
        c = f.coefficient(a)
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, a):
            term *= s**e
        out += term
    return sympy.expand(out)


coeff = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@st.composite
def quadratics(draw):
    cs = [draw(coeff) for _ in range(6)]
    names = ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]
    text = " + ".join(f"({c})*{m}" for c, m in zip(cs, names))
    return text, cs


@settings(max_examples=40)
@given(st.lists(quadratics(), min_size=1, max_size=3))
def test_sos_expand_matches_sympy(items):
    forms = [parse_form(t, ["x", "y", "z"]) for t, _ in items]
    e = SosExpression.unit(forms)
    want = sympy.expand(sum(sympy.sympify(t.replace("^", "**")) ** 2 for t, _ in items))
    assert to_sympy(sos_expand(e)) == want


def test_parse_orders_variables_and_reports_mixed_degree():
    f = parse_form("z^3 + 3/2*x^2*y")
    assert f.varnames == ("x", "y", "z")
    with pytest.raises(FormSyntaxError, match="mixed degrees"):
        parse_form("x^2 + y")
    with pytest.raises(FormSyntaxError, match="unknown"):
        parse_form("x^2 + q^2", ["x"])
    with pytest.raises(FormSyntaxError):
        parse_form("x^^2")


def test_form_file_lines_with_params():
    forms = parse_form_lines(["# comment", "vars: a, b", "params: g=1/3", "a^2 - g*b^2  # tail"])
    assert len(forms) == 1
    assert forms[0].coefficient((0, 2)) == F(-1, 3)


def test_symbolic_parameter_gives_ratfunc_coefficients():
    f = parse_form("a^2 - g*b^2", ["a", "b"], {"g": None})
    c = f.coefficient((0, 2))
    assert c(F(1, 2)) == F(-1, 2)


def test_eval_at_complex_point():
    from gramcert.scalarfield import GaussRat

    i = GaussRat.i()
    assert eval_at(parse_form("x^2 + y^2"), [1, i]) == 0


def test_even_substitute_recovers_composition():
    f = parse_form("x^4 + x^2*y^2", ["x", "y", "z"])
    g = even_substitute(f, 0, parse_form("x^2 + z^2", ["x", "y", "z"]))
    assert to_sympy(g) == sympy.expand((X**2 + Z**2) ** 2 + (X**2 + Z**2) * Y**2)
    with pytest.raises(ValueError):
        even_substitute(parse_form("x*y", ["x", "y", "z"]), 0, parse_form("x^2", ["x", "y", "z"]))


def test_named_forms_are_consistent():
    assert sos_expand(cone_quartic(F(1, 2))).n == 4
    assert len(noncoercive_quartic(F(1, 9))) == 5
    # at eta = 0 the sextic family member has the q-type structure
    assert s_eta(F(0)).degree == 6 and q_eta(F(0)).degree == 4
    assert build_named("f_rho", rho=F(-1)).squares == f_rho(F(-1)).squares
    with pytest.raises(ValueError):
        build_named("nope")


def test_form_algebra():
    a = parse_form("x^2 + y^2", ["x", "y"])
    b = parse_form("x*y", ["x", "y"])
    assert (a + b) - b == a
    assert a * b == parse_form("x^3*y + x*y^3", ["x", "y"])
    assert (b**2).coefficient((2, 2)) == 1
