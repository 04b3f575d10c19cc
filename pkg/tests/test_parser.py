from fractions import Fraction

import pytest
from conftest import mpolys, nonzero_fraction
from hypothesis import given
from hypothesis import strategies as st

from lfoode.core import FOODE, MPoly, RatFunc
from lfoode.core.field import ParamField
from lfoode.core.foode import ZeroDenominatorError
from lfoode.parser import (
    NonRationalError,
    OdeSyntaxError,
    parse_expr,
    parse_foode,
    parse_integrating_factor,
    parse_poly,
    render,
)
from lfoode.solver import IntegratingFactor

DECLARED = (OdeSyntaxError, NonRationalError, ZeroDenominatorError)


def test_parse_kamke211():
    eq = parse_foode("dy/dx = (3*x^2*y^2 + x^3 + 1)/(4*(x+1)*(x^2-x+1)*y)")
    assert eq.m == parse_poly("3*x^2*y^2 + x^3 + 1")
    assert eq.n == parse_poly("4*x^3*y + 4*y")


def test_parse_kamke_i18():
    eq = parse_foode("dy/dx = y^2 + y*x + x - 1")
    assert eq.m == parse_poly("y^2 + x*y + x - 1")
    assert eq.n == MPoly.const(1)


def test_implicit_form_matches_explicit():
    a = parse_foode("x^2*dy/dx - y^2*(y + x - 1) = 0")
    assert a == parse_foode("dy/dx = y^2*(y+x-1)/x^2")


def test_zero_denominator():
    with pytest.raises(ZeroDenominatorError):
        parse_foode("dy/dx = 1/0")
    with pytest.raises(ZeroDenominatorError):
        parse_foode("dy/dx = x/(y - y)")


def test_syntax_error_reports_position():
    with pytest.raises(OdeSyntaxError) as info:
        parse_foode("dy/dx = (x")
    assert info.value.position == 10
    assert "position 10" in str(info.value)


@pytest.mark.parametrize(
    "text",
    ["dy/dx = sin(x)", "dy/dx = 1.5*x", "dy/dx = x^-1", "dy/dx = b*y", "(dy/dx)^2 = x"],
)
def test_outside_grammar(text):
    with pytest.raises(NonRationalError):
        parse_foode(text)


def test_missing_derivative():
    with pytest.raises(OdeSyntaxError):
        parse_foode("x = y")


def test_parameter_declared():
    eq = parse_foode("dy/dx = b*y", ["b"])
    b = ParamField("b").gen()
    assert eq.m == MPoly({(0, 1): b}) and eq.n == MPoly.const(1)
    eq2 = parse_foode("dy/dx = (b*y + x)/(2*b)", ["b"])
    assert render(eq2) == "dy/dx = 1/2/b*x + 1/2*y"


def test_render_poly():
    assert render(parse_poly("x^3 + 1")) == "x^3 + 1"
    assert render(MPoly()) == "0"


def test_render_factor():
    x1 = parse_poly("x + 1")
    R = IntegratingFactor.build(RatFunc(parse_poly("x")), [(parse_poly("y"), -2), (x1, -2)])
    assert render(R) == "exp(x) * y^-2 * (x + 1)^-2"
    assert render(R, "json") == "exp(x)*y^-2*(x+1)^-2"


def test_render_fractional_exponent():
    R = parse_integrating_factor("(x^3 + 1)^(-3/2)")
    assert R.factors[0][1] == Fraction(-3, 2)
    assert parse_integrating_factor(render(R)) == R


def test_render_rejects_unknown_style():
    with pytest.raises(ValueError):
        render(MPoly(), "latex")


# --- round trips -----------------------------------------------------------

styles = st.sampled_from(["plain", "json"])


@given(mpolys(4, 6), styles)
def test_poly_round_trip(p, style):
    assert parse_poly(render(p, style)) == p


@given(mpolys(3, 4), mpolys(3, 4, nonzero=True), styles)
def test_ratfunc_round_trip(a, b, style):
    r = RatFunc(a, b)
    assert parse_expr(render(r, style)) == r


@given(mpolys(3, 4), mpolys(3, 4, nonzero=True), styles)
def test_foode_round_trip(m, n, style):
    eq = FOODE.from_pair(m, n)
    assert parse_foode(render(eq, style)) == eq


@given(
    mpolys(2, 3),
    mpolys(2, 3, nonzero=True),
    st.lists(st.tuples(mpolys(2, 3, nonzero=True), nonzero_fraction), max_size=3),
    styles,
)
def test_factor_round_trip(a, b, factors, style):
    R = IntegratingFactor.build(RatFunc(a, b), factors)
    assert parse_integrating_factor(render(R, style)) == R


@given(st.integers(-5, 5), st.integers(1, 5), st.integers(-3, 3).filter(bool), styles)
def test_param_round_trip(p, q, k, style):
    b = ParamField("b").gen()
    c = Fraction(p, q) * b**2 + Fraction(k) / b if k > 0 else Fraction(p, q) + b / k
    poly = MPoly({(1, 0): c, (0, 2): b})
    assert parse_poly(render(poly, style), ["b"]) == poly


# --- totality --------------------------------------------------------------

TOKENS = ["x", "y", "1", "23", "dy/dx", "+", "-", "*", "/", "^", "(", ")", "=", " ", "b", "0", "2", "sin", ".5"]


@given(st.lists(st.sampled_from(TOKENS), max_size=14))
def test_parser_is_total(parts):
    text = "".join(parts)
    for fn in (parse_foode, parse_expr, parse_integrating_factor):
        try:
            fn(text)
        except DECLARED:
            pass


@given(st.text(max_size=20))
def test_parser_is_total_on_arbitrary_text(text):
    try:
        parse_foode(text)
    except DECLARED:
        pass
