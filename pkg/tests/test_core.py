from fractions import Fraction

import pytest
import sympy as sp
from conftest import mpolys
from hypothesis import given
from hypothesis import strategies as st

import oracle
from lfoode.core import FOODE, MPoly, PoleError, RatFunc, X, Y, d_operator, divergence_source, eval_at, poly_gcd
from lfoode.core.field import ParamField
from lfoode.parser import parse_foode, parse_poly, render


def P(text):
    return parse_poly(text)


# --- rationals -------------------------------------------------------------


def test_rat_is_reduced_fraction():
    r = Fraction(6, -4)
    assert (r.numerator, r.denominator) == (-3, 2)
    assert Fraction(0, 5) == Fraction(0, 1) and Fraction(0, 5).denominator == 1


def test_coefficients_stay_exact():
    p = P("x/3 + 2*y")
    assert all(isinstance(c, Fraction) for c in p.terms.values())
    q, r = (p * P("x - 1")).divmod_glex(P("x - 1"))
    assert q == p and not r


# --- poly_gcd --------------------------------------------------------------


def test_gcd_common_factor():
    assert poly_gcd(P("x^2 - 1"), P("x - 1")) == P("x - 1")


def test_gcd_with_zero_is_normalized_input():
    p = P("-4*x^2*y + 6*y")
    assert poly_gcd(p, MPoly()) == p.normalize()
    assert poly_gcd(MPoly(), p) == p.normalize()
    assert poly_gcd(MPoly(), MPoly()) == MPoly()


def test_gcd_derived_against_trial_division():
    frozen = "x + 1"
    ours = render(poly_gcd(P("x*y + y"), P("x^2 - 1")))
    assert ours == frozen
    ref = oracle.trial_gcd_linear(oracle.to_sympy("x*y + y"), oracle.to_sympy("x^2 - 1"))
    assert sp.expand(ref - oracle.to_sympy(frozen)) == 0


@given(mpolys(), mpolys(), mpolys(nonzero=True))
def test_gcd_divides_both(a, b, c):
    a, b = a * c, b * c
    g = poly_gcd(a, b)
    if not a and not b:
        assert not g
        return
    assert g.divides(a) and g.divides(b)
    assert c.normalize().divides(g) or c.is_constant()


@given(mpolys())
def test_normalize_idempotent(p):
    assert p.normalize().normalize() == p.normalize()


def test_normalize_sign_and_content():
    assert P("-6*x^2 + 4*y").normalize() == P("3*x^2 - 2*y")
    assert P("x/2 + y/3").normalize() == P("3*x + 2*y")


def test_parametric_normalization_is_monic():
    b = ParamField("b").gen()
    p = MPoly({(1, 0): b, (0, 1): b * b})
    n = p.normalize()
    assert n.leading()[1] == 1


# --- the flow operator -----------------------------------------------------


def test_d_operator_kamke_129():
    eq = parse_foode("dy/dx = (x*y - y^2)/(x+1)")
    assert d_operator(eq, Y) == P("x*y - y^2")


def test_d_operator_constant():
    eq = parse_foode("dy/dx = (x*y - y^2)/(x+1)")
    assert not d_operator(eq, MPoly.const(7))


def test_d_operator_derived():
    frozen = "x^2 + y^3 + x*y^2 - y^2"
    eq = FOODE.from_pair(P("y^2*(y + x - 1)"), P("x^2"))
    assert d_operator(eq, X + Y) == P(frozen)
    m, n = oracle.to_sympy("y^2*(y + x - 1)"), oracle.to_sympy("x^2")
    ref = oracle.d_operator(m, n, oracle.x + oracle.y)
    assert sp.expand(ref - oracle.to_sympy(frozen)) == 0


@given(mpolys(2, 4), mpolys(2, 4), mpolys(2, 4), mpolys(2, 4, nonzero=True))
def test_d_operator_is_a_derivation(f, g, m, n):
    eq = FOODE(m, n)
    assert d_operator(eq, f * g) == f * d_operator(eq, g) + g * d_operator(eq, f)


def test_d_operator_on_ratfunc():
    eq = parse_foode("dy/dx = y/x")
    r = RatFunc(Y, X)
    assert d_operator(eq, r) == RatFunc(0)


# --- divergence ------------------------------------------------------------


def test_divergence_derived_129():
    frozen = "-(1 + x - 2*y)"
    eq = FOODE.from_pair(P("x*y - y^2"), P("x + 1"))
    assert divergence_source(eq) == P(frozen)
    ref = oracle.divergence_source(oracle.to_sympy("x*y - y^2"), oracle.to_sympy("x + 1"))
    assert sp.expand(ref - oracle.to_sympy(frozen)) == 0


def test_divergence_derived_kamke211():
    frozen = "-18*x^2*y"
    eq = FOODE.from_pair(P("3*x^2*y^2 + x^3 + 1"), P("4*(x^3 + 1)*y"))
    assert divergence_source(eq) == P(frozen)
    ref = oracle.divergence_source(oracle.to_sympy("3*x^2*y^2 + x^3 + 1"), oracle.to_sympy("4*(x^3 + 1)*y"))
    assert sp.expand(ref - oracle.to_sympy(frozen)) == 0


def test_divergence_constants():
    assert not divergence_source(FOODE.from_pair(MPoly.const(3), MPoly.const(2)))


@given(mpolys(3, 5), mpolys(3, 5, nonzero=True), st.randoms(use_true_random=False))
def test_divergence_matches_finite_differences(m, n, rnd):
    eq = FOODE(m, n)
    div = divergence_source(eq)
    h = 1e-5
    for _ in range(20):
        x0 = Fraction(rnd.randint(-20, 20), rnd.randint(1, 8))
        y0 = Fraction(rnd.randint(-20, 20), rnd.randint(1, 8))
        fx, fy = float(x0), float(y0)
        nx = (float(n.evaluate(Fraction(fx + h), y0)) - float(n.evaluate(Fraction(fx - h), y0))) / (2 * h)
        my = (float(m.evaluate(x0, Fraction(fy + h))) - float(m.evaluate(x0, Fraction(fy - h)))) / (2 * h)
        exact = float(div.evaluate(x0, y0))
        scale = 1.0 + abs(nx) + abs(my)
        # central differences: truncation O(h^2 f'''), rounding O(eps/h)
        assert abs(-(nx + my) - exact) <= 1e-5 * scale


# --- evaluation ------------------------------------------------------------


def test_eval_at_polynomial():
    assert eval_at(P("x^2 + y"), 2, 3) == 7
    assert eval_at(P("x^3 + 1"), 1, 5) == 2


def test_eval_at_pole():
    with pytest.raises(PoleError):
        eval_at(RatFunc(X, Y), 1, 0)


# --- rational functions ----------------------------------------------------


def test_ratfunc_lowest_terms():
    r = RatFunc(P("x^2 - 1"), P("2*x - 2"))
    assert r.num == P("x/2 + 1/2") and r.den == MPoly.const(1)
    s = RatFunc(P("y"), P("-2*x*y"))
    assert s.den == X and s.num == MPoly.const(Fraction(-1, 2))


@given(mpolys(2, 3), mpolys(2, 3, nonzero=True), mpolys(2, 3), mpolys(2, 3, nonzero=True))
def test_ratfunc_field_identities(a, b, c, d):
    r, s = RatFunc(a, b), RatFunc(c, d)
    assert (r + s) - s == r
    assert r * s == s * r
    if s:
        assert (r * s) / s == r
    assert (r * s).diff_x() == r.diff_x() * s + r * s.diff_x()


def test_foode_joint_normalization():
    eq = parse_foode("dy/dx = (3*x^2*y^2 + x^3 + 1)/(4*(x+1)*(x^2-x+1)*y)")
    assert eq.m == P("3*x^2*y^2 + x^3 + 1")
    assert eq.n == P("4*x^3*y + 4*y")
    eq2 = FOODE.from_pair(P("2*x*y - 2*y^2"), P("2*x + 2"))
    assert eq2 == parse_foode("dy/dx = (x*y - y^2)/(x+1)")
