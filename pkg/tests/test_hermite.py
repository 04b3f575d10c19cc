from fractions import Fraction as F

import pytest
from conftest import nonzero_fraction, small_fraction
from hypothesis import given
from hypothesis import strategies as st

from lfoode.core import MPoly, RatFunc, upoly
from lfoode.hermite import (
    AffineRational,
    NotRational,
    hermite_reduce,
    integrate_rational_part,
    rationality_constraints,
)
from lfoode.parser import parse_expr


def R(text, params=()):
    return parse_expr(text, params)


def test_inverse_square():
    res = hermite_reduce(R("1/x^2"))
    assert res.log_remainder.is_zero()
    assert integrate_rational_part(res) == R("-1/x")


def test_parametric_remainder():
    res = hermite_reduce(R("(x - 1 - c)/(x + 1)", ["c"]), ["c"])
    for c in (F(0), F(3), F(-7, 2)):
        assert res.log_remainder.specialize({"c": c}) == RatFunc(-(2 + c)) / R("x + 1")
        assert res.rational_part.specialize({"c": c}) == R("x")
    A, b = rationality_constraints(res)
    assert (A, b) == ([[-1]], [2])  # -c = 2


def test_kamke_i129_r0():
    res = hermite_reduce(R("(x - 1 - c)/(x + 1)", ["c"]), ["c"])
    assert integrate_rational_part(res, {"c": F(-2)}) == R("x")


def test_log_only():
    res = hermite_reduce(R("2*x/(x^2 + 1)"))
    assert not res.rational_part.specialize()
    assert res.log_remainder.specialize() == R("2*x/(x^2 + 1)")
    with pytest.raises(NotRational):
        integrate_rational_part(res)


def test_zero_remainder_has_no_constraints():
    assert rationality_constraints(hermite_reduce(R("1/x^2"))) == ([], [])


def test_coefficientwise_constraints():
    h = AffineRational("x", {None: [], "a": [F(0), F(1)], "b": [F(1)]}, [F(1), F(0), F(1)])
    res = hermite_reduce(h)
    A, b = rationality_constraints(res, ["a", "b"])
    assert sorted(map(tuple, A)) == [(0, 1), (1, 0)] and b == [0, 0]


def test_polynomial_integrand():
    res = hermite_reduce(R("3*y^2 + 1"))
    assert res.var == "y"
    assert integrate_rational_part(res) == R("y^3 + y")


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        hermite_reduce(AffineRational("x", {None: [F(1)]}, []))


# --- properties ------------------------------------------------------------

dense = st.lists(small_fraction, min_size=1, max_size=4)


@st.composite
def denominators(draw):
    """Products of small factors with multiplicities up to 3."""
    den = [F(1)]
    for _ in range(draw(st.integers(1, 3))):
        fac = draw(st.lists(small_fraction, min_size=2, max_size=3))
        if not fac[-1]:
            fac[-1] = F(1)
        den = upoly.mul(den, upoly.power(fac, draw(st.integers(1, 3))))
    return den


def X(coeffs):
    return MPoly.from_upoly(upoly.trim(list(coeffs)), "x")


@given(dense, denominators())
def test_planted_derivative_is_integrated(num, den):
    g = RatFunc(X(num), X(den))
    f = g.diff_x()
    res = hermite_reduce(f)
    assert res.log_remainder.is_zero()
    back = integrate_rational_part(res)
    assert back.diff_x() == f
    assert not (back - g).diff_x()


@given(dense, dense, denominators(), st.lists(small_fraction, min_size=10, max_size=10))
def test_reduction_identity_with_parameter(c0, c1, den, values):
    f = AffineRational("x", {None: upoly.trim(c0), "t": upoly.trim(c1)}, den)
    res = hermite_reduce(f)
    for v in values:
        g = res.rational_part.specialize({"t": v})
        h = res.log_remainder.specialize({"t": v})
        assert g.diff_x() + h == f.specialize({"t": v})


@given(dense, denominators())
def test_remainder_is_proper_and_squarefree(num, den):
    res = hermite_reduce(AffineRational("x", {None: upoly.trim(num)}, den))
    h = res.log_remainder
    hden = upoly.trim(list(h.den))
    assert len(upoly.trim(h.num[None])) < max(len(hden), 1) or not h.num[None]
    if len(hden) > 1:
        assert len(upoly.gcd(hden, upoly.derivative(hden))) == 1


@given(nonzero_fraction, st.integers(1, 4))
def test_power_of_linear(a, k):
    # d/dx (x - a)^-k = -k (x - a)^-(k+1)
    f = RatFunc(MPoly.const(-k), X([-a, F(1)]) ** (k + 1))
    res = hermite_reduce(f)
    assert integrate_rational_part(res) == RatFunc(MPoly.const(1), X([-a, F(1)]) ** k)
