import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from lfoode.core import FOODE, MPoly, d_operator, poly_gcd  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_fraction = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)
nonzero_fraction = small_fraction.filter(bool)


@st.composite
def mpolys(draw, max_deg=3, max_terms=5, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    terms = {}
    for _ in range(n):
        i = draw(st.integers(0, max_deg))
        j = draw(st.integers(0, max_deg - i))
        terms[(i, j)] = draw(nonzero_fraction)
    p = MPoly(terms)
    if nonzero and not p:
        p = MPoly.const(1)
    return p


def planted_darboux(rnd, degrees=(1, 2), irreducible=False):
    """``(eq, p, g)`` with ``D[p] = g p`` by construction.

    ``N = a p + h p_y`` and ``M = b p - h p_x`` give ``D[p] = (a p_x + b p_y) p``
    for any ``a, b, h``; samples where ``M`` and ``N`` share a factor are redrawn.
    """

    def rpoly(deg, terms):
        t = {}
        for _ in range(terms):
            i = rnd.randint(0, deg)
            t[(i, rnd.randint(0, deg - i))] = Fraction(rnd.randint(-3, 3))
        return MPoly(t)

    while True:
        p = rpoly(rnd.choice(degrees), 4)
        if p.degree() < 1:
            continue
        if irreducible:
            import oracle

            if not oracle.is_irreducible(p):
                continue
        a, b, h = rpoly(1, 3), rpoly(1, 3), rpoly(1, 2)
        n = a * p + h * p.diff_y()
        m = b * p - h * p.diff_x()
        if not n or not m or not poly_gcd(m, n).is_constant():
            continue
        eq = FOODE.from_pair(m, n)
        g, r = d_operator(eq, p).divmod_glex(p)
        assert not r
        return eq, p, g


ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion outcome for the end-of-run summary."""

    def record(number, title, passed, detail=""):
        ACCEPTANCE.append((number, title, passed, detail))
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE, key=lambda t: t[0]):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
