import random
from fractions import Fraction as F

import pytest
from conftest import planted_darboux, small_fraction
from hypothesis import given
from hypothesis import strategies as st

from lfoode.budget import Deadline, Timeout
from lfoode.core import MPoly
from lfoode.darboux import _ansatz, cofactor_bound
from lfoode.parser import parse_foode, parse_poly
from lfoode.polysys import CapExceeded, CoeffSystem, SPoly, field_roots, groebner, solve_system


def system_of(names, build):
    n = len(names)
    gens = [SPoly.var(i, n) for i in range(n)]
    return CoeffSystem(tuple(names), build(*gens))


def test_two_branches():
    sys_ = system_of(["u", "v"], lambda u, v: [u * v - 1, u - v])
    got = [br.values() for br in solve_system(sys_)]
    assert got == [{"u": -1, "v": -1}, {"u": 1, "v": 1}]


def test_empty_system_leaves_everything_free():
    sys_ = CoeffSystem(("a", "b"), [])
    (br,) = solve_system(sys_)
    assert br.free == ("a", "b")


def test_inconsistent_system():
    sys_ = system_of(["u"], lambda u: [u * u + 1])
    assert solve_system(sys_) == []
    sys2 = system_of(["u", "v"], lambda u, v: [u - 1, u - 2 + v * 0])
    assert solve_system(sys2) == []


def test_linear_family_stays_symbolic():
    sys_ = system_of(["u", "v", "w"], lambda u, v, w: [u + v - 2, w])
    (br,) = solve_system(sys_)
    assert len(br.free) == 1 and br.check(sys_)
    (name,) = br.free
    vals = br.specialize({name: F(5)}).values()
    assert vals["u"] + vals["v"] == 2 and vals["w"] == 0 and vals[name] == 5


def test_kamke_i18_linear_ansatz():
    # degree-1 candidate with the y coefficient fixed to 1
    eq = parse_foode("dy/dx = y^2 + y*x + x - 1")
    system, pmons, gmons = _ansatz(eq, 1, 1, cofactor_bound(eq))
    found = []
    for br in solve_system(system):
        assert br.check(system)
        vals = br.values()
        p = MPoly({pmons[0]: 1, **{m: vals[f"a{m[0]}_{m[1]}"] for m in pmons[1:]}})
        g = MPoly({m: vals[f"g{m[0]}_{m[1]}"] for m in gmons})
        found.append((p, g))
    assert (parse_poly("y + 1"), parse_poly("y + x - 1")) in found


def test_cap():
    sys_ = CoeffSystem(tuple(f"u{i}" for i in range(5)), [])
    with pytest.raises(CapExceeded):
        solve_system(sys_, cap=4)


def test_deadline():
    eq = parse_foode("dy/dx = y^2*(y+x-1)/x^2")
    system, _, _ = _ansatz(eq, 2, 0, cofactor_bound(eq))
    with pytest.raises(Timeout):
        solve_system(system, deadline=Deadline(0.0))


def test_field_roots():
    # (t - 1/2)(t + 3)(t^2 + 1)
    coeffs = [F(-3, 2), F(5, 2), F(-1, 2), F(5, 2), F(1)]
    assert field_roots(coeffs) == [F(-3), F(1, 2)]
    assert field_roots([F(1), F(0), F(1)]) == []


def test_groebner_unit_ideal():
    sys_ = system_of(["u", "v"], lambda u, v: [u * v - 1, u, v])
    assert groebner([e.terms for e in sys_.equations]) == [{(0, 0): 1}]


def test_groebner_lex_elimination():
    # u^2 + v^2 - 5, u - v - 1: the last element is univariate in v
    sys_ = system_of(["u", "v"], lambda u, v: [u * u + v * v - 5, u - v - 1])
    G = groebner([e.terms for e in sys_.equations])
    assert all(e[0] == 0 for e in G[-1])
    assert sorted(field_roots([G[-1].get((0, k), 0) for k in range(3)])) == [-2, 1]


# --- properties ------------------------------------------------------------


@st.composite
def planted_system(draw):
    """Random quadratic equations vanishing at a planted rational point."""
    n = draw(st.integers(1, 4))
    point = [draw(small_fraction) for _ in range(n)]
    gens = [SPoly.var(i, n) for i in range(n)]
    eqs = []
    for _ in range(draw(st.integers(1, n + 1))):
        p = SPoly.const(F(0), n)
        for _ in range(draw(st.integers(1, 4))):
            i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
            kind = draw(st.integers(0, 2))
            term = gens[i] * gens[j] if kind == 2 else gens[i] if kind else SPoly.const(1, n)
            p = p + term * draw(small_fraction)
        eqs.append(p - p.evaluate(point))
    names = tuple(f"u{i}" for i in range(n))
    return CoeffSystem(names, eqs), dict(zip(names, point))


@given(planted_system())
def test_branches_are_sound(data):
    system, _ = data
    for br in solve_system(system, deadline=Deadline(30)):
        assert br.check(system)


@pytest.mark.parametrize("seed", range(12))
def test_planted_darboux_pair_is_a_branch(seed):
    eq, p, g = planted_darboux(random.Random(seed))
    deg = p.degree()
    top = [(i, deg - i) for i in range(deg, -1, -1)]
    lead = next(k for k, m in enumerate(top) if p.terms.get(m))
    p = p.scale(1 / p.terms[top[lead]])
    system, pmons, gmons = _ansatz(eq, deg, lead, cofactor_bound(eq))
    want = {f"a{m[0]}_{m[1]}": p.terms.get(m, 0) for m in pmons[1:]}
    want.update({f"g{m[0]}_{m[1]}": g.terms.get(m, 0) for m in gmons})
    hit = False
    for br in solve_system(system, deadline=Deadline(60)):
        assert br.check(system)
        # a family contains the planted point when its free unknowns take the planted values
        spec = br.specialize({k: want[k] for k in br.free})
        hit = hit or spec.values() == want
    assert hit
