import copy
import json
import os
import subprocess
import sys

import pytest
from conftest import small_fraction
from hypothesis import given
from hypothesis import strategies as st

from lfoode import _kernels_py, kernels

compiled = pytest.importorskip("lfoode._kernels", reason="compiled extension not built")


def terms(nvars, max_exp=3, max_size=6):
    key = st.tuples(*[st.integers(0, max_exp)] * nvars)
    return st.dictionaries(key, small_fraction.filter(bool), max_size=max_size)


def test_backend_selected():
    assert kernels.BACKEND == "cython"


@given(terms(2), terms(2))
def test_mul2(a, b):
    assert compiled.mul2(a, b) == _kernels_py.mul2(a, b)


@given(terms(4), terms(4))
def test_muln(a, b):
    assert compiled.muln(a, b) == _kernels_py.muln(a, b)


@given(terms(3), small_fraction, terms(3), st.none() | st.tuples(*[st.integers(0, 2)] * 3))
def test_axpy(a, c, b, shift):
    assert compiled.axpy(a, c, b, shift) == _kernels_py.axpy(a, c, b, shift)


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_bareiss(m, n, data):
    rows = [[data.draw(st.integers(-9, 9)) for _ in range(n)] for _ in range(m)]
    r1, r2 = copy.deepcopy(rows), copy.deepcopy(rows)
    assert compiled.bareiss(r1, n) == _kernels_py.bareiss(r2, n)
    assert r1 == r2


def test_pure_python_fallback_agrees():
    """The whole pipeline gives the same report with the fallback forced."""
    code = (
        "import json\n"
        "from lfoode import kernels\n"
        "from lfoode.parser import parse_foode\n"
        "from lfoode.solver import solve, report_dict\n"
        "r = solve(parse_foode('dy/dx = y^2*(y+x-1)/x^2'))\n"
        "print(json.dumps([kernels.BACKEND, report_dict(r, timings=False)]))\n"
    )
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, LFOODE_PURE_PYTHON=flag)
        proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
        out[flag] = json.loads(proc.stdout)
    assert out["0"][0] == "cython" and out["1"][0] == "python"
    assert out["0"][1] == out["1"][1]
