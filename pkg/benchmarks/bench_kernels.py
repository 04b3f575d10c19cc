"""Compare the compiled kernels with the pure-Python fallback.

Each backend runs in its own subprocess because the choice is made at
import time.  Usage::

    python benchmarks/bench_kernels.py [--repeat N] [--json]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, random, sys, time
from fractions import Fraction
from lfoode import kernels
from lfoode.cli import default_corpus_path, run_entry, _load_entries

repeat = int(sys.argv[1])
rng = random.Random(7)

def rpoly(n, deg):
    return {(rng.randint(0, deg), rng.randint(0, deg)): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)}

def rpolyn(n, nv, deg):
    return {tuple(rng.randint(0, deg) for _ in range(nv)): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)}

def best(fn):
    out = []
    for _ in range(repeat):
        t = time.perf_counter(); fn(); out.append(time.perf_counter() - t)
    return min(out) * 1000.0

a, b = rpoly(40, 8), rpoly(40, 8)
an, bn = rpolyn(30, 8, 2), rpolyn(30, 8, 2)
rows = [[rng.randint(-20, 20) for _ in range(25)] for _ in range(24)]
res = {
    "backend": kernels.BACKEND,
    "mul2 (40x40 terms) x200": best(lambda: [kernels.mul2(a, b) for _ in range(200)]),
    "muln (30x30, 8 vars) x200": best(lambda: [kernels.muln(an, bn) for _ in range(200)]),
    "axpy (30 terms) x2000": best(lambda: [kernels.axpy(an, Fraction(3, 2), bn, (1,) * 8) for _ in range(2000)]),
    "bareiss 24x25 ints x20": best(lambda: [kernels.bareiss([list(r) for r in rows], 25) for _ in range(20)]),
}
entries = [(ln, e) for ln, e, err in _load_entries(default_corpus_path()) if e is not None]
def corpus():
    for ln, e in entries:
        run_entry(ln, e, 3, None)
res["bundled corpus, degree 3"] = best(corpus)
print(json.dumps(res))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if pure:
        env["LFOODE_PURE_PYTHON"] = "1"
    else:
        env.pop("LFOODE_PURE_PYTHON", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)], env=env, check=True, capture_output=True, text=True
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="best-of repetitions (default 3)")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if args.json:
        print(json.dumps({"compiled": fast, "python": slow}))
        return 0
    if fast["backend"] != "cython":
        print("note: compiled kernels are not built; both columns use pure Python")
    print(f"{'benchmark':<30} {'compiled ms':>12} {'python ms':>12} {'speedup':>8}")
    for key in fast:
        if key == "backend":
            continue
        f, s = fast[key], slow[key]
        print(f"{key:<30} {f:12.2f} {s:12.2f} {s / f:8.2f}x")
    print(f"(wall time {time.perf_counter() - t0:.1f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
