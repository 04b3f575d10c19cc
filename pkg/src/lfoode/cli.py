"""Command-line driver: ``lfoode solve`` and ``lfoode corpus``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .core.foode import ZeroDenominatorError
from .parser import NonRationalError, OdeSyntaxError, parse_foode, parse_integrating_factor, render
from .solver import CASES, METHODS, AnsatzConfig, SolveConfig, equivalent, report_dict, solve, verify_integrating_factor

__all__ = ["METHODS", "build_parser", "main", "run_corpus", "run_entry", "run_single"]

EXIT_SOLVED = 0
EXIT_INPUT = 1
EXIT_NO_RESULT = 2
EXIT_TIMEOUT = 3
STATUS_EXIT = {"solved": EXIT_SOLVED, "no_result": EXIT_NO_RESULT, "timeout": EXIT_TIMEOUT}
INPUT_ERRORS = (OdeSyntaxError, NonRationalError, ZeroDenominatorError, ZeroDivisionError, ValueError)


def default_corpus_path():
    return resources.files("lfoode").joinpath("corpus/default.jsonl")


def _config(args, degree=None) -> SolveConfig:
    return SolveConfig(
        max_degree=degree if degree is not None else args.degree,
        case=getattr(args, "case", "auto"),
        timeout=args.timeout if args.timeout and args.timeout > 0 else None,
        ansatz=AnsatzConfig(getattr(args, "ansatz_mult", 2), getattr(args, "ansatz_slack", None)),
    )


def _human(eq, report) -> str:
    lines = [f"equation: {render(eq)}"]
    if report.status == "solved":
        lines.append(f"status:   solved by {report.method} at degree {report.degree}")
        lines.append(f"R:        {render(report.factor)}")
        lines.append("verified: yes")
        fi = report.first_integral
        if fi is not None:
            label = "F:       " if type(fi).__name__ == "ClosedForm" else "1-form:  "
            lines.append(f"{label} {fi.render()}")
        for method, R in report.alternates:
            lines.append(f"also:     {method}: {render(R)}")
    else:
        lines.append(f"status:   {report.status}")
        if report.message:
            lines.append(f"note:     {report.message}")
    if report.darboux_used:
        lines.append("darboux:")
        for pr in report.darboux_used:
            lines.append(f"  p = {render(pr.p)}    g = {render(pr.g)}")
    if report.timings:
        parts = ", ".join(f"{k} {v:.1f}" for k, v in sorted(report.timings.items()))
        lines.append(f"timings (ms): {parts}")
    return "\n".join(lines)


def run_single(args) -> int:
    try:
        eq = parse_foode(args.ode, args.param)
        config = _config(args)
    except INPUT_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = solve(eq, config)
    if args.json:
        print(json.dumps(report_dict(report, timings=not args.no_timings)))
    else:
        print(_human(eq, report))
    return STATUS_EXIT[report.status]


@dataclass
class EntryResult:
    line: int
    id: str
    passed: bool
    status: str
    method: str
    factor: str | None
    seconds: float
    reasons: list

    def as_dict(self):
        return {
            "line": self.line,
            "id": self.id,
            "passed": self.passed,
            "status": self.status,
            "method": self.method,
            "integrating_factor": self.factor,
            "seconds": round(self.seconds, 3),
            "reasons": self.reasons,
        }


def _load_entries(path):
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            raw = raw.strip()
            if not raw or raw.startswith("#"):
                continue
            try:
                entry = json.loads(raw)
                if not isinstance(entry, dict) or "ode" not in entry:
                    raise ValueError("entry needs an 'ode' field")
            except (json.JSONDecodeError, ValueError) as exc:
                entries.append((lineno, None, str(exc)))
                continue
            entries.append((lineno, entry, None))
    return entries


def run_entry(lineno, entry, degree, timeout) -> EntryResult:
    """Solve one corpus entry and compare it with its expectations."""
    eid = str(entry.get("id", f"line{lineno}"))
    params = entry.get("params") or []
    t0 = time.perf_counter()
    try:
        eq = parse_foode(entry["ode"], params)
        expected = parse_integrating_factor(entry["expect_R"], params) if entry.get("expect_R") else None
        deg = entry.get("max_degree") if degree is None else degree
        config = SolveConfig(max_degree=int(deg or 3), timeout=timeout, alternates=False)
    except INPUT_ERRORS as exc:
        return EntryResult(lineno, eid, False, "input_error", "none", None, 0.0, [f"{type(exc).__name__}: {exc}"])
    report = solve(eq, config)
    elapsed = time.perf_counter() - t0
    reasons = []
    want = entry.get("expect_method")
    if want and report.method != want:
        reasons.append(f"method {report.method} != expected {want}")
    if expected is not None:
        if not verify_integrating_factor(eq, expected):
            reasons.append("expected factor does not verify")
        if report.factor is None or not equivalent(report.factor, expected):
            reasons.append("integrating factor differs from expected")
    factor = render(report.factor) if report.factor is not None else None
    return EntryResult(lineno, eid, not reasons, report.status, report.method, factor, elapsed, reasons)


def _run_entry_args(item):
    return run_entry(*item)


def run_corpus(args) -> int:
    path = args.file or default_corpus_path()
    try:
        entries = _load_entries(path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    results = []
    work = []
    for lineno, entry, err in entries:
        if entry is None:
            results.append((lineno, EntryResult(lineno, f"line{lineno}", False, "malformed", "none", None, 0.0, [err])))
        else:
            work.append((lineno, entry, args.degree, args.timeout if args.timeout and args.timeout > 0 else None))
    if args.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            done = list(pool.map(_run_entry_args, work))
    else:
        done = [run_entry(*item) for item in work]
    results.extend((r.line, r) for r in done)
    results = [r for _, r in sorted(results, key=lambda t: t[0])]
    passed = sum(r.passed for r in results)
    if args.json:
        print(json.dumps({"entries": [r.as_dict() for r in results], "passed": passed, "total": len(results)}))
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            line = f"{mark}  {r.id:<24} {r.status:<10} {r.method:<15} {r.seconds:7.3f}s"
            if r.factor:
                line += f"  R = {r.factor}"
            print(line)
            for why in r.reasons:
                print(f"      line {r.line}: {why}")
        print(f"{passed}/{len(results)} pass")
    return 0 if passed == len(results) else EXIT_NO_RESULT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lfoode",
        description="Integrating factors exp(r0) * prod(p_i^c_i) for dy/dx = M/N with polynomial M, N.",
    )
    ap.add_argument("-v", "--verbose", action="store_true", help="log search details to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one equation")
    s.add_argument("ode", help='equation, e.g. "dy/dx = y^2 + y*x + x - 1"')
    s.add_argument("--degree", type=int, default=3, help="maximum Darboux degree (default 3)")
    s.add_argument("--case", choices=CASES, default="auto", help="restrict to one method")
    s.add_argument("--param", action="append", default=[], metavar="NAME", help="declare a rational parameter")
    s.add_argument("--json", action="store_true", help="print a JSON report")
    s.add_argument("--timeout", type=float, default=60.0, help="seconds; 0 disables (default 60)")
    s.add_argument("--ansatz-mult", type=int, default=2, help="denominator multiplicities for case xy")
    s.add_argument("--ansatz-slack", type=int, default=None, help="numerator degree slack for case xy")
    s.add_argument("--no-timings", action="store_true", help="omit timings for byte-stable JSON")
    s.set_defaults(func=run_single)

    c = sub.add_parser("corpus", help="run a JSON-lines corpus")
    c.add_argument("file", nargs="?", default=None, help="corpus file (default: the bundled corpus)")
    c.add_argument("--json", action="store_true", help="print a JSON summary")
    c.add_argument("--degree", type=int, default=None, help="override each entry's max_degree")
    c.add_argument("--timeout", type=float, default=60.0, help="seconds per entry; 0 disables")
    c.add_argument("--jobs", type=int, default=1, help="worker processes (output order is input order)")
    c.set_defaults(func=run_corpus)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
