"""The solve loop: Darboux search by increasing degree, then each method in turn."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..budget import Deadline, Timeout
from ..core.foode import FOODE
from ..darboux import DarbouxTimeout, iter_darboux
from .factor import IntegratingFactor, equivalent
from .integral import ClosedForm, Unevaluated, first_integral
from .methods import (
    AnsatzConfig,
    AnsatzExhausted,
    NoResult,
    classic_ps,
    liouvillian_case_x,
    liouvillian_case_xy,
    liouvillian_case_y,
    verify_integrating_factor,
)

METHODS = {
    "ps": "classic_ps",
    "x": "liouvillian_x",
    "y": "liouvillian_y",
    "xy": "liouvillian_xy",
}
CASES = ("auto",) + tuple(METHODS)


@dataclass(frozen=True)
class SolveConfig:
    """Search knobs; ``timeout`` is in seconds (``None`` for no limit)."""

    max_degree: int = 3
    case: str = "auto"
    timeout: float | None = 60.0
    ansatz: AnsatzConfig = AnsatzConfig()
    first_integral: bool = True
    cap: int = 30
    alternates: bool = True

    def __post_init__(self):
        if self.case not in CASES:
            raise ValueError(f"case must be one of {', '.join(CASES)}")
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")


@dataclass
class SolveReport:
    status: str
    method: str
    factor: IntegratingFactor | None = None
    first_integral: ClosedForm | Unevaluated | None = None
    darboux_used: list = field(default_factory=list)
    degree_bound: int = 0
    degree: int | None = None
    timings: dict = field(default_factory=dict)
    alternates: list = field(default_factory=list)
    message: str = ""

    @property
    def verified(self) -> bool:
        return self.factor is not None and self.status == "solved"


def _runner(name, ansatz):
    if name == "ps":
        return classic_ps
    if name == "x":
        return liouvillian_case_x
    if name == "y":
        return liouvillian_case_y
    return lambda eq, pairs: liouvillian_case_xy(eq, pairs, ansatz)


def solve(eq: FOODE, config: SolveConfig = SolveConfig()) -> SolveReport:
    """Find a verified integrating factor, cheapest method first.

    Degrees ``1..config.max_degree`` are tried in order; at each degree the
    methods run in the order classic PS, case x, case y, case xy and the
    first verified factor wins.  Other methods that also succeed at that
    degree with a different factor are recorded as alternates.
    """
    deadline = Deadline(config.timeout)
    order = list(METHODS) if config.case == "auto" else [config.case]
    timings = {}
    start = time.perf_counter()

    def tick(stage, t0):
        timings[stage] = timings.get(stage, 0.0) + (time.perf_counter() - t0) * 1000.0

    pairs = []
    message = ""
    gen = iter_darboux(eq, config.max_degree, deadline, config.cap)
    try:
        while True:
            t0 = time.perf_counter()
            try:
                deg, pairs = next(gen)
            except StopIteration:
                break
            finally:
                tick("darboux", t0)
            for idx, name in enumerate(order):
                deadline.check()
                t0 = time.perf_counter()
                try:
                    R = _runner(name, config.ansatz)(eq, pairs)
                except AnsatzExhausted as exc:
                    message = f"{exc}; consider raising --ansatz-mult or --ansatz-slack"
                    continue
                except NoResult as exc:
                    message = str(exc)
                    continue
                finally:
                    tick(METHODS[name], t0)
                t0 = time.perf_counter()
                ok = verify_integrating_factor(eq, R)
                tick("verify", t0)
                if not ok:  # methods verify already; this is the hard gate
                    continue
                report = SolveReport(
                    "solved", METHODS[name], R, None, pairs, config.max_degree, deg, timings
                )
                if config.alternates:
                    for other in order[idx + 1 :]:
                        t0 = time.perf_counter()
                        try:
                            R2 = _runner(other, config.ansatz)(eq, pairs)
                        except NoResult:
                            continue
                        finally:
                            tick(METHODS[other], t0)
                        if not equivalent(R, R2):
                            report.alternates.append((METHODS[other], R2))
                if config.first_integral:
                    t0 = time.perf_counter()
                    report.first_integral = first_integral(eq, R)
                    tick("first_integral", t0)
                tick("total", start)
                return report
    except DarbouxTimeout as exc:
        tick("total", start)
        return SolveReport(
            "timeout", "none", None, None, exc.pairs, config.max_degree, None, timings, [], str(exc)
        )
    except Timeout as exc:
        tick("total", start)
        return SolveReport("timeout", "none", None, None, pairs, config.max_degree, None, timings, [], str(exc))
    tick("total", start)
    return SolveReport(
        "no_result", "none", None, None, pairs, config.max_degree, config.max_degree, timings, [], message
    )


def report_dict(report: SolveReport, timings: bool = True) -> dict:
    """JSON-ready view of a report with keys in a fixed order."""
    from ..parser import render

    def factor_dict(R):
        return {
            "r0": render(R.r0, "json"),
            "factors": [{"poly": render(p, "json"), "exponent": render(c, "json")} for p, c in R.factors],
            "text": render(R, "json"),
        }

    out = {
        "status": report.status,
        "method": report.method,
        "integrating_factor": factor_dict(report.factor) if report.factor is not None else None,
        "verified": report.verified,
    }
    fi = report.first_integral
    if isinstance(fi, ClosedForm):
        out["first_integral"] = fi.render("json")
    elif isinstance(fi, Unevaluated):
        out["one_form"] = fi.render("json")
    out["darboux"] = [{"p": render(pr.p, "json"), "g": render(pr.g, "json")} for pr in report.darboux_used]
    out["degree_bound"] = report.degree_bound
    out["degree"] = report.degree
    out["alternates"] = [
        {"method": m, "integrating_factor": factor_dict(R)} for m, R in report.alternates
    ]
    if report.message and report.status != "solved":
        out["message"] = report.message
    out["timings_ms"] = (
        {k: round(v, 3) for k, v in sorted(report.timings.items())} if timings else {}
    )
    return out
