"""Integrating factors ``R = exp(r0) * prod(p_i ** c_i)`` and the solve driver."""

from .driver import CASES, METHODS, SolveConfig, SolveReport, report_dict, solve
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

__all__ = [
    "CASES",
    "METHODS",
    "ClosedForm",
    "SolveConfig",
    "SolveReport",
    "Unevaluated",
    "first_integral",
    "report_dict",
    "solve",
    "AnsatzConfig",
    "AnsatzExhausted",
    "IntegratingFactor",
    "NoResult",
    "classic_ps",
    "equivalent",
    "liouvillian_case_x",
    "liouvillian_case_xy",
    "liouvillian_case_y",
    "verify_integrating_factor",
]
