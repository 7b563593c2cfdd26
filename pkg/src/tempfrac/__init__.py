"""Tempered fractional calculus: operators, closed forms, Mellin transforms and identity checks."""

from .errors import (
    CostExceeded,
    DomainError,
    EvalError,
    MonotonicityError,
    NonConvergent,
    ParseError,
    PoleError,
    PositivityError,
    RegularityError,
    SynchronyError,
    TfcError,
)
from .expr import compile as compile_expr
from .expr import parse, to_text
from .functions import FunctionHandle, Interval, Regularity, as_handle, constant, power
from .operators import (
    FracParams,
    GpfParams,
    gpf_derivative,
    gpf_integral,
    rl_derivative,
    rl_integral,
    tempered_derivative,
    tempered_integral,
)
from .quadrature import DEFAULT_SPEC, EvalReport, QuadratureSpec, effort_budget
from .records import SignConvention, TheoremId, VerificationRecord
from .specfun import DEFAULT_SERIES, SeriesSpec

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SERIES", "DEFAULT_SPEC", "CostExceeded", "DomainError", "EvalError", "EvalReport",
    "FracParams", "FunctionHandle", "GpfParams", "Interval", "MonotonicityError", "NonConvergent",
    "ParseError", "PoleError", "PositivityError", "QuadratureSpec", "Regularity", "RegularityError",
    "SeriesSpec", "SignConvention", "SynchronyError", "TfcError", "TheoremId", "VerificationRecord",
    "as_handle", "compile_expr", "constant", "effort_budget", "gpf_derivative", "gpf_integral",
    "parse", "power", "rl_derivative", "rl_integral", "tempered_derivative", "tempered_integral",
    "to_text",
]
