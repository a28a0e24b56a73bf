"""Series antiderivatives on (0, 2) by Maclaurin Integration."""

from .engine import (
    ConditionReport, EvalReport, TruncationParams, antiderivative_at, check_conditions,
    definite, partial_sum_trace, tail_magnitude,
)
from .errors import (
    ConvergenceError, DomainError, MacintError, ParseError, SingularityError,
    UnknownIdentifierError,
)
from .expr import Expr, evaluate, format_expr, parse
from .oracle import QuadResult, euler_gamma_const, gamma_weierstrass, quad, reference_corpus
from .taylor import TaylorJet, derivatives_of_xf, jet_of
from .weights import WeightTable, build_weights, inner_series_scaled, tail_bound

__all__ = [
    "ConditionReport", "ConvergenceError", "DomainError", "EvalReport", "Expr",
    "MacintError", "ParseError", "QuadResult", "SingularityError", "TaylorJet",
    "TruncationParams", "UnknownIdentifierError", "WeightTable", "antiderivative_at",
    "build_weights", "check_conditions", "definite", "derivatives_of_xf",
    "euler_gamma_const", "evaluate", "format_expr", "gamma_weierstrass",
    "inner_series_scaled", "jet_of", "parse", "partial_sum_trace", "quad",
    "reference_corpus", "tail_bound", "tail_magnitude",
]
