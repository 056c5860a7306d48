"""Floating-point oracle: bitangents and flexes of explicit curves by multistart Newton."""

from .curve import PlaneCurve, parse_curve
from .solver import (
    FlexPoint,
    LineFrame,
    NonGenericCurveError,
    SolverConfig,
    TangencySolution,
    find_bitangents,
    find_flexes,
    realness,
    restrict_to_line,
    solve_bitangents,
    solve_flexes,
)

__all__ = [
    "BitangentFinder",
    "FlexFinder",
    "FlexPoint",
    "LineFrame",
    "NonGenericCurveError",
    "PlaneCurve",
    "SolverConfig",
    "TangencySolution",
    "find_bitangents",
    "find_flexes",
    "parse_curve",
    "realness",
    "restrict_to_line",
    "solve_bitangents",
    "solve_flexes",
]


def __getattr__(name):
    # scikit-learn is slow to import; load the estimators on first use
    if name in ("BitangentFinder", "FlexFinder"):
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
