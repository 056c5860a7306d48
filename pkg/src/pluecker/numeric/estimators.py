"""Estimator-style front ends for the Newton oracle.

``fit`` takes a curve (text or :class:`PlaneCurve`) and stores the results
in trailing-underscore attributes; ``transform`` returns the dual
coordinates (bitangents) or points (flexes) as an ``(n, 3)`` complex array.
Hyperparameters round-trip through ``get_params``/``set_params``.
"""
from __future__ import annotations

from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .curve import PlaneCurve, as_curve
from .solver import SolverConfig, solve_bitangents, solve_flexes


def check_curve(curve) -> PlaneCurve:
    """Validate estimator input: a :class:`PlaneCurve` or parseable curve text."""
    return as_curve(curve)


class _OracleEstimator(BaseEstimator):
    def __init__(
        self,
        start_count: Optional[int] = None,
        max_iterations: int = 100,
        step_tolerance: float = 1e-12,
        residual_tolerance: float = 1e-10,
        dedup_distance: float = 1e-6,
        separation_tolerance: float = 1e-6,
        seed: int = 0,
        workers: int = 1,
        honest: bool = False,
    ):
        self.start_count = start_count
        self.max_iterations = max_iterations
        self.step_tolerance = step_tolerance
        self.residual_tolerance = residual_tolerance
        self.dedup_distance = dedup_distance
        self.separation_tolerance = separation_tolerance
        self.seed = seed
        self.workers = workers
        self.honest = honest

    def _config(self) -> SolverConfig:
        return SolverConfig(
            start_count=self.start_count,
            max_iterations=self.max_iterations,
            step_tolerance=self.step_tolerance,
            residual_tolerance=self.residual_tolerance,
            dedup_distance=self.dedup_distance,
            separation_tolerance=self.separation_tolerance,
            seed=self.seed,
            workers=self.workers,
        )

    def _check_fitted(self):
        if not hasattr(self, "result_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet; call fit(curve) first")

    def summary(self) -> dict:
        self._check_fitted()
        return self.result_.summary()


class BitangentFinder(_OracleEstimator):
    """Find the bitangent lines of a plane curve.

    With ``honest=True`` the solver is not told the closed-form count and
    stops once 50 consecutive batches of starts add nothing new, so the run
    is independent evidence rather than confirmation.
    """

    def fit(self, curve, y=None):
        curve = check_curve(curve)
        self.curve_ = curve
        self.result_ = solve_bitangents(curve, self._config(), honest=self.honest)
        self.solutions_ = self.result_.solutions
        self.n_found_ = self.result_.found
        return self

    def transform(self, curve=None) -> np.ndarray:
        self._check_fitted()
        if curve is not None and check_curve(curve) != self.curve_:
            self.fit(curve)
        return np.array([s.dual for s in self.solutions_], dtype=np.complex128).reshape(-1, 3)


class FlexFinder(_OracleEstimator):
    """Find the flexes of a plane curve, with multiplicity ``contact order - 2``."""

    def fit(self, curve, y=None):
        curve = check_curve(curve)
        self.curve_ = curve
        self.result_ = solve_flexes(curve, self._config(), honest=self.honest)
        self.points_ = self.result_.points
        self.n_found_ = self.result_.found
        self.n_weighted_ = self.result_.weighted
        return self

    def transform(self, curve=None) -> np.ndarray:
        self._check_fitted()
        if curve is not None and check_curve(curve) != self.curve_:
            self.fit(curve)
        return np.array([p.point for p in self.points_], dtype=np.complex128).reshape(-1, 3)
