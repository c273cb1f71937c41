"""Least-squares decay-rate fits used by the scaling and error-curve checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MIN_FIT_POINTS = 5


class DegenerateFit(ValueError):
    """The sample cannot support the requested fit (too few or non-positive values)."""


@dataclass(frozen=True)
class FitResult:
    """Straight-line fit of a decay law, with distance to the predicted rate.

    slope/intercept describe log(value) against the regressor (log t for
    power-law fits, t for exponential fits).  max_residual is the largest
    absolute deviation of log(value) from the fitted line, gap is
    |slope - target|.
    """

    slope: float
    intercept: float
    max_residual: float
    target: float
    gap: float


def _checked(times, values, what: str):
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.shape != v.shape or t.ndim != 1:
        raise ValueError(f"times and values must be equal-length 1-d arrays, got {t.shape} and {v.shape}")
    if t.size < MIN_FIT_POINTS:
        raise DegenerateFit(f"{what} needs at least {MIN_FIT_POINTS} points, got {t.size}")
    if not np.all(np.isfinite(t)) or not np.all(np.isfinite(v)):
        raise DegenerateFit(f"{what} received non-finite samples")
    if np.any(v <= 0.0):
        raise DegenerateFit(f"{what} needs strictly positive values; min was {v.min():.3e}")
    return t, v


def _line_fit(x: np.ndarray, y: np.ndarray, target: float) -> FitResult:
    slope, intercept = np.polyfit(x, y, 1)
    residuals = y - (slope * x + intercept)
    return FitResult(
        slope=float(slope),
        intercept=float(intercept),
        max_residual=float(np.max(np.abs(residuals))),
        target=float(target),
        gap=abs(float(slope) - float(target)),
    )


def fit_loglog(times, values, target: float) -> FitResult:
    """Fit log(value) = slope * log(t) + intercept; slope estimates a power law."""
    t, v = _checked(times, values, "power-law fit")
    if np.any(t <= 0.0):
        raise DegenerateFit("power-law fit needs strictly positive times")
    return _line_fit(np.log(t), np.log(v), target)


def fit_exponential(times, values, target: float = 0.0) -> FitResult:
    """Fit log(value) = slope * t + intercept; slope estimates an exponential rate."""
    t, v = _checked(times, values, "exponential fit")
    return _line_fit(t, np.log(v), target)


def geometric_grid(t_min: float, t_max: float, per_decade: int) -> np.ndarray:
    """Geometric time grid with a fixed point density per decade, endpoints included."""
    if not (0.0 < t_min < t_max):
        raise ValueError(f"need 0 < t_min < t_max, got {t_min}, {t_max}")
    if per_decade < 1:
        raise ValueError(f"per_decade must be >= 1, got {per_decade}")
    decades = math.log10(t_max / t_min)
    count = max(2, int(round(decades * per_decade)) + 1)
    return np.geomspace(t_min, t_max, count)
