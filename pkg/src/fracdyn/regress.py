"""Least-squares line fitting for log-log scaling data."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["LogLogSeries", "LineFit", "ols_fit"]


@dataclass(frozen=True, eq=False)
class LogLogSeries:
    """Paired (x, y) samples, typically (ln size, ln count).

    x must be strictly monotone (either direction); both arrays finite.
    """

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
            raise ValueError("x and y must be 1-D arrays of equal length")
        if x.size < 2:
            raise ValueError("need at least 2 points")
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            raise ValueError("x and y must be finite")
        dx = np.diff(x)
        if not ((dx > 0).all() or (dx < 0).all()):
            raise ValueError("x values must be strictly monotone")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __len__(self) -> int:
        return self.x.size


@dataclass(frozen=True)
class LineFit:
    slope: float
    intercept: float
    r_squared: float
    stderr_slope: float


def ols_fit(series: LogLogSeries) -> LineFit:
    """Ordinary least squares y = slope*x + intercept.

    r_squared = 1 - SSres/SStot, defined as 1.0 when SStot = 0 (constant y,
    perfectly reproduced by a horizontal line). stderr_slope is the usual
    sqrt(SSres / (n-2) / Sxx), 0.0 when n = 2.
    """
    x, y = series.x, series.y
    n = x.size
    xm, ym = x.mean(), y.mean()
    dx, dy = x - xm, y - ym
    sxx = float(dx @ dx)
    if sxx == 0.0:
        # strictly monotone x can still underflow here (subnormal spacing)
        raise ValueError("x values are too close together to fit a slope")
    slope = float(dx @ dy) / sxx
    intercept = ym - slope * xm
    resid = y - (slope * x + intercept)
    ss_res = float(resid @ resid)
    ss_tot = float(dy @ dy)
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    if n > 2:
        stderr = math.sqrt(max(ss_res, 0.0) / (n - 2) / sxx)
    else:
        stderr = 0.0
    return LineFit(slope, intercept, r_squared, stderr)
