"""Piecewise exponential/linear models for census population series.

Breakpoints are caller-chosen year ranges (gaps between ranges are
fine); each range is fitted independently, exponential segments by OLS
on (t, ln P) and linear segments by OLS on (t, P).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .regress import LogLogSeries, ols_fit

__all__ = [
    "PopulationSeries",
    "Segment",
    "Period",
    "PiecewiseModel",
    "fit_segment",
    "fit_piecewise",
]


@dataclass(frozen=True, eq=False)
class PopulationSeries:
    """Positive population counts at strictly increasing years."""

    year: np.ndarray
    population: np.ndarray

    def __post_init__(self):
        year = np.asarray(self.year, dtype=float)
        pop = np.asarray(self.population, dtype=float)
        if year.ndim != 1 or pop.ndim != 1 or year.size != pop.size:
            raise ValueError("year and population must be 1-D arrays of equal length")
        if year.size < 1:
            raise ValueError("series must not be empty")
        if not (np.isfinite(year).all() and np.isfinite(pop).all()):
            raise ValueError("year and population must be finite")
        if year.size > 1 and not (np.diff(year) > 0).all():
            raise ValueError("years must be strictly increasing")
        if (pop <= 0).any():
            raise ValueError("populations must be positive")
        year.setflags(write=False)
        pop.setflags(write=False)
        object.__setattr__(self, "year", year)
        object.__setattr__(self, "population", pop)

    def __len__(self) -> int:
        return self.year.size


@dataclass(frozen=True)
class Segment:
    """One fitted period.

    exponential: P(t) = a * b^t   (a > 0, b > 0, b is the per-year base)
    linear:      P(t) = b * t + a (b is the slope, a the intercept)
    """

    kind: str
    t_start: float
    t_end: float
    a: float
    b: float

    def __post_init__(self):
        if self.kind not in ("exponential", "linear"):
            raise ValueError(f"kind must be 'exponential' or 'linear', got {self.kind!r}")
        if not self.t_start < self.t_end:
            raise ValueError("t_start must be < t_end")
        if self.kind == "exponential" and (self.a <= 0 or self.b <= 0):
            raise ValueError("exponential segments need a > 0 and b > 0")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "exponential":
            val = self.a * self.b**t
        else:
            val = self.b * t + self.a
        return float(val) if val.ndim == 0 else val

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "exponential":
            val = self.a * math.log(self.b) * self.b**t
        else:
            val = np.full_like(t, self.b)
        return float(val) if val.ndim == 0 else val

    def second_derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "exponential":
            val = self.a * math.log(self.b) ** 2 * self.b**t
        else:
            val = np.zeros_like(t)
        return float(val) if val.ndim == 0 else val


@dataclass(frozen=True)
class Period:
    """A year range to fit, with the model kind to use."""

    t_start: float
    t_end: float
    kind: str

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise ValueError("t_start must be < t_end")
        if self.kind not in ("exponential", "linear"):
            raise ValueError(f"kind must be 'exponential' or 'linear', got {self.kind!r}")


@dataclass(frozen=True)
class PiecewiseModel:
    """Ordered, non-overlapping segments (gaps allowed)."""

    segments: tuple[Segment, ...]

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise ValueError("model needs at least one segment")
        for prev, cur in zip(segs, segs[1:]):
            if cur.t_start < prev.t_end:
                raise ValueError(
                    f"segments overlap: [{prev.t_start}, {prev.t_end}] and "
                    f"[{cur.t_start}, {cur.t_end}]"
                )
        object.__setattr__(self, "segments", segs)


def fit_segment(
    series: PopulationSeries, t_start: float, t_end: float, kind: str
) -> Segment:
    """Fit one period over the samples with t_start <= year <= t_end."""
    mask = (series.year >= t_start) & (series.year <= t_end)
    t = series.year[mask]
    p = series.population[mask]
    if t.size < 2:
        raise ValueError(
            f"need >= 2 samples in [{t_start}, {t_end}], got {t.size}"
        )
    if kind == "exponential":
        if (p <= 0).any():
            raise ValueError("exponential fit requires positive populations")
        fit = ols_fit(LogLogSeries(t, np.log(p)))
        return Segment("exponential", t_start, t_end, math.exp(fit.intercept),
                       math.exp(fit.slope))
    if kind == "linear":
        fit = ols_fit(LogLogSeries(t, p))
        return Segment("linear", t_start, t_end, fit.intercept, fit.slope)
    raise ValueError(f"kind must be 'exponential' or 'linear', got {kind!r}")


def fit_piecewise(series: PopulationSeries, periods) -> PiecewiseModel:
    """Fit one segment per period; periods must not overlap."""
    periods = list(periods)
    if not periods:
        raise ValueError("need at least one period")
    ordered = sorted(periods, key=lambda pr: pr.t_start)
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.t_start < prev.t_end:
            raise ValueError(
                f"periods overlap: [{prev.t_start}, {prev.t_end}] and "
                f"[{cur.t_start}, {cur.t_end}]"
            )
    segs = tuple(
        fit_segment(series, pr.t_start, pr.t_end, pr.kind) for pr in ordered
    )
    return PiecewiseModel(segs)
