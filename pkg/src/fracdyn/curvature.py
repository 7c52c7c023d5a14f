"""Curvature of fitted population segments and shape-similarity ratios.

Each segment is viewed as the planar curve t -> (t, P(t)), whose
curvature is kappa(t) = |P''| / (1 + P'^2)^(3/2) (the cross-product
curvature formula reduced to a graph curve). Average curvature over a
period is the Simpson-quadrature mean of kappa. The alpha ratio of a
period is the previous curvature-bearing period's average divided by its
own; comparing the alpha sequences of two regions gives a scale-free
verdict on whether their growth histories have similar shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .population import PiecewiseModel, Segment

__all__ = [
    "CurvatureReport",
    "pointwise_curvature",
    "average_curvature",
    "average_curvatures",
    "alpha_ratios",
    "compare_similarity",
]

DEFAULT_PANELS = 1024


def _kappa(seg: Segment, ts: np.ndarray) -> np.ndarray:
    d1 = np.asarray(seg.derivative(ts), dtype=float)
    d2 = np.asarray(seg.second_derivative(ts), dtype=float)
    return np.abs(d2) / (1.0 + d1**2) ** 1.5


def pointwise_curvature(seg: Segment, t: float) -> float:
    """Curvature of the segment's graph curve at year t."""
    if not seg.t_start <= t <= seg.t_end:
        raise ValueError(
            f"t={t} outside segment range [{seg.t_start}, {seg.t_end}]"
        )
    return float(_kappa(seg, np.asarray(t, dtype=float)))


def average_curvature(
    seg: Segment, t0: float, t1: float, panels: int = DEFAULT_PANELS
) -> float:
    """Mean curvature over [t0, t1] by composite Simpson quadrature."""
    if not (seg.t_start <= t0 < t1 <= seg.t_end):
        raise ValueError(
            f"need seg.t_start <= t0 < t1 <= seg.t_end, got [{t0}, {t1}] "
            f"in segment [{seg.t_start}, {seg.t_end}]"
        )
    if panels < 2 or panels % 2:
        raise ValueError(f"panel count must be even and >= 2, got {panels}")
    ts = np.linspace(t0, t1, panels + 1)
    k = _kappa(seg, ts)
    h = (t1 - t0) / panels
    integral = h / 3.0 * (k[0] + k[-1] + 4.0 * k[1:-1:2].sum() + 2.0 * k[2:-1:2].sum())
    return float(integral / (t1 - t0))


def average_curvatures(
    model: PiecewiseModel, panels: int = DEFAULT_PANELS
) -> dict[int, float]:
    """Average curvature of each segment over its own year range, keyed by
    1-based segment position."""
    return {
        i: average_curvature(seg, seg.t_start, seg.t_end, panels)
        for i, seg in enumerate(model.segments, start=1)
    }


def alpha_ratios(
    model: PiecewiseModel, panels: int = DEFAULT_PANELS
) -> dict[int, float]:
    """alpha_i = A(previous curvature-bearing segment) / A(segment i).

    Zero-curvature segments (linear fits, or exponentials with base 1)
    never appear as keys or numerators; the ratio chain skips over them,
    pairing each curved segment with the nearest curved one before it.
    """
    avgs = average_curvatures(model, panels)
    curved = [i for i, a in avgs.items() if a > 0.0]
    if len(curved) < 2:
        raise ValueError(
            f"need >= 2 curvature-bearing segments, got {len(curved)}"
        )
    return {j: avgs[i] / avgs[j] for i, j in zip(curved, curved[1:])}


@dataclass(frozen=True)
class CurvatureReport:
    """Two-model comparison: per-segment averages, alpha pairs, verdicts."""

    averages_a: dict[int, float]
    averages_b: dict[int, float]
    alphas_a: dict[int, float]
    alphas_b: dict[int, float]
    verdicts: dict[int, bool]
    overall: bool
    tolerance: float


def compare_similarity(
    model_a: PiecewiseModel,
    model_b: PiecewiseModel,
    tolerance: float,
    panels: int = DEFAULT_PANELS,
) -> CurvatureReport:
    """Compare two regions' growth shapes through their alpha sequences.

    Index i is similar iff |ln(alpha_a/alpha_b)| <= ln(1 + tolerance);
    the overall verdict requires every index to be similar. Raw alphas
    are reported alongside so the caller can weigh borderline indices.
    """
    if not tolerance > 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    alphas_a = alpha_ratios(model_a, panels)
    alphas_b = alpha_ratios(model_b, panels)
    if alphas_a.keys() != alphas_b.keys():
        raise ValueError(
            f"alpha index sets differ: {sorted(alphas_a)} vs {sorted(alphas_b)}"
        )
    bound = math.log1p(tolerance)
    verdicts = {
        i: abs(math.log(alphas_a[i] / alphas_b[i])) <= bound for i in alphas_a
    }
    return CurvatureReport(
        averages_a=average_curvatures(model_a, panels),
        averages_b=average_curvatures(model_b, panels),
        alphas_a=alphas_a,
        alphas_b=alphas_b,
        verdicts=verdicts,
        overall=all(verdicts.values()),
        tolerance=tolerance,
    )
