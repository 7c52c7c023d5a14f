"""Radial (mass-scaling) fractal dimension estimation.

Count occupied pixels within growing circles about a counting center and
fit ln N against ln R; the slope is the dimension. Radii are capped at
the distance from the center to the nearest raster edge, since circles
that spill past the frame undercount and bend the scaling relation.
Distances use the pixel-center convention with an inclusive boundary
(a pixel at distance exactly R is counted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boxdim import DimensionEstimate
from .raster import BinaryRaster
from .regress import LogLogSeries, ols_fit

__all__ = [
    "RadialSchedule",
    "counting_center",
    "max_valid_radius",
    "default_radial_schedule",
    "pixel_counts",
    "radial_counts",
    "estimate_radial_dimension",
]


@dataclass(frozen=True)
class RadialSchedule:
    """Strictly increasing radii (pixels) about a fixed center (cx, cy)."""

    radii: tuple[float, ...]
    center: tuple[float, float]

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if len(radii) < 1:
            raise ValueError("need at least one radius")
        if any(r <= 0 for r in radii):
            raise ValueError("radii must be positive")
        if any(a >= b for a, b in zip(radii, radii[1:])):
            raise ValueError("radii must be strictly increasing")
        cx, cy = self.center
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "center", (float(cx), float(cy)))


def counting_center(b: BinaryRaster, mode: str = "geometric") -> tuple[float, float]:
    """Center for radial counting.

    'geometric' is the frame midpoint ((w-1)/2, (h-1)/2); 'centroid' is
    the mean coordinate of the occupied pixels.
    """
    if mode == "geometric":
        return ((b.width - 1) / 2.0, (b.height - 1) / 2.0)
    if mode == "centroid":
        ys, xs = np.nonzero(b.occupied)
        if xs.size == 0:
            raise ValueError("mass centroid of an empty raster is undefined")
        return (float(xs.mean()), float(ys.mean()))
    raise ValueError(f"mode must be 'geometric' or 'centroid', got {mode!r}")


def max_valid_radius(b: BinaryRaster, center: tuple[float, float]) -> float:
    """Distance from the center to the nearest raster edge.

    Pixel centers sit at integer coordinates, so the frame spans
    [-0.5, w-0.5] x [-0.5, h-0.5].
    """
    cx, cy = center
    if not (-0.5 <= cx <= b.width - 0.5 and -0.5 <= cy <= b.height - 0.5):
        raise ValueError(f"center {center} lies outside the raster frame")
    return min(cx + 0.5, b.width - 0.5 - cx, cy + 0.5, b.height - 0.5 - cy)


def default_radial_schedule(
    b: BinaryRaster,
    center: tuple[float, float],
    min_radius: float = 4.0,
    ratio: float = math.sqrt(2.0),
    min_count: int = 6,
) -> RadialSchedule:
    """Geometric radius progression from min_radius up to the frame limit."""
    rmax = max_valid_radius(b, center)
    radii = []
    r = min_radius
    while r <= rmax:
        radii.append(r)
        r *= ratio
    if len(radii) < min_count:
        raise ValueError(
            f"only {len(radii)} radii fit before the frame edge "
            f"(limit {rmax:.2f}); need >= {min_count}"
        )
    return RadialSchedule(tuple(radii), center)


def pixel_counts(b: BinaryRaster, schedule: RadialSchedule) -> list[tuple[float, int]]:
    """(R, N(R)) pairs with N > 0, for each radius in the schedule."""
    cx, cy = schedule.center
    rmax = max_valid_radius(b, schedule.center)
    if schedule.radii[-1] > rmax:
        raise ValueError(
            f"radius {schedule.radii[-1]} exceeds frame limit {rmax:.4f}; "
            "shrink the schedule (radii are never clamped)"
        )
    ys, xs = np.nonzero(b.occupied)
    d2 = (xs - cx) ** 2 + (ys - cy) ** 2
    pairs = []
    for r in schedule.radii:
        n = int((d2 <= r * r).sum())
        if n > 0:
            pairs.append((r, n))
    return pairs


def radial_counts(b: BinaryRaster, schedule: RadialSchedule) -> LogLogSeries:
    """(ln R, ln N) points for the schedule; radii with N = 0 dropped."""
    pairs = pixel_counts(b, schedule)
    if not pairs:
        raise ValueError("no radius in the schedule captures an occupied pixel")
    x = np.log([r for r, _ in pairs])
    y = np.log([float(n) for _, n in pairs])
    return LogLogSeries(x, y)


def estimate_radial_dimension(
    b: BinaryRaster, schedule: RadialSchedule
) -> DimensionEstimate:
    series = radial_counts(b, schedule)
    if len(series) < 3:
        raise ValueError(f"need >= 3 nonempty radii to fit, got {len(series)}")
    fit = ols_fit(series)
    return DimensionEstimate(abs(fit.slope), fit, series)
