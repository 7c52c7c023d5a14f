"""Box-counting fractal dimension estimation.

Cover the raster with an epsilon-sided grid anchored at the top-left
corner (partial cells on the right/bottom edges count), tally the cells
containing at least one occupied pixel, and fit ln N against ln epsilon.
The dimension is the magnitude of the fitted slope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .raster import BinaryRaster
from .regress import LineFit, LogLogSeries, ols_fit

__all__ = [
    "BoxSchedule",
    "DimensionEstimate",
    "default_schedule",
    "cell_counts",
    "box_counts",
    "estimate_box_dimension",
]


@dataclass(frozen=True)
class BoxSchedule:
    """Strictly decreasing box side lengths, in pixels."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if len(sizes) < 3:
            raise ValueError("need at least 3 box sizes")
        if any(s < 1 for s in sizes):
            raise ValueError("box sizes must be >= 1")
        if any(a <= b for a, b in zip(sizes, sizes[1:])):
            raise ValueError("box sizes must be strictly decreasing")
        object.__setattr__(self, "sizes", sizes)


@dataclass(frozen=True)
class DimensionEstimate:
    """dimension = |fit.slope| over the retained (ln size, ln count) points."""

    dimension: float
    fit: LineFit
    samples: LogLogSeries


def default_schedule(b: BinaryRaster) -> BoxSchedule:
    """Powers of two from 2^floor(log2(min(w,h)/2)) down to 1."""
    m = min(b.width, b.height)
    if m < 8:
        raise ValueError(f"raster too small for default schedule (min side {m} < 8)")
    top = int(math.floor(math.log2(m / 2)))
    return BoxSchedule(tuple(2**k for k in range(top, -1, -1)))


def _occupied_cells(occ: np.ndarray, size: int) -> int:
    if size == 1:
        return int(occ.sum())
    h, w = occ.shape
    sums = np.add.reduceat(occ.astype(np.int64), np.arange(0, h, size), axis=0)
    sums = np.add.reduceat(sums, np.arange(0, w, size), axis=1)
    return int((sums > 0).sum())


def cell_counts(b: BinaryRaster, schedule: BoxSchedule) -> list[tuple[int, int]]:
    """(size, N(size)) pairs with N > 0, for each size in the schedule."""
    if not b.occupied.any():
        raise ValueError("empty raster: no occupied pixels to count")
    pairs = []
    for size in schedule.sizes:
        n = _occupied_cells(b.occupied, size)
        if n > 0:
            pairs.append((size, n))
    return pairs


def box_counts(b: BinaryRaster, schedule: BoxSchedule) -> LogLogSeries:
    """(ln size, ln N) points for the schedule; sizes with N = 0 dropped."""
    pairs = cell_counts(b, schedule)
    x = np.log([float(s) for s, _ in pairs])
    y = np.log([float(n) for _, n in pairs])
    return LogLogSeries(x, y)


def estimate_box_dimension(b: BinaryRaster, schedule: BoxSchedule) -> DimensionEstimate:
    series = box_counts(b, schedule)
    if len(series) < 3:
        raise ValueError(f"need >= 3 nonempty sizes to fit, got {len(series)}")
    fit = ols_fit(series)
    return DimensionEstimate(abs(fit.slope), fit, series)
