"""Synthetic binary rasters with analytically known fractal dimension.

These serve as oracles for the dimension estimators: the triangle and
carpet have exact self-similarity dimensions (log3/log2 and log8/log3),
the rect/disk are dimension 2, the line is dimension 1.
"""

from __future__ import annotations

import numpy as np

from .raster import BinaryRaster

__all__ = [
    "sierpinski_triangle",
    "sierpinski_carpet",
    "filled_rect",
    "line",
    "disk",
    "random_density",
]

# Fixed LCG for random_density so outputs are bit-identical everywhere:
#   state <- (1664525 * state + 1013904223) mod 2^32
# seeded with state_0 = seed mod 2^32. Pixel i (row-major) uses the i-th
# updated state and is occupied iff state < floor(p * 2^32).
_LCG_A = 1664525
_LCG_C = 1013904223
_LCG_M = 1 << 32


def sierpinski_triangle(n: int, centered: bool = False) -> BinaryRaster:
    """Pascal-mod-2 Sierpinski triangle on an n x n raster, n = 2^k.

    Pixel (x, y) is occupied iff x AND y == 0 (bitwise), which anchors the
    self-similar corner at the origin. With centered=True the output is
    2n x 2n: four mirrored copies sharing that corner at the image center,
    so the mass centroid coincides exactly with the self-similar point
    (useful for radial estimation, where the plain variant's centroid
    falls inside the central hole).
    """
    if n < 2 or n & (n - 1):
        raise ValueError(f"side must be a power of two >= 2, got {n}")
    idx = np.arange(n)
    if centered:
        full = np.arange(2 * n)
        # distance from the center seam: ... 1 0 | 0 1 ...
        idx = np.where(full >= n, full - n, n - 1 - full)
    occ = (idx[None, :] & idx[:, None]) == 0
    return BinaryRaster(occ)


def sierpinski_carpet(k: int) -> BinaryRaster:
    """Sierpinski carpet of depth k on a 3^k x 3^k raster.

    Pixel occupied iff no base-3 digit position has digit 1 in both
    coordinates.
    """
    if k < 1:
        raise ValueError(f"depth must be >= 1, got {k}")
    n = 3**k
    idx = np.arange(n)
    hole = np.zeros((n, n), dtype=bool)
    x = idx.copy()
    y = idx.copy()
    for _ in range(k):
        hole |= (x % 3 == 1)[None, :] & (y % 3 == 1)[:, None]
        x //= 3
        y //= 3
    return BinaryRaster(~hole)


def filled_rect(w: int, h: int) -> BinaryRaster:
    """Fully occupied w x h raster."""
    if w < 1 or h < 1:
        raise ValueError("extents must be positive")
    return BinaryRaster(np.ones((h, w), dtype=bool))


def line(length: int) -> BinaryRaster:
    """One occupied horizontal row of the given length, centered in a
    length x length raster (square so grid schedules apply)."""
    if length < 1:
        raise ValueError("length must be positive")
    occ = np.zeros((length, length), dtype=bool)
    occ[length // 2, :] = True
    return BinaryRaster(occ)


def disk(radius: int) -> BinaryRaster:
    """Filled disk of the given pixel radius in a (2r+1) square raster."""
    if radius < 1:
        raise ValueError("radius must be positive")
    idx = np.arange(2 * radius + 1) - radius
    occ = idx[None, :] ** 2 + idx[:, None] ** 2 <= radius**2
    return BinaryRaster(occ)


def _lcg_stream(count: int, seed: int) -> np.ndarray:
    state = seed % _LCG_M
    out = np.empty(count, dtype=np.uint32)
    for i in range(count):
        state = (_LCG_A * state + _LCG_C) % _LCG_M
        out[i] = state
    return out


def random_density(w: int, h: int, p: float, seed: int) -> BinaryRaster:
    """Each pixel occupied independently with probability p.

    Fully deterministic in (w, h, p, seed) via the documented LCG; the
    same arguments produce identical bits on any platform.
    """
    if w < 1 or h < 1:
        raise ValueError("extents must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {p}")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    threshold = int(p * _LCG_M)
    states = _lcg_stream(w * h, seed)
    occ = states < np.uint64(threshold)
    return BinaryRaster(occ.reshape(h, w))
