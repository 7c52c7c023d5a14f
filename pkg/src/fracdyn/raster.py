"""Grayscale and binary raster types with PGM/PNG loading.

Grayscale pixels are 8-bit (0..255). Binary rasters mark pixels as
occupied/empty. Coordinates are (x, y) with the origin at the top-left
corner, x growing right and y growing down; arrays are indexed [y, x].
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RasterFormatError",
    "GrayRaster",
    "BinaryRaster",
    "Rect",
    "load_gray",
    "write_pgm",
    "binarize",
    "to_gray",
    "crop",
    "occupancy_count",
]


class RasterFormatError(ValueError):
    """Raised for unreadable or malformed image files."""


@dataclass(frozen=True, eq=False)
class GrayRaster:
    """A width x height grid of 8-bit samples, row-major."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("pixels must be a 2-D array with positive extents")
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError("pixel samples must be integers")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("pixel samples must lie in 0..255")
            arr = arr.astype(np.uint8)
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True, eq=False)
class BinaryRaster:
    """A width x height grid of occupied/empty pixels."""

    occupied: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.occupied)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("occupied must be a 2-D array with positive extents")
        arr = np.ascontiguousarray(arr.astype(bool))
        arr.setflags(write=False)
        object.__setattr__(self, "occupied", arr)

    @property
    def width(self) -> int:
        return self.occupied.shape[1]

    @property
    def height(self) -> int:
        return self.occupied.shape[0]


@dataclass(frozen=True)
class Rect:
    """Axis-aligned crop window: top-left (x0, y0), extents w x h."""

    x0: int
    y0: int
    w: int
    h: int

    def __post_init__(self):
        if self.x0 < 0 or self.y0 < 0:
            raise ValueError("rect origin must be non-negative")
        if self.w < 1 or self.h < 1:
            raise ValueError("rect extents must be positive")


def _tokens(data: bytes):
    """Yield whitespace-separated ASCII tokens, skipping # comments."""
    i = 0
    n = len(data)
    while i < n:
        c = data[i : i + 1]
        if c in b" \t\r\n\f\v":
            i += 1
        elif c == b"#":
            while i < n and data[i : i + 1] not in b"\r\n":
                i += 1
        else:
            j = i
            while j < n and data[j : j + 1] not in b" \t\r\n\f\v#":
                j += 1
            yield i, data[i:j]
            i = j


def _parse_pgm(data: bytes) -> GrayRaster:
    toks = _tokens(data)
    try:
        _, magic = next(toks)
        w_pos, w_tok = next(toks)
        _, h_tok = next(toks)
        mv_end, mv_tok = next(toks)
        mv_end += len(mv_tok)
    except StopIteration:
        raise RasterFormatError("truncated PGM header") from None
    if magic not in (b"P2", b"P5"):
        raise RasterFormatError("not a PGM file (expected P2 or P5 magic)")
    try:
        w, h, maxval = int(w_tok), int(h_tok), int(mv_tok)
    except ValueError:
        raise RasterFormatError("non-numeric PGM header field") from None
    if w < 1 or h < 1:
        raise RasterFormatError("PGM dimensions must be positive")
    if not 1 <= maxval <= 255:
        raise RasterFormatError(f"unsupported PGM maxval {maxval} (need 1..255)")

    if magic == b"P5":
        # Pixel bytes start after exactly one whitespace byte past maxval.
        start = mv_end + 1
        if start + w * h > len(data):
            raise RasterFormatError("truncated P5 pixel data")
        arr = np.frombuffer(data[start : start + w * h], dtype=np.uint8)
    else:
        body = _tokens(data)
        for _ in range(4):  # magic, width, height, maxval
            next(body)
        vals = []
        for _, tok in body:
            try:
                vals.append(int(tok))
            except ValueError:
                raise RasterFormatError(f"bad P2 sample {tok!r}") from None
        if len(vals) < w * h:
            raise RasterFormatError("truncated P2 pixel data")
        arr = np.array(vals[: w * h], dtype=np.int64)
        if arr.min() < 0 or arr.max() > maxval:
            raise RasterFormatError("P2 sample out of range")
        arr = arr.astype(np.uint8)
    return GrayRaster(arr.reshape(h, w))


def _load_png(data: bytes) -> GrayRaster:
    try:
        from PIL import Image
    except ImportError:  # pragma: no cover
        raise RasterFormatError("PNG support requires Pillow") from None
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except Exception as exc:
        raise RasterFormatError(f"unreadable PNG: {exc}") from None
    if img.mode != "L":
        raise RasterFormatError(
            f"only 8-bit grayscale PNG is supported, got mode {img.mode}"
        )
    return GrayRaster(np.asarray(img, dtype=np.uint8))


def load_gray(path) -> GrayRaster:
    """Load a grayscale raster from a PGM (P2/P5) or 8-bit grayscale PNG."""
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise RasterFormatError(f"cannot read {path}: {exc}") from None
    if data[:2] in (b"P2", b"P5"):
        return _parse_pgm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _load_png(data)
    raise RasterFormatError(f"unrecognized image format in {path}")


def write_pgm(path, gray: GrayRaster, raw: bool = True) -> None:
    """Write a raster as PGM, binary (P5, default) or ASCII (P2)."""
    h, w = gray.pixels.shape
    if raw:
        header = f"P5\n{w} {h}\n255\n".encode("ascii")
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(gray.pixels.tobytes())
    else:
        with open(path, "w") as fh:
            fh.write(f"P2\n{w} {h}\n255\n")
            for row in gray.pixels:
                fh.write(" ".join(str(int(v)) for v in row) + "\n")


def binarize(gray: GrayRaster, threshold: int, polarity: str = "light") -> BinaryRaster:
    """Threshold a grayscale raster into a binary one.

    polarity 'light': pixels >= threshold are occupied.
    polarity 'dark':  pixels <  threshold are occupied.
    """
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold must be in 0..255, got {threshold}")
    if polarity == "light":
        occ = gray.pixels >= threshold
    elif polarity == "dark":
        occ = gray.pixels < threshold
    else:
        raise ValueError(f"polarity must be 'light' or 'dark', got {polarity!r}")
    return BinaryRaster(occ)


def to_gray(binary: BinaryRaster) -> GrayRaster:
    """Render a binary raster as grayscale: occupied -> 255, empty -> 0."""
    return GrayRaster(np.where(binary.occupied, 255, 0).astype(np.uint8))


def crop(binary: BinaryRaster, rect: Rect) -> BinaryRaster:
    """Extract a sub-raster. The window must lie fully inside the raster."""
    if rect.x0 + rect.w > binary.width or rect.y0 + rect.h > binary.height:
        raise ValueError(
            f"crop rect {rect} exceeds raster bounds "
            f"{binary.width}x{binary.height}"
        )
    return BinaryRaster(
        binary.occupied[rect.y0 : rect.y0 + rect.h, rect.x0 : rect.x0 + rect.w]
    )


def occupancy_count(binary: BinaryRaster) -> int:
    """Number of occupied pixels."""
    return int(binary.occupied.sum())
