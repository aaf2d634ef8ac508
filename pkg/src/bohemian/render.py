"""Density grids of complex points and their rendering to images.

Counts are stored as ``counts[iy, ix]`` with row 0 holding the lowest
imaginary parts; images are flipped on output so the top row is ``im_max``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._palette_data import TABLES

__all__ = [
    "Window", "DensityGrid", "Palette", "get_palette", "PALETTES",
    "accumulate", "accumulate_splat", "merge", "equalize", "write_ppm",
    "write_png", "fold_conjugate", "dump_grid", "load_grid",
]


@dataclass(frozen=True)
class Window:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        vals = (self.re_min, self.re_max, self.im_min, self.im_max)
        if not all(np.isfinite(vals)):
            raise ValueError("window bounds must be finite")
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("window needs re_min < re_max and im_min < im_max")

    @classmethod
    def parse(cls, text: str) -> Window:
        """``"re_min,re_max,im_min,im_max"``."""
        parts = [float(x) for x in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"window needs four numbers, got {text!r}")
        return cls(*parts)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.re_min, self.re_max, self.im_min, self.im_max)


@dataclass
class DensityGrid:
    """Pixel counts over a window.

    Integer grids (``dtype=int64``) are filled by :func:`accumulate`;
    real grids (``float64``) by :func:`accumulate_splat`. ``total_in`` and
    ``total_out`` count presented points, not mass.
    """

    width: int
    height: int
    window: Window
    dtype: type = np.int64
    counts: np.ndarray = field(default=None, repr=False)
    total_in: int = 0
    total_out: int = 0

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("grid dimensions must be positive")
        self.dtype = np.dtype(self.dtype).type
        if self.dtype not in (np.int64, np.float64):
            raise TypeError("grid dtype must be int64 or float64")
        if self.counts is None:
            self.counts = np.zeros((self.height, self.width), dtype=self.dtype)
        elif self.counts.shape != (self.height, self.width):
            raise ValueError("counts shape does not match grid size")

    @property
    def cell(self) -> tuple[float, float]:
        w = self.window
        return ((w.re_max - w.re_min) / self.width, (w.im_max - w.im_min) / self.height)

    def same_layout(self, other: DensityGrid) -> bool:
        return (self.width, self.height, self.window, self.dtype) == \
            (other.width, other.height, other.window, other.dtype)

    def copy(self) -> DensityGrid:
        return DensityGrid(self.width, self.height, self.window, self.dtype,
                           self.counts.copy(), self.total_in, self.total_out)

    def __eq__(self, other):
        if not isinstance(other, DensityGrid):
            return NotImplemented
        return (self.same_layout(other) and self.total_in == other.total_in
                and self.total_out == other.total_out
                and np.array_equal(self.counts, other.counts))


def _cells(grid: DensityGrid, points) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    z = np.asarray(points, dtype=np.complex128).ravel()
    w = grid.window
    x, y = z.real, z.imag
    inside = (x >= w.re_min) & (x < w.re_max) & (y >= w.im_min) & (y < w.im_max)
    dx, dy = grid.cell
    ix = np.floor((x[inside] - w.re_min) / dx).astype(np.int64)
    iy = np.floor((y[inside] - w.im_min) / dy).astype(np.int64)
    # rounding can push a point just below the upper edge onto index width
    np.clip(ix, 0, grid.width - 1, out=ix)
    np.clip(iy, 0, grid.height - 1, out=iy)
    return inside, ix, iy


def accumulate(grid: DensityGrid, points) -> DensityGrid:
    """Bin points into half-open cells ``[lo, hi)``; updates ``grid`` in place.

    Parameters
    ----------
    grid : DensityGrid
        An integer grid.
    points : array_like of complex
        Points outside the window (or NaN) only increment ``total_out``.

    Returns
    -------
    DensityGrid
        The same grid object.
    """
    if grid.dtype is not np.int64:
        raise TypeError("accumulate needs an integer grid; use accumulate_splat")
    inside, ix, iy = _cells(grid, points)
    flat = iy * grid.width + ix
    grid.counts += np.bincount(flat, minlength=grid.width * grid.height) \
        .reshape(grid.height, grid.width).astype(np.int64)
    n_in = int(inside.sum())
    grid.total_in += n_in
    grid.total_out += int(inside.size) - n_in
    return grid


_SPLAT_STEPS = 1 << 16


def accumulate_splat(grid: DensityGrid, points) -> DensityGrid:
    """Bilinear splat onto the four nearest cell centres.

    Each in-window point adds exactly unit mass. Near the border, weight
    aimed at a missing neighbour goes to the nearest edge cell instead.
    Fractional offsets are rounded to multiples of ``2**-16`` so every weight
    is a dyadic rational; float sums then stay exact (up to ``2**21`` mass
    per cell) and results do not depend on the order points arrive in.
    """
    if grid.dtype is not np.float64:
        raise TypeError("accumulate_splat needs a float64 grid")
    z = np.asarray(points, dtype=np.complex128).ravel()
    inside, _, _ = _cells(grid, z)
    z = z[inside]
    w = grid.window
    dx, dy = grid.cell
    u = (z.real - w.re_min) / dx - 0.5
    v = (z.imag - w.im_min) / dy - 0.5
    j0, i0 = np.floor(u), np.floor(v)
    fu = np.round((u - j0) * _SPLAT_STEPS) / _SPLAT_STEPS
    fv = np.round((v - i0) * _SPLAT_STEPS) / _SPLAT_STEPS
    j0, i0 = j0.astype(np.int64), i0.astype(np.int64)
    size = grid.width * grid.height
    acc = np.zeros(size)
    for dj, wu in ((0, 1 - fu), (1, fu)):
        jj = np.clip(j0 + dj, 0, grid.width - 1)
        for di, wv in ((0, 1 - fv), (1, fv)):
            ii = np.clip(i0 + di, 0, grid.height - 1)
            acc += np.bincount(ii * grid.width + jj, weights=wu * wv, minlength=size)
    grid.counts += acc.reshape(grid.height, grid.width)
    n_in = int(inside.sum())
    grid.total_in += n_in
    grid.total_out += int(inside.size) - n_in
    return grid


def merge(*grids: DensityGrid) -> DensityGrid:
    """Cell-wise sum of grids sharing size, window and dtype."""
    if not grids:
        raise ValueError("nothing to merge")
    out = grids[0].copy()
    for g in grids[1:]:
        if not out.same_layout(g):
            raise ValueError("cannot merge grids with different layouts")
        out.counts += g.counts
        out.total_in += g.total_in
        out.total_out += g.total_out
    return out


def equalize(grid) -> np.ndarray:
    """Histogram-equalized palette indices, shape ``(height, width)``, uint8.

    Empty cells get index 0. A nonzero count ``c`` gets
    ``ceil(255 * F(c))`` where ``F`` is the empirical CDF over nonzero cells,
    at least 1; every level below the maximum is capped at 254 so the
    densest cells always stand apart.
    """
    counts = grid.counts if isinstance(grid, DensityGrid) else np.asarray(grid)
    out = np.zeros(counts.shape, dtype=np.uint8)
    nz = counts > 0
    vals = counts[nz]
    if vals.size == 0:
        return out
    levels, inv, freq = np.unique(vals, return_inverse=True, return_counts=True)
    cdf = np.cumsum(freq) / vals.size
    idx = np.ceil(255 * cdf - 1e-9).clip(1, 254)
    idx[-1] = 255
    out[nz] = idx.astype(np.uint8)[inv.ravel()]
    return out


@dataclass(frozen=True)
class Palette:
    name: str
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.table.shape != (256, 3) or self.table.dtype != np.uint8:
            raise ValueError("palette table must be 256 RGB uint8 triples")


def _make_palettes() -> dict[str, Palette]:
    grey = np.repeat(np.arange(256, dtype=np.uint8)[:, None], 3, axis=1)
    pals = {"greyscale": Palette("greyscale", grey)}
    for name, hexdata in TABLES.items():
        tab = np.frombuffer(bytes.fromhex(hexdata), dtype=np.uint8).reshape(256, 3)
        pals[name] = Palette(name, tab.copy())
    return pals


PALETTES = _make_palettes()


def get_palette(name: str) -> Palette:
    """Look up ``greyscale``, ``viridis``, ``cividis`` or ``copper``.

    A trailing ``-like`` and the spelling ``grayscale`` are accepted.
    """
    key = name.lower().removesuffix("-like").replace("grayscale", "greyscale")
    try:
        return PALETTES[key]
    except KeyError:
        raise ValueError(f"unknown palette {name!r}; choose from {sorted(PALETTES)}") from None


def _rgb(index: np.ndarray, palette: Palette | str) -> np.ndarray:
    if isinstance(palette, str):
        palette = get_palette(palette)
    index = np.asarray(index)
    if index.ndim != 2:
        raise ValueError("index grid must be 2-D")
    return palette.table[index.astype(np.uint8)[::-1]]


def write_ppm(index: np.ndarray, palette: Palette | str, path) -> Path:
    """Binary P6 image; the top row shows the largest imaginary parts."""
    rgb = _rgb(index, palette)
    h, w = rgb.shape[:2]
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(rgb).tobytes())
    return path


def write_png(index: np.ndarray, palette: Palette | str, path) -> Path:
    """PNG output; needs Pillow (``pip install artifact[png]``)."""
    try:
        from PIL import Image
    except ImportError as exc:
        raise ImportError("PNG output requires Pillow") from exc
    path = Path(path)
    Image.fromarray(np.ascontiguousarray(_rgb(index, palette)), "RGB").save(path)
    return path


def fold_conjugate(points) -> np.ndarray:
    """Reflect into the closed upper half plane: ``x + i|y|``."""
    z = np.asarray(points, dtype=np.complex128)
    return z.real + 1j * np.abs(z.imag)


_MAGIC = b"BHGRID1\n"
_HEADER = struct.Struct("<IIddddBQQ")


def dump_grid(grid: DensityGrid, path) -> Path:
    """Binary dump: magic, width, height, window, dtype flag, totals, then
    little-endian 64-bit counts in storage order."""
    path = Path(path)
    flag = 0 if grid.dtype is np.int64 else 1
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(_HEADER.pack(grid.width, grid.height, *grid.window.as_tuple(),
                              flag, grid.total_in, grid.total_out))
        dt = "<i8" if flag == 0 else "<f8"
        fh.write(grid.counts.astype(dt).tobytes())
    return path


def load_grid(path) -> DensityGrid:
    data = Path(path).read_bytes()
    if not data.startswith(_MAGIC):
        raise ValueError(f"{path}: not a density grid dump")
    off = len(_MAGIC)
    w, h, r0, r1, i0, i1, flag, tin, tout = _HEADER.unpack_from(data, off)
    off += _HEADER.size
    dt, typ = ("<i8", np.int64) if flag == 0 else ("<f8", np.float64)
    counts = np.frombuffer(data, dtype=dt, count=w * h, offset=off)
    return DensityGrid(w, h, Window(r0, r1, i0, i1), typ,
                       counts.astype(typ).reshape(h, w), tin, tout)
