"""Synthetic workloads and CSV input.

Generated coordinates are integers in ``[0, 2^20)`` divided by 1024, so
squared L2 distances, the L1 rotation and all box bounds used by the
structures are computed exactly in floating point.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

GRID = 2 ** 20
SCALE = 1024.0


class DataError(ValueError):
    """Malformed input; ``line`` is 1-based."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass
class Dataset:
    points: np.ndarray          # (n,) in 1D, (n, 2) in 2D
    colors: np.ndarray
    labels: List[str]           # label of each dense color id

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def dim(self) -> int:
        return 1 if self.points.ndim == 1 else 2


def generate_points(n: int, dim: int, num_colors: int, rng: np.random.Generator) -> Dataset:
    if n < 1 or num_colors < 1:
        raise ValueError("need n >= 1 and at least one color")
    if dim not in (1, 2):
        raise ValueError("dim must be 1 or 2")
    shape = (n,) if dim == 1 else (n, dim)
    pts = rng.integers(0, GRID, size=shape) / SCALE
    colors = rng.integers(0, num_colors, size=n)
    return Dataset(pts, colors, [str(c) for c in range(num_colors)])


def grid_value(rng: np.random.Generator, lo: float, hi: float, size=None):
    """Grid points in ``[lo, hi]`` (bounds assumed on the grid)."""
    a, b = int(round(lo * SCALE)), int(round(hi * SCALE))
    return rng.integers(a, b + 1, size=size) / SCALE


def generate_queries(data: Dataset, count: int, rng: np.random.Generator) -> List[Tuple[Tuple[float, ...], int]]:
    """Centres on the grid inside the data bounding box, ``k`` uniform in 1..n."""
    pts = data.points.reshape(data.n, -1)
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    out = []
    for _ in range(count):
        q = tuple(float(grid_value(rng, lo[d], hi[d])) for d in range(pts.shape[1]))
        out.append((q, int(rng.integers(1, data.n + 1))))
    return out


def _rows(path: str):
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            yield lineno, [cell.strip() for cell in row]


def _floats(cells: Sequence[str], lineno: int) -> List[float]:
    try:
        vals = [float(c) for c in cells]
    except ValueError:
        raise DataError(f"expected numbers, got {','.join(cells)!r}", lineno) from None
    if not all(np.isfinite(vals)):
        raise DataError("non-finite coordinate", lineno)
    return vals


def read_points(path: str, dim: Optional[int] = None) -> Dataset:
    """Rows ``x,color`` or ``x,y,color``; color tokens get dense ids in
    first-seen order."""
    coords: List[List[float]] = []
    colors: List[int] = []
    ids: Dict[str, int] = {}
    for lineno, row in _rows(path):
        width = len(row) - 1
        if width not in (1, 2) or (dim is not None and width != dim):
            raise DataError(f"expected {dim or '1 or 2'} coordinates and a color, got {len(row)} fields", lineno)
        if coords and width != len(coords[0]):
            raise DataError("dimension changes between rows", lineno)
        if not row[-1]:
            raise DataError("empty color", lineno)
        coords.append(_floats(row[:-1], lineno))
        colors.append(ids.setdefault(row[-1], len(ids)))
    if not coords:
        raise DataError("dataset is empty")
    pts = np.asarray(coords, dtype=float)
    if pts.shape[1] == 1:
        pts = pts[:, 0]
    return Dataset(pts, np.asarray(colors, dtype=np.int64), list(ids))


def read_queries(path: str, dim: int) -> List[Tuple[Tuple[float, ...], int]]:
    """Rows ``qx,k`` or ``qx,qy,k``."""
    out = []
    for lineno, row in _rows(path):
        if len(row) != dim + 1:
            raise DataError(f"expected {dim} coordinates and k, got {len(row)} fields", lineno)
        q = tuple(_floats(row[:-1], lineno))
        try:
            k = int(row[-1])
        except ValueError:
            raise DataError(f"k must be an integer, got {row[-1]!r}", lineno) from None
        out.append((q, k))
    return out


def write_points(path: str, data: Dataset):
    pts = data.points.reshape(data.n, -1)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for p, c in zip(pts.tolist(), data.colors.tolist()):
            w.writerow([repr(v) for v in p] + [data.labels[c]])
