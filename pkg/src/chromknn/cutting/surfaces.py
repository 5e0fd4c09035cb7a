"""Vectorised surface sets: lifted planes (L2) and distance pyramids (Linf).

Both classes expose the same surface-space interface used by the cutting:

* ``covers(w)`` / ``covers_ids(w, ids)``: surface lies on or above ``w``,
  i.e. the source point is in the ball that ``w`` encodes;
* ``classify(boxes, ids)``: FULL if the surface covers every point of the
  box, NONE if it covers no point, CROSS otherwise. FULL and NONE are decided
  on box corners with the very expressions ``covers`` uses, so the answer is
  consistent with ``covers`` under floating point rounding as well;
* ``report_difference(a, b)`` and ``report_partial(anchor, box)``: candidate
  supersets found by range reporting on the source points, to be rechecked
  by the caller.
"""
from __future__ import annotations

import math
from collections import Counter
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..geometry import QueryPoint3, ball_to_query_point
from ..kdtree import Difference, Disk, KDTree, INSIDE, OUTSIDE, PARTIAL
from ..rangetree import RangeTree

NONE, FULL, CROSS = 0, 1, 2

# boxes are (m, 6) arrays: x0, x1, y0, y1, z0, z1
Box = Tuple[float, float, float, float, float, float]


def _extent(points: np.ndarray, pad: float) -> Tuple[float, float, float, float]:
    x0, y0 = points.min(axis=0)
    x1, y1 = points.max(axis=0)
    span = max(x1 - x0, y1 - y0)
    e = pad * span if span > 0 else 1.0
    return float(x0 - e), float(x1 + e), float(y0 - e), float(y1 + e)


class _SurfaceSet:
    """Surfaces live in coordinates relative to ``origin``, the centre of the
    data bounding box, which keeps plane slopes small. ``pad`` widens the xy
    extent of the root box by that multiple of the data span."""

    kind = ""

    def __init__(self, points, colors, pad: float = 0.0):
        raw = np.asarray(points, dtype=float).reshape(-1, 2)
        self.origin = (0.0, 0.0)
        if len(raw):
            lo, hi = raw.min(axis=0), raw.max(axis=0)
            self.origin = (float((lo[0] + hi[0]) / 2), float((lo[1] + hi[1]) / 2))
        self.points = raw - np.asarray(self.origin)
        self.pad = pad
        self.colors = np.asarray(colors, dtype=np.int64)
        self.n = len(self.points)
        self.num_colors = int(self.colors.max()) + 1 if self.n else 0
        self.scale = float(np.abs(self.points).max()) + 1.0 if self.n else 1.0

    def query_point(self, ball) -> QueryPoint3:
        return ball_to_query_point(ball, self.origin)

    def covers(self, w) -> np.ndarray:
        return self.covers_ids(w, None)

    def covers_ids(self, w, ids) -> np.ndarray:
        raise NotImplementedError

    def covers_one(self, w, sid: int) -> bool:
        raise NotImplementedError

    def classify(self, boxes: np.ndarray, ids: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def classify_one(self, box: Box, sid: int) -> int:
        return int(self.classify(np.asarray(box, dtype=float)[None, :], np.array([sid]))[0])


class PlaneSet(_SurfaceSet):
    """Surface of ``p``: ``z = 2 p_x x + 2 p_y y - |p|^2``; covers ``w`` iff
    ``p`` lies in the disk centred at ``(w_x, w_y)`` with squared radius
    ``w_x^2 + w_y^2 - w_z``."""

    kind = "plane"

    def __init__(self, points, colors, pad: float = 0.0):
        super().__init__(points, colors, pad)
        px, py = self.points[:, 0], self.points[:, 1]
        self.a = 2 * px
        self.b = 2 * py
        self.c = -(px * px + py * py)
        self._al, self._bl, self._cl = self.a.tolist(), self.b.tolist(), self.c.tolist()
        self.tree = KDTree(self.points)

    def covers_ids(self, w, ids) -> np.ndarray:
        wx, wy, wz = w
        if ids is None:
            return self.a * wx + self.b * wy + self.c >= wz
        return self.a[ids] * wx + self.b[ids] * wy + self.c[ids] >= wz

    def slopes(self, ids):
        return np.abs(self.a[ids]), np.abs(self.b[ids])

    def covers_one(self, w, sid: int) -> bool:
        return self._al[sid] * w[0] + self._bl[sid] * w[1] + self._cl[sid] >= w[2]

    def classify(self, boxes, ids):
        a, b, c = self.a[ids], self.b[ids], self.c[ids]
        ax0, ax1 = a * boxes[:, 0], a * boxes[:, 1]
        by0, by1 = b * boxes[:, 2], b * boxes[:, 3]
        # same operation order as covers_ids: (a x + b y) + c
        f00 = ax0 + by0
        f00 += c
        f01 = ax0 + by1
        f01 += c
        f10 = ax1 + by0
        f10 += c
        f11 = ax1 + by1
        f11 += c
        fmin = np.minimum(np.minimum(f00, f01), np.minimum(f10, f11))
        fmax = np.maximum(np.maximum(f00, f01, out=f00), np.maximum(f10, f11, out=f10), out=f00)
        out = np.full(len(ids), CROSS, dtype=np.int8)
        out[fmin >= boxes[:, 5]] = FULL
        out[fmax < boxes[:, 4]] = NONE
        return out

    def root_box(self) -> Box:
        x0, x1, y0, y1 = _extent(self.points, self.pad)
        corners = [self.a * x + self.b * y + self.c for x in (x0, x1) for y in (y0, y1)]
        return (x0, x1, y0, y1, float(min(v.min() for v in corners)), float(max(v.max() for v in corners)))

    # range-reporting side -------------------------------------------------

    def _disk(self, w, slack: float) -> Disk:
        wx, wy, wz = w
        return Disk(wx, wy, wx * wx + wy * wy - wz + slack)

    def _slack(self, w) -> float:
        return 1e-9 * (self.scale * self.scale + abs(w[0]) * abs(w[0]) + abs(w[1]) * abs(w[1]) + abs(w[2]))

    def report_difference(self, a, b, stats: Optional[Counter] = None) -> List[int]:
        ea, eb = self._slack(a), self._slack(b)
        out = self.tree.report(Difference(self._disk(a, ea), self._disk(b, -eb)), stats)
        out += self.tree.report(Difference(self._disk(b, eb), self._disk(a, -ea)), stats)
        return out

    def report_partial(self, anchor, box: Box, stats: Optional[Counter] = None) -> List[int]:
        x0, x1, y0, y1, _, z1 = box
        e = self._slack((max(abs(x0), abs(x1)), max(abs(y0), abs(y1)), max(abs(z1), abs(anchor[2]))))
        # covering the box == covering its four top corners
        corners = _Intersection([self._disk((x, y, z1), -e) for x in (x0, x1) for y in (y0, y1)])
        return self.tree.report(Difference(self._disk(anchor, e), corners), stats)


class _Intersection:
    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = parts

    def contains(self, x, y) -> bool:
        return all(p.contains(x, y) for p in self.parts)

    def classify(self, x0, x1, y0, y1) -> int:
        result = INSIDE
        for p in self.parts:
            cls = p.classify(x0, x1, y0, y1)
            if cls == OUTSIDE:
                return OUTSIDE
            if cls == PARTIAL:
                result = PARTIAL
        return result


def rect_difference(outer, inner) -> List[Tuple[float, float, float, float]]:
    """Closed rectangles covering ``outer`` minus the interior of ``inner``."""
    ox0, ox1, oy0, oy1 = outer
    if ox0 > ox1 or oy0 > oy1:
        return []
    ix0, ix1, iy0, iy1 = inner
    ix0, ix1, iy0, iy1 = max(ix0, ox0), min(ix1, ox1), max(iy0, oy0), min(iy1, oy1)
    if ix0 > ix1 or iy0 > iy1:
        return [outer]
    out = []
    if ix0 > ox0:
        out.append((ox0, ix0, oy0, oy1))
    if ix1 < ox1:
        out.append((ix1, ox1, oy0, oy1))
    if iy0 > oy0:
        out.append((ix0, ix1, oy0, iy0))
    if iy1 < oy1:
        out.append((ix0, ix1, iy1, oy1))
    return out


class PyramidSet(_SurfaceSet):
    """Surface of ``p``: ``z = Linf(p, (x, y))``; covers ``w`` iff ``p`` lies in
    the square of radius ``w_z`` centred at ``(w_x, w_y)``."""

    kind = "pyramid"

    def __init__(self, points, colors, pad: float = 0.0):
        super().__init__(points, colors, pad)
        self.px, self.py = self.points[:, 0].copy(), self.points[:, 1].copy()
        self._pxl, self._pyl = self.px.tolist(), self.py.tolist()
        self.tree = RangeTree(self.points)

    def covers_ids(self, w, ids) -> np.ndarray:
        wx, wy, wz = w
        px, py = (self.px, self.py) if ids is None else (self.px[ids], self.py[ids])
        return np.maximum(np.abs(px - wx), np.abs(py - wy)) <= wz

    def slopes(self, ids):
        one = np.ones(len(ids))
        return one, one

    def covers_one(self, w, sid: int) -> bool:
        return max(abs(self._pxl[sid] - w[0]), abs(self._pyl[sid] - w[1])) <= w[2]

    def classify(self, boxes, ids):
        px, py = self.px[ids], self.py[ids]
        x0, x1, y0, y1, z0, z1 = (boxes[:, i] for i in range(6))
        far = np.maximum(np.maximum(np.abs(px - x0), np.abs(px - x1)),
                         np.maximum(np.abs(py - y0), np.abs(py - y1)))
        dx = np.maximum(np.maximum(x0 - px, px - x1), 0.0)
        dy = np.maximum(np.maximum(y0 - py, py - y1), 0.0)
        near = np.maximum(dx, dy)
        out = np.full(len(ids), CROSS, dtype=np.int8)
        # the region above a pyramid is convex: all corners covered => box covered
        out[far <= z0] = FULL
        out[near > z1] = NONE
        return out

    def root_box(self) -> Box:
        x0, x1, y0, y1 = _extent(self.points, self.pad)
        far = np.maximum(np.maximum(np.abs(self.px - x0), np.abs(self.px - x1)),
                         np.maximum(np.abs(self.py - y0), np.abs(self.py - y1)))
        return (x0, x1, y0, y1, 0.0, float(far.max()))

    def _square(self, w, slack: float):
        wx, wy, wz = w
        r = wz + slack
        return (wx - r, wx + r, wy - r, wy + r)

    def _report_minus(self, outer, inner, stats) -> List[int]:
        out: List[int] = []
        for rect in rect_difference(outer, inner):
            out += self.tree.report_rect(rect, stats)
        return out

    def report_difference(self, a, b, stats: Optional[Counter] = None) -> List[int]:
        e = 1e-9 * (self.scale + abs(a[0]) + abs(a[1]) + abs(b[0]) + abs(b[1]) + abs(a[2]) + abs(b[2]))
        out = self._report_minus(self._square(a, e), self._square(b, -e), stats)
        out += self._report_minus(self._square(b, e), self._square(a, -e), stats)
        return out

    def report_partial(self, anchor, box: Box, stats: Optional[Counter] = None) -> List[int]:
        x0, x1, y0, y1, z0, _ = box
        e = 1e-9 * (self.scale + abs(x0) + abs(x1) + abs(y0) + abs(y1) + abs(z0) + abs(anchor[2]))
        # pyramids covering all corners: apex within z0 of every bottom corner
        inner = (x1 - z0 + e, x0 + z0 - e, y1 - z0 + e, y0 + z0 - e)
        return self._report_minus(self._square(anchor, e), inner, stats)


class ColorCounter:
    """Exact per-color counts of points inside a query ball."""

    def __init__(self, points, colors, kind: str):
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        colors = np.asarray(colors, dtype=np.int64)
        self.kind = kind
        self.structures = {}
        for c in np.unique(colors):
            ids = np.flatnonzero(colors == c)
            if kind == "plane":
                self.structures[int(c)] = KDTree(pts[ids], ids)
            else:
                self.structures[int(c)] = RangeTree(pts[ids], ids)

    def count(self, c: int, center, key: float, stats: Optional[Counter] = None) -> int:
        """Points of color ``c`` within ``key`` of ``center`` (squared distance
        for planes, Linf radius for pyramids)."""
        s = self.structures.get(int(c))
        if s is None:
            return 0
        if stats is not None:
            stats["color_counts"] += 1
        if self.kind == "plane":
            return s.count(Disk(center[0], center[1], key))
        if key < 0:
            return 0
        return s.count_rect((center[0] - key, center[0] + key, center[1] - key, center[1] + key))


def surfaces_for(points, colors, kind: str, pad: float = 0.0) -> _SurfaceSet:
    if kind in ("plane", "l2"):
        return PlaneSet(points, colors, pad)
    if kind in ("pyramid", "linf"):
        return PyramidSet(points, colors, pad)
    raise ValueError(f"unknown surface kind {kind!r}")
