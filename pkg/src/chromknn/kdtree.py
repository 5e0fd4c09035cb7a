"""Median-split kd-tree with exact counting and reporting over disk-shaped regions.

Regions classify a bounding box as fully inside, fully outside or partial and
test single points; all tests use squared distances so grid-valued inputs
compare exactly.
"""
from __future__ import annotations

from collections import Counter
from typing import List, Optional, Sequence

import numpy as np

INSIDE, OUTSIDE, PARTIAL = 1, 0, 2
LEAF_SIZE = 8


def _min_dist_sq(cx, cy, x0, x1, y0, y1):
    dx = x0 - cx if cx < x0 else (cx - x1 if cx > x1 else 0.0)
    dy = y0 - cy if cy < y0 else (cy - y1 if cy > y1 else 0.0)
    return dx * dx + dy * dy


def _max_dist_sq(cx, cy, x0, x1, y0, y1):
    dx = max(cx - x0, x1 - cx)
    dy = max(cy - y0, y1 - cy)
    return dx * dx + dy * dy


class Disk:
    """Closed disk ``|p - c|^2 <= r_sq``; empty when ``r_sq < 0``."""

    __slots__ = ("cx", "cy", "r_sq")

    def __init__(self, cx: float, cy: float, r_sq: float):
        self.cx, self.cy, self.r_sq = cx, cy, r_sq

    def contains(self, x: float, y: float) -> bool:
        dx, dy = x - self.cx, y - self.cy
        return dx * dx + dy * dy <= self.r_sq

    def classify(self, x0, x1, y0, y1) -> int:
        if self.r_sq < 0 or _min_dist_sq(self.cx, self.cy, x0, x1, y0, y1) > self.r_sq:
            return OUTSIDE
        if _max_dist_sq(self.cx, self.cy, x0, x1, y0, y1) <= self.r_sq:
            return INSIDE
        return PARTIAL


class Difference:
    """Points in ``keep`` and not in ``drop``."""

    __slots__ = ("keep", "drop")

    def __init__(self, keep, drop):
        self.keep, self.drop = keep, drop

    def contains(self, x, y) -> bool:
        return self.keep.contains(x, y) and not self.drop.contains(x, y)

    def classify(self, x0, x1, y0, y1) -> int:
        a = self.keep.classify(x0, x1, y0, y1)
        if a == OUTSIDE:
            return OUTSIDE
        b = self.drop.classify(x0, x1, y0, y1)
        if b == INSIDE:
            return OUTSIDE
        if a == INSIDE and b == OUTSIDE:
            return INSIDE
        return PARTIAL


def annulus(cx: float, cy: float, inner_sq: float, outer_sq: float) -> Difference:
    """Points with ``inner_sq < d^2 <= outer_sq``."""
    return Difference(Disk(cx, cy, outer_sq), Disk(cx, cy, inner_sq))


class _KDNode:
    __slots__ = ("x0", "x1", "y0", "y1", "size", "left", "right", "xs", "ys", "ids")

    def __init__(self):
        self.left = self.right = None
        self.xs = self.ys = self.ids = None


class KDTree:
    def __init__(self, points, ids: Optional[Sequence[int]] = None):
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        self.n = len(pts)
        self.ids = np.arange(self.n) if ids is None else np.asarray(ids, dtype=np.int64)
        self.points = pts
        self.num_nodes = 0
        self.root = self._build(np.arange(self.n), 0) if self.n else None

    def _build(self, idx: np.ndarray, depth: int) -> _KDNode:
        self.num_nodes += 1
        node = _KDNode()
        sub = self.points[idx]
        node.x0, node.y0 = (float(v) for v in sub.min(axis=0))
        node.x1, node.y1 = (float(v) for v in sub.max(axis=0))
        node.size = len(idx)
        if len(idx) <= LEAF_SIZE:
            node.xs = sub[:, 0].tolist()
            node.ys = sub[:, 1].tolist()
            node.ids = self.ids[idx].tolist()
            return node
        axis = 0 if (node.x1 - node.x0) >= (node.y1 - node.y0) else 1
        order = idx[np.argsort(sub[:, axis], kind="stable")]
        half = len(order) // 2
        node.left = self._build(order[:half], depth + 1)
        node.right = self._build(order[half:], depth + 1)
        return node

    def count(self, region, stats: Optional[Counter] = None) -> int:
        total = 0
        visited = 0
        stack = [self.root] if self.root is not None else []
        while stack:
            node = stack.pop()
            visited += 1
            cls = region.classify(node.x0, node.x1, node.y0, node.y1)
            if cls == OUTSIDE:
                continue
            if cls == INSIDE:
                total += node.size
            elif node.xs is not None:
                contains = region.contains
                total += sum(1 for x, y in zip(node.xs, node.ys) if contains(x, y))
            else:
                stack.append(node.left)
                stack.append(node.right)
        if stats is not None:
            stats["tree_nodes"] += visited
            stats["count_queries"] += 1
        return total

    def report(self, region, stats: Optional[Counter] = None) -> List[int]:
        out: List[int] = []
        visited = 0
        stack = [self.root] if self.root is not None else []
        while stack:
            node = stack.pop()
            visited += 1
            cls = region.classify(node.x0, node.x1, node.y0, node.y1)
            if cls == OUTSIDE:
                continue
            if cls == INSIDE:
                out.extend(self._all_ids(node))
            elif node.xs is not None:
                contains = region.contains
                out.extend(i for x, y, i in zip(node.xs, node.ys, node.ids) if contains(x, y))
            else:
                stack.append(node.left)
                stack.append(node.right)
        if stats is not None:
            stats["tree_nodes"] += visited
            stats["report_queries"] += 1
            stats["reported"] += len(out)
        return out

    @staticmethod
    def _all_ids(node) -> List[int]:
        out = []
        stack = [node]
        while stack:
            nd = stack.pop()
            if nd.ids is not None:
                out.extend(nd.ids)
            else:
                stack.append(nd.left)
                stack.append(nd.right)
        return out

    def disk_count(self, cx: float, cy: float, r_sq: float, stats: Optional[Counter] = None) -> int:
        return self.count(Disk(cx, cy, r_sq), stats)

    def annulus_report(self, cx: float, cy: float, inner_sq: float, outer_sq: float,
                       stats: Optional[Counter] = None) -> List[int]:
        return self.report(annulus(cx, cy, inner_sq, outer_sq), stats)
