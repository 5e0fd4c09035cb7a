"""Chromatic k-NN queries: find the k-th radius, then take the mode of the ball.

The two steps are independent structures. In 1D a size-augmented search tree
finds the radius and a block mode table over the coordinate-sorted colors
answers the mode of the resulting index interval. In 2D the radius comes from
the sampled disk finder (L2) or the range-tree square search (Linf, and L1
after a 45 degree rotation), and the mode from a cutting of surface space.
"""
from __future__ import annotations

import math
from collections import Counter
from typing import Optional, Sequence, Union

import numpy as np

from .array_mode import BlockModeTable, JumpLists
from .bst import SizeTree
from .cutting import CuttingModeIndex
from .euclid import SampledIndex
from .geometry import LINF, Metric, MetricBall, ModeAnswer, as_tuple
from .rangetree import RangeTree, find_square_radius, rotate_points


def _metric(metric: Union[str, Metric]) -> Metric:
    return Metric.parse(metric) if isinstance(metric, str) else metric


class Chromatic1D:
    """Every L_m metric agrees with ``|x - q|`` on the line, so ``metric`` is
    only recorded. ``eps`` additionally builds jump lists for approximate
    answers."""

    def __init__(self, coords: Sequence[float], colors: Sequence[int], metric: Union[str, Metric] = "l2",
                 eps: Optional[float] = None):
        x = np.asarray(coords, dtype=float).reshape(-1)
        colors = np.asarray(colors, dtype=np.int64)
        if len(x) != len(colors):
            raise ValueError("coords and colors differ in length")
        if len(x) == 0:
            raise ValueError("empty point set")
        self.metric = _metric(metric)
        self.n = len(x)
        order = np.argsort(x, kind="stable")
        self.sorted_colors = colors[order].tolist()
        self.tree = SizeTree(x[order].tolist())
        self.table = BlockModeTable(self.sorted_colors)
        self.jumps = JumpLists(self.sorted_colors, eps, self.table) if eps is not None else None

    def kth_key(self, q, k: int, stats: Optional[Counter] = None) -> float:
        return self.tree.find_radius(float(as_tuple(q)[0]), k, stats).radius

    def interval(self, q, k: int, stats: Optional[Counter] = None):
        q = float(as_tuple(q)[0])
        r = self.tree.find_radius(q, k, stats).radius
        lo, hi = self.tree.interval_positions(q, r)
        return lo, hi - 1

    def query(self, q, k: int, stats: Optional[Counter] = None) -> ModeAnswer:
        i, j = self.interval(q, k, stats)
        return self.table.mode_query(i, j, stats)

    def approx_query(self, q, k: int, stats: Optional[Counter] = None) -> ModeAnswer:
        if self.jumps is None:
            raise ValueError("built without eps; no approximate structure")
        i, j = self.interval(q, k, stats)
        return self.jumps.approx_mode_query(i, j, stats)

    def mode_in_ball(self, ball: MetricBall, stats: Optional[Counter] = None) -> Optional[ModeAnswer]:
        lo, hi = self.tree.interval_positions(ball.center[0], ball.radius)
        if hi <= lo:
            return None
        return self.table.mode_query(lo, hi - 1, stats)

    def size(self) -> dict:
        out = {"tree_nodes": self.n, "span_cells": sum(len(row) for row in self.table.span)}
        if self.jumps is not None:
            out["jump_entries"] = self.jumps.size()
        return out


class Chromatic2D:
    """``metric`` is L2, Linf or L1. ``r`` is the cutting parameter,
    ``fanout`` the range-tree fanout, ``seed`` drives the L2 sample."""

    def __init__(self, points, colors: Sequence[int], metric: Union[str, Metric] = "l2",
                 r: Optional[int] = None, fanout: Union[str, int] = "binary", seed: int = 0,
                 coloring: str = "inherit"):
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        colors = np.asarray(colors, dtype=np.int64)
        if len(pts) != len(colors):
            raise ValueError("points and colors differ in length")
        if len(pts) == 0:
            raise ValueError("empty point set")
        self.metric = _metric(metric)
        if self.metric.kind not in ("l1", "l2", "linf"):
            raise ValueError(f"unsupported 2D metric {self.metric}")
        self.n = len(pts)
        if self.metric.kind == "l2":
            self.finder = SampledIndex(pts, seed)
            self.mode_index = CuttingModeIndex(pts, colors, "l2", r, coloring=coloring)
        else:
            space = rotate_points(pts) if self.metric.kind == "l1" else pts
            self.finder = RangeTree(space, fanout=fanout)
            self.mode_index = CuttingModeIndex(space, colors, "linf", r, coloring=coloring)

    def _space(self, q):
        qx, qy = as_tuple(q)
        return (qx + qy, qx - qy) if self.metric.kind == "l1" else (qx, qy)

    def kth_key(self, q, k: int, stats: Optional[Counter] = None) -> float:
        if self.metric.kind == "l2":
            return self.finder.find_disk_radius(as_tuple(q), k, stats).radius_sq
        return find_square_radius(self.finder, self._space(q), k, stats)

    def mode_in_ball(self, ball: MetricBall, stats: Optional[Counter] = None) -> Optional[ModeAnswer]:
        if ball.metric.kind != self.metric.kind:
            raise ValueError(f"structure built for {self.metric}, got a {ball.metric} ball")
        if self.metric.kind == "l2":
            return self.mode_index.query_mode_ball(ball, stats)
        return self.mode_index.query_mode_ball(MetricBall(self._space(ball.center), ball.radius, LINF), stats)

    def query(self, q, k: int, stats: Optional[Counter] = None) -> ModeAnswer:
        key = self.kth_key(q, k, stats)
        ball = MetricBall.from_key(as_tuple(q), key, self.metric)
        return self.mode_in_ball(ball, stats)

    def size(self) -> dict:
        cut = self.mode_index.cutting
        return {"cutting_leaves": cut.num_leaves, "cutting_nodes": cut.num_nodes,
                "conflict_entries": int(cut.conflict_ptr[-1]), "capped_leaves": int(cut.capped.sum())}


def build_chromatic(points, colors, metric: Union[str, Metric] = "l2", **options):
    """1D or 2D structure depending on the shape of ``points``."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1 or (arr.ndim == 2 and arr.shape[1] == 1):
        return Chromatic1D(arr.reshape(-1), colors, metric, options.get("eps"))
    options.pop("eps", None)
    return Chromatic2D(arr, colors, metric, **options)


def chromatic_query_1d(structure: Chromatic1D, q, k: int, stats: Optional[Counter] = None) -> ModeAnswer:
    return structure.query(q, k, stats)


def chromatic_query_2d(structure: Chromatic2D, q, k: int, metric: Union[str, Metric, None] = None,
                       stats: Optional[Counter] = None) -> ModeAnswer:
    if metric is not None and _metric(metric) != structure.metric:
        raise ValueError(f"structure built for {structure.metric}, not {metric}")
    return structure.query(q, k, stats)


def array_mode_via_chromatic(structure: Chromatic1D, i: int, j: int,
                             stats: Optional[Counter] = None) -> ModeAnswer:
    """Range mode of ``A[i..j]`` for a structure built on points ``0..n-1``
    colored by ``A``: the ball around the midpoint holding ``j - i + 1``
    points is exactly the index range."""
    if not 0 <= i <= j < structure.n:
        raise IndexError(f"bad range ({i}, {j}) for n={structure.n}")
    return structure.query((i + j) / 2, j - i + 1, stats)


def array_structure(values: Sequence[int]) -> Chromatic1D:
    return Chromatic1D(np.arange(len(values), dtype=float), values)


def count_via_range_finding(structure, ball: MetricBall, stats: Optional[Counter] = None) -> int:
    """Points in the closed ball, by binary search over k with k-th radius
    queries: the count is the largest k whose k-th key is within the ball."""
    stats = stats if stats is not None else Counter()
    key = ball.key
    lo, hi = 0, structure.n + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        stats["range_finding_calls"] += 1
        if structure.kth_key(ball.center, mid, stats) <= key:
            lo = mid
        else:
            hi = mid
    return lo


def range_finding_budget(n: int) -> int:
    return math.ceil(math.log2(n + 1)) + 1
