"""Two-level range trees for closed-rectangle counting and reporting, and the
Linf / L1 range finding built on top of them."""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from collections import Counter
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

Rect = Tuple[float, float, float, float]  # xlo, xhi, ylo, yhi


def parse_fanout(spec: Union[str, int, None], n: int) -> int:
    """``"binary"`` -> 2, ``"delta:<d>"`` -> ceil(n^(d/2)), ints pass through."""
    if spec is None or spec == "binary":
        return 2
    if isinstance(spec, int):
        if spec < 2:
            raise ValueError("fanout must be >= 2")
        return spec
    if isinstance(spec, str) and spec.startswith("delta"):
        delta = float(spec.split(":", 1)[1]) if ":" in spec else 0.25
        if not 0 < delta <= 1:
            raise ValueError("delta must lie in (0, 1]")
        return max(2, math.ceil(max(n, 1) ** (delta / 2)))
    raise ValueError(f"bad fanout {spec!r}")


class _Node:
    __slots__ = ("lo", "hi", "ys", "ids", "children")

    def __init__(self, lo, hi, ys, ids, children):
        self.lo = lo
        self.hi = hi
        self.ys = ys
        self.ids = ids
        self.children = children


class RangeTree:
    """Primary tree on x with fanout ``f``; each node keeps its canonical
    subset sorted by y (one point per leaf)."""

    def __init__(self, points, ids: Optional[Sequence[int]] = None, fanout: Union[str, int, None] = "binary"):
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        self.n = len(pts)
        self.fanout = parse_fanout(fanout, self.n)
        ids = np.arange(self.n) if ids is None else np.asarray(ids, dtype=np.int64)
        order = np.lexsort((pts[:, 1], pts[:, 0]))
        self.px = pts[order, 0]
        self.py = pts[order, 1]
        self.pid = ids[order]
        self.xs: List[float] = self.px.tolist()
        self.ys_sorted: List[float] = sorted(self.py.tolist())
        self.xs_sorted = self.xs
        self.levels: List[List[_Node]] = []
        self.root = self._build(0, self.n, 0) if self.n else None

    def _build(self, lo: int, hi: int, depth: int) -> _Node:
        seg = np.argsort(self.py[lo:hi], kind="stable")
        ys = self.py[lo:hi][seg].tolist()
        ids = self.pid[lo:hi][seg].tolist()
        size = hi - lo
        children = []
        if size > 1:
            parts = min(self.fanout, size)
            bounds = [lo + (size * p) // parts for p in range(parts + 1)]
            children = [self._build(a, b, depth + 1) for a, b in zip(bounds, bounds[1:]) if b > a]
        node = _Node(lo, hi, ys, ids, children)
        while len(self.levels) <= depth:
            self.levels.append([])
        self.levels[depth].append(node)
        return node

    @property
    def height(self) -> int:
        return len(self.levels)

    def size(self) -> int:
        """Total stored entries across all associated structures."""
        return sum(len(node.ys) for level in self.levels for node in level)

    def _x_range(self, rect: Rect) -> Tuple[int, int]:
        xlo, xhi, ylo, yhi = rect
        if xlo > xhi or ylo > yhi:
            raise ValueError(f"degenerate rectangle {rect}")
        return bisect_left(self.xs, xlo), bisect_right(self.xs, xhi)

    def _canonical(self, a: int, b: int, stats: Optional[Counter]) -> List[_Node]:
        out = []
        stack = [self.root] if self.root is not None and a < b else []
        visited = 0
        while stack:
            node = stack.pop()
            visited += 1
            if a <= node.lo and node.hi <= b:
                out.append(node)
            else:
                for child in node.children:
                    if child.hi > a and child.lo < b:
                        stack.append(child)
        if stats is not None:
            stats["tree_nodes"] += visited
        return out

    def count_rect(self, rect: Rect, stats: Optional[Counter] = None) -> int:
        a, b = self._x_range(rect)
        ylo, yhi = rect[2], rect[3]
        total = 0
        for node in self._canonical(a, b, stats):
            total += bisect_right(node.ys, yhi) - bisect_left(node.ys, ylo)
        if stats is not None:
            stats["count_queries"] += 1
        return total

    def report_rect(self, rect: Rect, stats: Optional[Counter] = None) -> List[int]:
        a, b = self._x_range(rect)
        ylo, yhi = rect[2], rect[3]
        out: List[int] = []
        for node in self._canonical(a, b, stats):
            out.extend(node.ids[bisect_left(node.ys, ylo):bisect_right(node.ys, yhi)])
        if stats is not None:
            stats["report_queries"] += 1
            stats["reported"] += len(out)
        return out


def square(q: Sequence[float], r: float) -> Rect:
    return (q[0] - r, q[0] + r, q[1] - r, q[1] + r)


def _search_side(tree: RangeTree, q, k, coords: List[float], axis_q: float, below: bool,
                 stats: Optional[Counter]) -> float:
    """Smallest candidate radius on one side of ``axis_q`` whose square holds
    ``k`` points, or ``inf`` when only the infinite sentinel qualifies."""
    if below:
        # coordinates <= axis_q, radii decrease with index; index 0 is the sentinel
        cands = coords[:bisect_right(coords, axis_q)]
        radius = lambda i: axis_q - cands[i - 1]
    else:
        start = bisect_left(coords, axis_q)
        cands = coords[start:]
        cands = cands[::-1]
        radius = lambda i: cands[i - 1] - axis_q
    m = len(cands)
    lo, hi = 0, m + 1  # pred(lo) holds (sentinel), pred(hi) treated as false
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if stats is not None:
            stats["counting_calls"] += 1
        if tree.count_rect(square(q, radius(mid))) >= k:
            lo = mid
        else:
            hi = mid
    return math.inf if lo == 0 else radius(lo)


def find_square_radius(tree: RangeTree, q: Sequence[float], k: int, stats: Optional[Counter] = None) -> float:
    """Linf distance from ``q`` to its k-th nearest point.

    The answer is ``|q_x - p_x|`` or ``|q_y - p_y|`` for the k-th neighbour
    ``p``, so four binary searches over coordinate-induced radii suffice.
    """
    if not 1 <= k <= tree.n:
        raise ValueError(f"k={k} out of range 1..{tree.n}")
    best = math.inf
    for coords, axis_q in ((tree.xs_sorted, q[0]), (tree.ys_sorted, q[1])):
        for below in (True, False):
            best = min(best, _search_side(tree, q, k, coords, axis_q, below, stats))
    return best


def rotate_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    return np.column_stack((pts[:, 0] + pts[:, 1], pts[:, 0] - pts[:, 1]))


def find_l1_radius(rotated_tree: RangeTree, q: Sequence[float], k: int, stats: Optional[Counter] = None) -> float:
    """L1 radius, given a tree built over :func:`rotate_points` coordinates."""
    return find_square_radius(rotated_tree, (q[0] + q[1], q[0] - q[1]), k, stats)
