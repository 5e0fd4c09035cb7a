"""Adaptive box cutting of surface space.

Boxes are halved, level by level and fully vectorised, until at most
``tau = ceil(n / r)`` surfaces cross a box. Each split halves the axis along
which the crossing surfaces vary the most over the box. Each leaf keeps its
explicit conflict list. Point location is a root-to-leaf
descent.
"""
from __future__ import annotations

import math
from typing import List, Optional, Set, Tuple

import numpy as np

from .surfaces import CROSS, FULL, _SurfaceSet

# largest frontier-by-colors count table kept while inheriting base modes
_INHERIT_LIMIT = 20_000_000
# default node budget; a frontier that would exceed it is capped instead
MAX_NODES = 4_000_000


class Cutting:
    def __init__(self, surfaces: _SurfaceSet, r: Optional[int] = None, depth_cap: int = 40,
                 inherit_modes: bool = True, max_nodes: int = MAX_NODES):
        n = surfaces.n
        if n == 0:
            raise ValueError("cannot cut an empty surface set")
        self.surfaces = surfaces
        self.r = r if r is not None else max(1, math.ceil(n ** (1 / 3)))
        if not 1 <= self.r <= n:
            raise ValueError(f"r={self.r} out of range 1..{n}")
        self.tau = math.ceil(n / self.r)
        self.depth_cap = depth_cap
        # tau < 2 cannot separate two intersecting surfaces, so refinement
        # would only stop at the depth cap; the budget bounds memory there
        self.max_nodes = max_nodes
        self.base_color = np.empty(0, dtype=np.int64)
        self.base_freq = np.empty(0, dtype=np.int64)
        # set when base modes were filled during construction
        self.modes_inherited = False
        self._build(inherit_modes)
        if not self.modes_inherited:
            self.base_color = np.full(self.num_leaves, -1, dtype=np.int64)
            self.base_freq = np.zeros(self.num_leaves, dtype=np.int64)
        self._adjacency: Optional[List[List[int]]] = None

    # construction --------------------------------------------------------

    def _build(self, inherit: bool):
        """Refine level by level. With ``inherit`` each frontier box also carries
        per-color counts of the surfaces covering it whole; a child inherits its
        parent's counts plus the parent's crossers that cover the child."""
        s = self.surfaces
        nc = max(s.num_colors, 1)
        root = np.asarray(s.root_box(), dtype=float)
        boxes = [root[None, :]]
        depth = [np.zeros(1, dtype=np.int64)]
        split_nodes, split_axes, split_children = [], [], []
        count = 1

        ids = np.arange(s.n)
        cls = s.classify(np.repeat(root[None, :], s.n, axis=0), ids)
        pair_node = np.zeros(int(np.count_nonzero(cls == CROSS)), dtype=np.int64)
        pair_sid = ids[cls == CROSS]
        counts = np.bincount(s.colors[cls == FULL], minlength=nc)[None, :] if inherit else None
        leaf_counts = []

        frontier = np.array([0], dtype=np.int64)
        frontier_boxes = root[None, :]
        level = 0
        leaf_nodes, leaf_capped = [], []
        conflict_chunks: List[Tuple[np.ndarray, np.ndarray]] = []

        while len(frontier):
            local = np.searchsorted(frontier, pair_node)
            crossings = np.bincount(local, minlength=len(frontier))
            done = crossings <= self.tau
            over = count + 2 * int(np.count_nonzero(~done)) > self.max_nodes
            capped = ~done & (level >= self.depth_cap or over)
            stop = done | capped

            for idx in np.flatnonzero(stop):
                leaf_nodes.append(int(frontier[idx]))
                leaf_capped.append(bool(capped[idx]))
            if counts is not None:
                leaf_counts.append(counts[stop])
            keep_pairs = stop[local]
            conflict_chunks.append((pair_node[keep_pairs], pair_sid[keep_pairs]))

            split = np.flatnonzero(~stop)
            if not len(split):
                break
            m = len(split)
            parent = frontier_boxes[split]
            split_pos = np.full(len(frontier), -1, dtype=np.int64)
            split_pos[split] = np.arange(m)
            sel = ~keep_pairs
            par = split_pos[local[sel]]
            sid = pair_sid[sel]
            axis = self._split_axis(par, sid, m, parent)

            rows = np.arange(m)
            mid = (parent[rows, 2 * axis] + parent[rows, 2 * axis + 1]) / 2
            lo, hi = parent.copy(), parent.copy()
            lo[rows, 2 * axis + 1] = mid
            hi[rows, 2 * axis] = mid
            child_boxes = np.stack([lo, hi], axis=1).reshape(-1, 6)
            new_ids = count + np.arange(2 * m)
            split_nodes.append(frontier[split])
            split_axes.append(axis)
            split_children.append(new_ids[0::2])
            count += 2 * m
            boxes.append(child_boxes)
            depth.append(np.full(2 * m, level + 1, dtype=np.int64))

            slot = np.stack([2 * par, 2 * par + 1], axis=1).ravel()
            rep_sid = np.repeat(sid, 2)
            cls = s.classify(child_boxes[slot], rep_sid)
            crossing = cls == CROSS
            if counts is not None and 2 * m * nc > _INHERIT_LIMIT:
                counts, leaf_counts = None, []
                inherit = False
            if counts is not None:
                full = cls == FULL
                counts = np.repeat(counts[split], 2, axis=0)
                counts += np.bincount(slot[full] * nc + s.colors[rep_sid[full]],
                                      minlength=2 * m * nc).reshape(2 * m, nc)
            pair_node = new_ids[slot[crossing]]
            pair_sid = rep_sid[crossing]
            order = np.argsort(pair_node, kind="stable")
            pair_node, pair_sid = pair_node[order], pair_sid[order]

            frontier = new_ids
            frontier_boxes = child_boxes
            level += 1

        self.boxes = np.concatenate(boxes)
        self.depth = np.concatenate(depth)
        self.num_nodes = count
        self.first_child = np.full(count, -1, dtype=np.int64)
        self.split_axis = np.full(count, -1, dtype=np.int64)
        if split_nodes:
            nodes = np.concatenate(split_nodes)
            self.first_child[nodes] = np.concatenate(split_children)
            self.split_axis[nodes] = np.concatenate(split_axes)
        self._first_child_list = self.first_child.tolist()
        self._split_axis_list = self.split_axis.tolist()
        self._boxes_list = self.boxes.tolist()

        self.leaf_node = np.array(leaf_nodes, dtype=np.int64)
        self.capped = np.array(leaf_capped, dtype=bool)
        self.num_leaves = len(leaf_nodes)
        self.leaf_of_node = np.full(count, -1, dtype=np.int64)
        self.leaf_of_node[self.leaf_node] = np.arange(self.num_leaves)
        self._leaf_of_node_list = self.leaf_of_node.tolist()

        if inherit:
            table = np.concatenate(leaf_counts)
            best = table.argmax(axis=1)
            freq = table[np.arange(self.num_leaves), best]
            self.base_color = np.where(freq > 0, best, -1)
            self.base_freq = freq
            self.modes_inherited = True

        nodes = np.concatenate([c[0] for c in conflict_chunks])
        sids = np.concatenate([c[1] for c in conflict_chunks])
        leaves = self.leaf_of_node[nodes]
        order = np.argsort(leaves, kind="stable")
        self.conflict_ids = sids[order]
        self.conflict_ptr = np.concatenate(([0], np.cumsum(np.bincount(leaves, minlength=self.num_leaves))))

    def _split_axis(self, par, sid, m, parent):
        """Axis contributing most to the crossers' spread over the box: box
        extent times the mean absolute slope of the crossers along it."""
        ax, ay = self.surfaces.slopes(sid)
        cnt = np.maximum(np.bincount(par, minlength=m), 1)
        sx = np.bincount(par, weights=ax, minlength=m) / cnt
        sy = np.bincount(par, weights=ay, minlength=m) / cnt
        ext = parent[:, 1::2] - parent[:, 0::2]
        spread = np.stack([sx * ext[:, 0], sy * ext[:, 1], ext[:, 2]], axis=1)
        return spread.argmax(axis=1)

    # queries -------------------------------------------------------------

    @property
    def root_box(self) -> np.ndarray:
        return self.boxes[0]

    def leaf_box(self, leaf: int) -> np.ndarray:
        return self.boxes[self.leaf_node[leaf]]

    def anchor(self, leaf: int) -> Tuple[float, float, float]:
        b = self._boxes_list[int(self.leaf_node[leaf])]
        return ((b[0] + b[1]) / 2, (b[2] + b[3]) / 2, (b[4] + b[5]) / 2)

    def conflicts(self, leaf: int) -> np.ndarray:
        return self.conflict_ids[self.conflict_ptr[leaf]:self.conflict_ptr[leaf + 1]]

    def conflict_sizes(self) -> np.ndarray:
        return np.diff(self.conflict_ptr)

    def in_root(self, w) -> bool:
        b = self._boxes_list[0]
        return b[0] <= w[0] <= b[1] and b[2] <= w[1] <= b[3] and b[4] <= w[2] <= b[5]

    def locate(self, w) -> int:
        """Leaf whose closed box contains ``w`` (which must lie in the root box)."""
        node = 0
        fc, axes, boxes = self._first_child_list, self._split_axis_list, self._boxes_list
        steps = 0
        while fc[node] >= 0:
            a = axes[node]
            b = boxes[node]
            node = fc[node] + (w[a] >= (b[2 * a] + b[2 * a + 1]) / 2)
            steps += 1
        self.last_locate_steps = steps
        return self._leaf_of_node_list[node]

    def size(self) -> int:
        return self.num_leaves

    # leaf adjacency ----------------------------------------------------------

    def adjacency(self) -> List[List[int]]:
        """Leaves whose boxes share a piece of face with positive area."""
        if self._adjacency is not None:
            return self._adjacency
        boxes = self._boxes_list
        root = boxes[0]
        edges: Set[Tuple[int, int]] = set()
        for leaf in range(self.num_leaves):
            b = boxes[int(self.leaf_node[leaf])]
            for axis in range(3):
                face = b[2 * axis + 1]
                if face == root[2 * axis + 1]:
                    continue
                for other in self._across(b, axis, face):
                    edges.add((leaf, other))
        adj: List[List[int]] = [[] for _ in range(self.num_leaves)]
        for u, v in sorted(edges):
            adj[u].append(v)
            adj[v].append(u)
        self._adjacency = adj
        return adj

    def _across(self, b, axis: int, face: float) -> List[int]:
        """Leaves whose lower face on ``axis`` lies at ``face`` and overlaps box ``b``."""
        fc, boxes = self._first_child_list, self._boxes_list
        others = [a for a in range(3) if a != axis]
        out, stack = [], [0]
        while stack:
            nd = stack.pop()
            c = boxes[nd]
            if not (c[2 * axis] <= face <= c[2 * axis + 1]):
                continue
            if any(c[2 * a] >= b[2 * a + 1] or c[2 * a + 1] <= b[2 * a] for a in others):
                continue
            if fc[nd] < 0:
                if c[2 * axis] == face:
                    out.append(self._leaf_of_node_list[nd])
            else:
                stack.append(fc[nd])
                stack.append(fc[nd] + 1)
        return out


def build_cutting(surfaces: _SurfaceSet, r: Optional[int] = None, depth_cap: int = 40,
                  max_nodes: int = MAX_NODES) -> Cutting:
    return Cutting(surfaces, r, depth_cap, max_nodes=max_nodes)
