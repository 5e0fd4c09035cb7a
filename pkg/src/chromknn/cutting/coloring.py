"""Base modes of cutting leaves: the mode color among surfaces that cover the
whole leaf box.

``color_cells_naive`` scans every surface for every leaf.
``color_cells_traversal`` walks the leaf adjacency graph depth first with a
:class:`FrequencyTracker` holding the surfaces that cover the current anchor;
moving between anchors only touches the surfaces separating them.
"""
from __future__ import annotations

from collections import Counter
from typing import Optional

import numpy as np

from .octree import Cutting
from .surfaces import FULL
from .tracker import FrequencyTracker


class ReporterError(RuntimeError):
    """The conflict reporter returned a set that fails the exact recheck."""


def color_cells_naive(cutting: Cutting, chunk: int = 256) -> int:
    """Fill base modes by a full scan; returns the number of surface tests."""
    s = cutting.surfaces
    onehot = np.zeros((s.n, s.num_colors), dtype=np.int64)
    onehot[np.arange(s.n), s.colors] = 1
    ids = np.arange(s.n)
    for start in range(0, cutting.num_leaves, chunk):
        stop = min(start + chunk, cutting.num_leaves)
        m = stop - start
        boxes = cutting.boxes[cutting.leaf_node[start:stop]]
        cls = s.classify(np.repeat(boxes, s.n, axis=0), np.tile(ids, m)).reshape(m, s.n)
        counts = (cls == FULL).astype(np.int64) @ onehot
        best = counts.argmax(axis=1)
        freq = counts[np.arange(m), best]
        cutting.base_color[start:stop] = np.where(freq > 0, best, -1)
        cutting.base_freq[start:stop] = freq
    return s.n * cutting.num_leaves


def color_cells_traversal(cutting: Cutting, stats: Optional[Counter] = None, validate: bool = False) -> int:
    """Fill base modes by graph traversal; returns the number of surfaces reported.

    With ``validate`` the tracked set is compared with a full scan at every
    leaf (test use only).
    """
    s = cutting.surfaces
    stats = stats if stats is not None else Counter()
    tracker = FrequencyTracker(s.num_colors, capacity=s.n)
    colors = s.colors.tolist()
    boxes = cutting._boxes_list
    leaf_node = cutting.leaf_node.tolist()
    adj = cutting.adjacency()

    start = 0
    here = cutting.anchor(start)
    inside = s.covers(here)
    for sid in np.flatnonzero(inside).tolist():
        tracker.increment(colors[sid])
    reported = s.n
    inside = inside.tolist()

    def move(a, b):
        nonlocal reported
        cand = s.report_difference(a, b)
        reported += len(cand)
        for sid in set(cand):
            if s.covers_one(a, sid) != inside[sid]:
                raise ReporterError(f"surface {sid} state disagrees with anchor {a}")
            now = s.covers_one(b, sid)
            if now != inside[sid]:
                inside[sid] = now
                if now:
                    tracker.increment(colors[sid])
                else:
                    tracker.decrement(colors[sid])
                stats["tracker_updates"] += 1

    def color_leaf(leaf, anchor):
        nonlocal reported
        box = boxes[leaf_node[leaf]]
        cand = s.report_partial(anchor, box)
        reported += len(cand)
        removed = []
        for sid in set(cand):
            if inside[sid] and s.classify_one(box, sid) != FULL:
                tracker.decrement(colors[sid])
                removed.append(sid)
        mode = tracker.mode()
        if validate:
            full = s.classify(np.repeat(np.asarray(box)[None, :], s.n, axis=0), np.arange(s.n)) == FULL
            expect = np.bincount(s.colors[full], minlength=s.num_colors)
            if not np.array_equal(np.asarray(s.covers(anchor)), np.asarray(inside)):
                raise ReporterError(f"tracked set diverged at leaf {leaf}")
            if (mode.frequency if mode else 0) != int(expect.max(initial=0)):
                raise ReporterError(f"base mode mismatch at leaf {leaf}")
        if mode is None:
            cutting.base_color[leaf], cutting.base_freq[leaf] = -1, 0
        else:
            cutting.base_color[leaf], cutting.base_freq[leaf] = mode.color, mode.frequency
        for sid in removed:
            tracker.increment(colors[sid])

    seen = [False] * cutting.num_leaves
    seen[start] = True
    color_leaf(start, here)
    stack = [(start, iter(adj[start]))]
    while stack:
        leaf, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            stack.pop()
            if stack:
                move(cutting.anchor(leaf), cutting.anchor(stack[-1][0]))
            continue
        if seen[nxt]:
            continue
        seen[nxt] = True
        there = cutting.anchor(nxt)
        move(cutting.anchor(leaf), there)
        color_leaf(nxt, there)
        stack.append((nxt, iter(adj[nxt])))
    if not all(seen):
        raise RuntimeError("leaf adjacency graph is disconnected")
    stats["reported"] += reported
    return reported
