"""Range mode queries for disks (L2) and squares (Linf) on top of a cutting.

For a query ball encoded as ``w``, the surfaces covering ``w`` split into the
ones covering the whole leaf box containing ``w`` (their mode is stored at the
leaf) and the leaf's conflict surfaces that happen to cover ``w``. A mode of
the union is either a conflict color or the stored mode, so only those
candidates need exact per-color counts.
"""
from __future__ import annotations

from collections import Counter
from typing import Optional

import numpy as np

from ..geometry import MetricBall, ModeAnswer
from ..oracle import mode_of, oracle_mode_in_ball
from .coloring import color_cells_naive, color_cells_traversal
from .octree import Cutting
from .surfaces import ColorCounter, surfaces_for


class CuttingModeIndex:
    """``kind`` is ``"l2"`` (planes) or ``"linf"`` (pyramids)."""

    def __init__(self, points, colors, kind: str = "l2", r: Optional[int] = None,
                 depth_cap: int = 40, coloring: str = "inherit", pad: float = 0.0):
        self.points = np.asarray(points, dtype=float).reshape(-1, 2)
        self.colors = np.asarray(colors, dtype=np.int64)
        self.kind = kind
        self.surfaces = surfaces_for(self.points, self.colors, kind, pad)
        if coloring not in ("inherit", "naive", "traversal"):
            raise ValueError(f"unknown coloring {coloring!r}")
        self.cutting = Cutting(self.surfaces, r, depth_cap, inherit_modes=coloring == "inherit")
        self.coloring_work = 0
        if coloring == "naive" or not self.cutting.modes_inherited:
            self.coloring_work = color_cells_naive(self.cutting)
        elif coloring == "traversal":
            self.coloring_work = color_cells_traversal(self.cutting)
        self.counter = ColorCounter(self.points, self.colors, self.surfaces.kind)
        self.global_mode = mode_of(self.colors)
        self._colors_list = self.colors.tolist()

    def query_mode_ball(self, ball: MetricBall, stats: Optional[Counter] = None) -> Optional[ModeAnswer]:
        if ball.metric.kind != self.kind:
            raise ValueError(f"index built for {self.kind}, got a {ball.metric} ball")
        stats = stats if stats is not None else Counter()
        w = self.surfaces.query_point(ball)
        cut = self.cutting
        if not cut.in_root(w):
            root = cut.root_box
            in_xy = root[0] <= w.x <= root[1] and root[2] <= w.y <= root[3]
            # below every surface over the root rectangle: everything is inside
            if in_xy and ((self.kind == "l2" and w.z < root[4]) or (self.kind == "linf" and w.z > root[5])):
                return self.global_mode
            if in_xy and self.kind == "l2" and w.z > root[5]:
                return None
            stats["fallback_scans"] += 1
            return oracle_mode_in_ball(self.points, self.colors, ball)

        leaf = cut.locate(w)
        stats["locate_steps"] += cut.last_locate_steps
        if cut.capped[leaf]:
            stats["capped_leaf_hits"] += 1
        conflicts = cut.conflicts(leaf)
        hit = conflicts[self.surfaces.covers_ids(w, conflicts)] if len(conflicts) else conflicts
        candidates = set(self.colors[hit].tolist())
        if cut.base_color[leaf] >= 0:
            candidates.add(int(cut.base_color[leaf]))
        stats["candidate_colors"] += len(candidates)
        stats["conflict_scanned"] += len(conflicts)
        stats["max_candidate_colors"] = max(stats["max_candidate_colors"], len(candidates))

        best: Optional[ModeAnswer] = None
        for c in sorted(candidates):
            f = self.counter.count(c, ball.center, ball.key, stats)
            if f > 0 and (best is None or f > best.frequency):
                best = ModeAnswer(c, f)
        return best

    def candidate_colors(self, ball: MetricBall):
        """Candidate set used by a query (for audits)."""
        w = self.surfaces.query_point(ball)
        leaf = self.cutting.locate(w)
        conflicts = self.cutting.conflicts(leaf)
        hit = conflicts[self.surfaces.covers_ids(w, conflicts)]
        out = set(self.colors[hit].tolist())
        if self.cutting.base_color[leaf] >= 0:
            out.add(int(self.cutting.base_color[leaf]))
        return out


def query_mode_ball(index: CuttingModeIndex, ball: MetricBall, stats: Optional[Counter] = None):
    return index.query_mode_ball(ball, stats)
