"""Exact L2 range finding guided by a random sample.

Distances from ``q`` to a sample of about sqrt(n) points split the plane into
annuli. Binary search with disk counting finds the annulus holding the k-th
nearest point; its points are reported and the right one selected. The
sample only affects running time, never the answer.
"""
from __future__ import annotations

import math
from collections import Counter
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .kdtree import KDTree


class DiskRadius(NamedTuple):
    radius: float
    radius_sq: float
    annulus_size: int


class SampledIndex:
    def __init__(self, points, seed: int = 0, backend: Optional[KDTree] = None):
        self.points = np.asarray(points, dtype=float).reshape(-1, 2)
        self.n = len(self.points)
        rng = np.random.default_rng(seed)
        prob = 1.0 / math.sqrt(self.n) if self.n else 0.0
        keep = rng.random(self.n) < prob
        self.sample_ids = np.flatnonzero(keep)
        self.sample = self.points[self.sample_ids]
        self.backend = backend if backend is not None else KDTree(self.points)

    def find_disk_radius(self, q: Sequence[float], k: int, stats: Optional[Counter] = None) -> DiskRadius:
        if not 1 <= k <= self.n:
            raise ValueError(f"k={k} out of range 1..{self.n}")
        qx, qy = float(q[0]), float(q[1])
        d = self.sample - (qx, qy)
        ring = np.sort(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]).tolist()
        m = len(ring)

        # ring[-1] is an implicit empty radius, ring[m] an implicit infinite one
        def count(i):
            if stats is not None:
                stats["counting_calls"] += 1
            return self.backend.disk_count(qx, qy, ring[i], stats)

        lo, hi = -1, m           # count(lo) < k, count(hi) >= k
        inner = 0
        while hi - lo > 1:
            mid = (lo + hi) // 2
            c = count(mid)
            if c >= k:
                hi = mid
            else:
                lo, inner = mid, c
        inner_sq = ring[lo] if lo >= 0 else -1.0
        outer_sq = ring[hi] if hi < m else math.inf
        ids = self.backend.annulus_report(qx, qy, inner_sq, outer_sq, stats)
        pts = self.points[ids]
        dd = pts - (qx, qy)
        dist_sq = np.sort(dd[:, 0] * dd[:, 0] + dd[:, 1] * dd[:, 1])
        key = float(dist_sq[k - inner - 1])
        if stats is not None:
            stats["annulus_reported"] += len(ids)
        return DiskRadius(math.sqrt(key), key, len(ids))


def build_sampled_index(points, seed: int = 0) -> SampledIndex:
    return SampledIndex(points, seed)


def find_disk_radius(index: SampledIndex, q, k: int, stats: Optional[Counter] = None) -> float:
    return index.find_disk_radius(q, k, stats).radius
