"""Brute-force reference answers. Slow on purpose; everything else is checked against these."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .geometry import Metric, MetricBall, ModeAnswer, as_tuple


def _points(coords) -> np.ndarray:
    arr = np.asarray(coords, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    return arr


def key_distances(coords, q, metric: Metric) -> np.ndarray:
    """Vector of :func:`geometry.key_distance` from every point to ``q``."""
    pts = _points(coords)
    q = np.asarray(as_tuple(q), dtype=float)
    if pts.shape[1] != q.shape[0]:
        raise ValueError("dimension mismatch")
    if not metric.legal_in(pts.shape[1]):
        raise ValueError(f"metric {metric} is only legal in 1D")
    diff = np.abs(pts - q)
    if pts.shape[1] == 1:
        return diff[:, 0]
    if metric.kind == "l1":
        return diff[:, 0] + diff[:, 1]
    if metric.kind == "linf":
        return np.maximum(diff[:, 0], diff[:, 1])
    return diff[:, 0] * diff[:, 0] + diff[:, 1] * diff[:, 1]


def _key_to_radius(key: float, dim: int, metric: Metric) -> float:
    return math.sqrt(key) if dim == 2 and metric.kind == "l2" else float(key)


def oracle_kth_key(coords, q, k: int, metric: Metric) -> float:
    d = key_distances(coords, q, metric)
    if not 1 <= k <= len(d):
        raise ValueError(f"k={k} out of range 1..{len(d)}")
    return float(np.partition(d, k - 1)[k - 1])


def oracle_kth_radius(coords, q, k: int, metric: Metric) -> float:
    dim = _points(coords).shape[1]
    return _key_to_radius(oracle_kth_key(coords, q, k, metric), dim, metric)


def mode_of(colors) -> Optional[ModeAnswer]:
    """Mode of a color multiset; ties go to the smallest label."""
    colors = np.asarray(colors, dtype=np.int64)
    if colors.size == 0:
        return None
    counts = np.bincount(colors)
    c = int(np.argmax(counts))
    return ModeAnswer(c, int(counts[c]))


def ball_mask(coords, ball: MetricBall) -> np.ndarray:
    return key_distances(coords, ball.center, ball.metric) <= ball.key


def oracle_mode_in_ball(coords, colors, ball: MetricBall) -> Optional[ModeAnswer]:
    mask = ball_mask(coords, ball)
    return mode_of(np.asarray(colors)[mask])


def oracle_range_count(coords, ball: MetricBall) -> int:
    return int(np.count_nonzero(ball_mask(coords, ball)))


@dataclass(frozen=True)
class OracleAnswer:
    mode_color: int
    mode_frequency: int
    kth_radius: float
    kth_key: float
    knn_ids: List[int]


def oracle_chromatic(coords, colors, q, k: int, metric: Metric) -> OracleAnswer:
    pts = _points(coords)
    d = key_distances(pts, q, metric)
    if not 1 <= k <= len(d):
        raise ValueError(f"k={k} out of range 1..{len(d)}")
    order = np.argsort(d, kind="stable")
    key = float(d[order[k - 1]])
    inside = d <= key
    mode = mode_of(np.asarray(colors)[inside])
    return OracleAnswer(
        mode_color=mode.color,
        mode_frequency=mode.frequency,
        kth_radius=_key_to_radius(key, pts.shape[1], metric),
        kth_key=key,
        knn_ids=[int(i) for i in order[:k]],
    )
