import math
from collections import Counter

import numpy as np
import pytest

from chromknn.cutting import (CROSS, FULL, NONE, Cutting, CuttingModeIndex, ReporterError,
                              color_cells_naive, color_cells_traversal, surfaces_for)
from chromknn.geometry import L2, LINF, MetricBall
from chromknn.oracle import ball_mask, key_distances, oracle_mode_in_ball

from conftest import grid_points

KINDS = ("l2", "linf")


def full_scan(cut, leaf):
    s = cut.surfaces
    box = cut.leaf_box(leaf)
    return s.classify(np.repeat(box[None, :], s.n, axis=0), np.arange(s.n))


def instance(rng, n, colors=4):
    return grid_points(rng, n), rng.integers(0, colors, size=n)


def test_single_surface():
    for kind in KINDS:
        cut = Cutting(surfaces_for(np.array([[1.0, 2.0]]), np.array([0]), kind), r=1)
        assert cut.num_leaves == 1 and len(cut.conflicts(0)) <= 1


def test_bad_r():
    s = surfaces_for(np.zeros((3, 2)), np.zeros(3, dtype=int), "l2")
    with pytest.raises(ValueError):
        Cutting(s, r=4)


@pytest.mark.parametrize("kind", KINDS)
def test_soundness_by_sampling(rng, kind):
    pts, colors = instance(rng, 40)
    cut = Cutting(surfaces_for(pts, colors, kind), r=3)
    s = cut.surfaces
    for leaf in range(0, cut.num_leaves, max(1, cut.num_leaves // 40)):
        box = cut.leaf_box(leaf)
        u = rng.random((300, 3))
        u[:8] = [[i & 1, (i >> 1) & 1, (i >> 2) & 1] for i in range(8)]
        samples = box[0::2] + u * (box[1::2] - box[0::2])
        cover = np.array([s.covers(tuple(w)) for w in samples])
        cls = full_scan(cut, leaf)
        assert np.all(cover[:, cls == FULL])
        assert not np.any(cover[:, cls == NONE])
        mixed = cover.any(axis=0) & ~cover.all(axis=0)
        assert np.all(cls[mixed] == CROSS)


@pytest.mark.parametrize("kind", KINDS)
def test_conflict_lists_match_scan(rng, kind):
    pts, colors = instance(rng, 500)
    cut = Cutting(surfaces_for(pts, colors, kind), r=8, depth_cap=40)
    assert not cut.capped.any()
    for leaf in range(cut.num_leaves):
        crossing = np.flatnonzero(full_scan(cut, leaf) == CROSS)
        assert len(crossing) <= cut.tau
        assert sorted(cut.conflicts(leaf).tolist()) == crossing.tolist()


@pytest.mark.parametrize("kind", KINDS)
def test_collinear_points(rng, kind):
    n = 120
    x = np.sort(rng.choice(4096, size=n, replace=False)) / 16.0
    pts = np.stack([x, 0.5 * x + 3], axis=1)
    cut = Cutting(surfaces_for(pts, rng.integers(0, 3, size=n), kind), r=5)
    assert not cut.capped.any()
    assert cut.conflict_sizes().max() <= math.ceil(n / 5)


@pytest.mark.parametrize("kind", KINDS)
def test_locate_contains_point(rng, kind):
    pts, colors = instance(rng, 200)
    cut = Cutting(surfaces_for(pts, colors, kind))
    root = cut.root_box
    for _ in range(300):
        w = root[0::2] + rng.random(3) * (root[1::2] - root[0::2])
        b = cut.leaf_box(cut.locate(w))
        assert np.all(b[0::2] <= w) and np.all(w <= b[1::2])


@pytest.mark.parametrize("kind", KINDS)
def test_inherited_modes_match_naive(rng, kind):
    for trial in range(5):
        pts, colors = instance(rng, int(rng.integers(20, 300)), int(rng.integers(2, 9)))
        s = surfaces_for(pts, colors, kind)
        a = Cutting(s)
        b = Cutting(s, inherit_modes=False)
        assert a.modes_inherited and not b.modes_inherited
        color_cells_naive(b)
        assert np.array_equal(a.base_freq, b.base_freq)


def test_all_same_color(rng):
    pts = grid_points(rng, 60)
    cut = Cutting(surfaces_for(pts, np.zeros(60, dtype=int), "l2"), inherit_modes=False)
    color_cells_naive(cut)
    for leaf in range(cut.num_leaves):
        assert cut.base_freq[leaf] == int(np.sum(full_scan(cut, leaf) == FULL))


@pytest.mark.parametrize("kind", KINDS)
def test_traversal_matches_naive(rng, kind):
    pts, colors = instance(rng, 300, 5)
    s = surfaces_for(pts, colors, kind)
    naive = Cutting(s, r=6, inherit_modes=False)
    work = color_cells_naive(naive)
    trav = Cutting(s, r=6, inherit_modes=False)
    stats = Counter()
    reported = color_cells_traversal(trav, stats, validate=True)
    assert np.array_equal(naive.base_freq, trav.base_freq)
    assert reported == stats["reported"] and reported < work


def test_traversal_small_instance():
    pts = np.array([[0.0, 0.0], [4.0, 0.0], [0.0, 4.0], [3.0, 3.0], [1.0, 2.5], [2.0, 0.5]])
    s = surfaces_for(pts, np.array([0, 1, 1, 0, 2, 1]), "linf")
    cut = Cutting(s, r=2, inherit_modes=False)
    assert cut.num_leaves > 1
    color_cells_traversal(cut, validate=True)
    assert np.array_equal(cut.base_freq, Cutting(s, r=2).base_freq)


def test_single_leaf_traversal():
    s = surfaces_for(np.array([[1.0, 1.0], [2.0, 3.0]]), np.array([0, 1]), "l2")
    cut = Cutting(s, r=1, inherit_modes=False)
    assert cut.num_leaves == 1
    color_cells_traversal(cut, validate=True)
    assert cut.base_freq[0] == Cutting(s, r=1).base_freq[0]


def test_node_budget_caps_instead_of_exhausting_memory():
    pts = np.array([[0.0, 0.0], [4.0, 0.0], [0.0, 4.0]])
    cut = Cutting(surfaces_for(pts, np.array([0, 1, 1]), "linf"), r=3, max_nodes=5000)
    assert cut.num_nodes <= 5000 and cut.capped.any()


def test_traversal_rejects_bad_reporter(rng):
    pts, colors = instance(rng, 80)
    cut = Cutting(surfaces_for(pts, colors, "l2"), r=4, inherit_modes=False)
    assert cut.num_leaves > 1
    cut.surfaces.report_difference = lambda a, b, stats=None: []
    with pytest.raises(ReporterError):
        color_cells_traversal(cut, validate=True)


def test_adjacency_is_symmetric_and_connected(rng):
    pts, colors = instance(rng, 150)
    cut = Cutting(surfaces_for(pts, colors, "linf"))
    adj = cut.adjacency()
    for u, nbrs in enumerate(adj):
        for v in nbrs:
            assert u in adj[v]
    seen, stack = {0}, [0]
    while stack:
        for v in adj[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    assert len(seen) == cut.num_leaves


def test_query_examples():
    pts = np.array([(0, 0), (1, 0), (5, 5)], dtype=float)
    index = CuttingModeIndex(pts, [0, 0, 1], "l2")
    assert index.query_mode_ball(MetricBall((0.5, 0), 1.0, L2)) == (0, 2)
    assert index.query_mode_ball(MetricBall((20, 20), 0.5, L2)) is None
    sq = CuttingModeIndex(pts, [0, 1, 1], "linf")
    assert sq.query_mode_ball(MetricBall((2.5, 2.5), 10.0, LINF)).frequency == 2
    with pytest.raises(ValueError):
        sq.query_mode_ball(MetricBall((0, 0), 1.0, L2))


@pytest.mark.parametrize("kind,metric", [("l2", L2), ("linf", LINF)])
def test_random_queries_match_oracle(rng, kind, metric):
    n = 800
    pts, colors = instance(rng, n, 6)
    index = CuttingModeIndex(pts, colors, kind)
    cut = index.cutting
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    stats = Counter()
    for _ in range(200):
        c = tuple(lo + rng.random(2) * (hi - lo))
        key = float(key_distances(pts, c, metric)[rng.integers(n)])
        ball = MetricBall.from_key(c, key, metric)
        got = index.query_mode_ball(ball, stats)
        ref = oracle_mode_in_ball(pts, colors, ball)
        assert got.frequency == ref.frequency
        if cut.in_root(index.surfaces.query_point(ball)):
            cands = index.candidate_colors(ball)
            assert len(cands) <= cut.tau + 1
            inside = colors[ball_mask(pts, ball)]
            assert max(int(np.sum(inside == col)) for col in cands) == ref.frequency
    assert stats["max_candidate_colors"] <= cut.tau + 1
