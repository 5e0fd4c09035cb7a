import numpy as np
import pytest

from chromknn.geometry import L2, LINF, MetricBall
from chromknn.oracle import (mode_of, oracle_chromatic, oracle_kth_radius, oracle_mode_in_ball,
                             oracle_range_count)

P1 = [1.0, 2.0, 3.0, 10.0]
C1 = [0, 1, 0, 2]  # r, g, r, b


def test_kth_radius_examples():
    assert oracle_kth_radius(P1, (2.5,), 2, L2) == 0.5
    assert oracle_kth_radius(P1, (2.5,), 4, L2) == 7.5
    assert oracle_kth_radius(P1, (3.0,), 1, L2) == 0
    with pytest.raises(ValueError):
        oracle_kth_radius(P1, (2.5,), 5, L2)
    with pytest.raises(ValueError):
        oracle_kth_radius(P1, (2.5,), 0, L2)


def test_mode_in_ball_examples():
    pts = [(0, 0), (1, 0), (5, 5)]
    cols = [0, 0, 1]
    assert oracle_mode_in_ball(pts, cols, MetricBall((0.5, 0), 1, L2)) == (0, 2)
    assert oracle_mode_in_ball(pts, cols, MetricBall((0, 0), 100, L2)) == (0, 2)
    assert oracle_mode_in_ball(pts, cols, MetricBall((20, 20), 1, L2)) is None


def test_chromatic_examples():
    ans = oracle_chromatic(P1, C1, (2.5,), 3, L2)
    assert (ans.mode_color, ans.mode_frequency, ans.kth_radius) == (0, 2, 1.5)
    assert oracle_chromatic(P1, C1, (2.5,), 4, L2).mode_frequency == 2
    ans = oracle_chromatic(P1, C1, (9.0,), 1, L2)
    assert (ans.mode_color, ans.mode_frequency, ans.knn_ids) == (2, 1, [3])


def test_range_count_examples():
    assert oracle_range_count(P1, MetricBall((2.5,), 0.5, L2)) == 2
    assert oracle_range_count(P1, MetricBall((2.5,), 0, L2)) == 0
    assert oracle_range_count(P1, MetricBall((1.0,), 9, L2)) == 4


def test_mode_ties_go_to_smallest_label():
    assert mode_of([3, 1, 3, 1]) == (1, 2)
    assert mode_of([]) is None


def test_invariance_under_permutation_and_shift(rng):
    pts = rng.integers(0, 1 << 16, size=(200, 2)) / 64.0
    cols = rng.integers(0, 5, size=200)
    perm = rng.permutation(200)
    for _ in range(50):
        q = tuple(rng.integers(0, 1 << 16, size=2) / 64.0)
        k = int(rng.integers(1, 201))
        for metric in (L2, LINF):
            base = oracle_chromatic(pts, cols, q, k, metric).mode_frequency
            assert oracle_chromatic(pts[perm], cols[perm], q, k, metric).mode_frequency == base
            shifted = oracle_chromatic(pts + 8.0, cols, (q[0] + 8.0, q[1] + 8.0), k, metric)
            assert shifted.mode_frequency == base


def test_distinct_distances_give_exactly_k(rng):
    pts = rng.permutation(1000)[:300].astype(float)
    for k in range(1, 301, 7):
        r = oracle_kth_radius(pts, (0.5,), k, L2)
        assert oracle_range_count(pts, MetricBall((0.5,), r, L2)) == k
