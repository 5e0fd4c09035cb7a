import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from chromknn.geometry import (L1, L2, LINF, Metric, MetricBall, Surface, ball_to_query_point, distance,
                               key_distance, lift, rotate45, surface_of)

grid = st.integers(-4096, 4096).map(lambda v: v / 64.0)


def test_distance_examples():
    assert distance(2, 5, Metric("lm", 3)) == 3
    assert distance((0, 0), (3, 4), L2) == 5
    assert distance((0, 0), (2, 3), LINF) == 3
    assert distance((0, 0), (2, 3), L1) == 5


def test_distance_errors():
    with pytest.raises(ValueError):
        distance((0, 0), (1,), L2)
    with pytest.raises(ValueError):
        distance((0, 0), (1, 1), Metric("lm", 3))


def test_metric_parse():
    assert Metric.parse("L2") == L2
    assert Metric.parse("lm:3").m == 3
    with pytest.raises(ValueError):
        Metric.parse("l7")
    with pytest.raises(ValueError):
        Metric("lm", 0.5)


def test_lift_examples():
    assert lift((0, 0)) == (0, 0, 0)
    assert lift((1, 2)) == (1, 2, 5)
    assert lift((-1, 3)) == (-1, 3, 10)


def test_query_point_examples():
    w = ball_to_query_point(MetricBall((0, 0), 1, L2))
    assert tuple(w) == (0, 0, -1)
    assert Surface.plane_of((0, 0)).covers(w)
    plane = Surface.plane_of((2, 0))
    assert plane.params == (4, 0, -4)
    assert not plane.covers(w)
    w = ball_to_query_point(MetricBall((1, 0), 1, LINF))
    assert tuple(w) == (1, 0, 1)
    assert Surface.pyramid_of((0, 0)).covers(w)
    with pytest.raises(ValueError):
        ball_to_query_point(MetricBall((0, 0), 1, L1))


def test_query_point_origin_shift():
    ball = MetricBall((5, 7), 2, L2)
    w = ball_to_query_point(ball, origin=(5, 7))
    assert tuple(w) == (0, 0, -4)


def test_ball_is_closed():
    ball = MetricBall.from_key((0, 0), 25.0, L2)
    assert ball.radius == 5 and ball.contains((3, 4))
    assert MetricBall((0,), 1, L2).contains((1,))
    with pytest.raises(ValueError):
        MetricBall((0, 0), -1, L2)


@given(grid, grid, grid, grid, st.integers(0, 4096).map(lambda v: v / 64.0), st.sampled_from([L2, LINF]))
def test_duality_round_trip(px, py, qx, qy, r, metric):
    ball = MetricBall.from_key((qx, qy), r * r if metric == L2 else r, metric)
    w = ball_to_query_point(ball)
    assert surface_of((px, py), metric).covers(w) == (key_distance((px, py), (qx, qy), metric) <= ball.key)


def test_duality_round_trip_bulk(rng):
    pts = rng.integers(-2 ** 12, 2 ** 12, size=(10_000, 6)) / 64.0
    for px, py, qx, qy, r, m in pts:
        metric = L2 if m > 0 else LINF
        r = abs(r)
        ball = MetricBall.from_key((qx, qy), r * r if metric == L2 else r, metric)
        inside = key_distance((px, py), (qx, qy), metric) <= ball.key
        assert surface_of((px, py), metric).covers(ball_to_query_point(ball)) == inside


@given(grid, grid, grid, grid, grid, grid, st.sampled_from([L1, L2, LINF]))
def test_metric_axioms(ax, ay, bx, by, cx, cy, metric):
    a, b, c = (ax, ay), (bx, by), (cx, cy)
    assert distance(a, b, metric) >= 0
    assert distance(a, b, metric) == distance(b, a, metric)
    assert (distance(a, b, metric) == 0) == (a == b)
    assert distance(a, c, metric) <= (distance(a, b, metric) + distance(b, c, metric)) * (1 + 1e-12)


@given(grid, grid, grid, grid)
def test_rotation_turns_l1_into_linf(ax, ay, bx, by):
    assert distance((ax, ay), (bx, by), L1) == distance(rotate45((ax, ay)), rotate45((bx, by)), LINF)


def test_one_dimension_all_metrics_agree():
    for metric in (L1, L2, LINF, Metric("lm", 2.5)):
        assert distance((1.5,), (-2.0,), metric) == 3.5
    assert math.isclose(distance((1, 1), (2, 2), L2), math.sqrt(2))
