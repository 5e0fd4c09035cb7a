"""Points, metrics, balls and the surfaces that encode ball membership in R^3.

A query ball ``D(q, r)`` is mapped to a point ``w`` in surface space so that a
data point ``p`` lies in the ball exactly when the surface of ``p`` covers
``w``. For L2 the surface of ``p`` is the plane ``z = 2 p.x + 2 p.y - |p|^2``
(the lifting map followed by duality); for Linf it is the upside-down pyramid
``z = Linf(p, .)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Tuple, Union

Coord = Union[float, Tuple[float, ...], Sequence[float]]


class ModeAnswer(NamedTuple):
    color: int
    frequency: int


@dataclass(frozen=True)
class ColoredPoint:
    coords: Tuple[float, ...]
    color: int
    id: int

    @property
    def dim(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class Metric:
    """An L_m distance. ``kind`` is one of ``"l1"``, ``"l2"``, ``"linf"``, ``"lm"``."""

    kind: str
    m: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("l1", "l2", "linf", "lm"):
            raise ValueError(f"unknown metric kind {self.kind!r}")
        if self.kind == "lm":
            if self.m is None or not self.m >= 1:
                raise ValueError("Lm metric needs m >= 1")

    @classmethod
    def parse(cls, text: str) -> "Metric":
        text = text.strip().lower()
        if text in ("l1", "l2", "linf"):
            return cls(text)
        if text.startswith("lm:"):
            return cls("lm", float(text[3:]))
        raise ValueError(f"cannot parse metric {text!r}")

    def legal_in(self, dim: int) -> bool:
        return dim == 1 or self.kind != "lm"

    def __str__(self):
        return f"lm:{self.m:g}" if self.kind == "lm" else self.kind


L1 = Metric("l1")
L2 = Metric("l2")
LINF = Metric("linf")


def as_tuple(p: Coord) -> Tuple[float, ...]:
    if isinstance(p, (int, float)):
        return (float(p),)
    return tuple(float(v) for v in p)


def _check(p, q, metric):
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")
    if len(p) not in (1, 2):
        raise ValueError("only 1D and 2D points are supported")
    if not metric.legal_in(len(p)):
        raise ValueError(f"metric {metric} is only legal in 1D")


def key_distance(p: Coord, q: Coord, metric: Metric) -> float:
    """Monotone stand-in for the distance used in comparisons.

    Squared distance for L2 (exact on grid-valued inputs), plain distance
    otherwise.
    """
    p, q = as_tuple(p), as_tuple(q)
    _check(p, q, metric)
    if len(p) == 1:
        return abs(p[0] - q[0])
    dx, dy = abs(p[0] - q[0]), abs(p[1] - q[1])
    if metric.kind == "l1":
        return dx + dy
    if metric.kind == "linf":
        return max(dx, dy)
    return dx * dx + dy * dy


def distance(p: Coord, q: Coord, metric: Metric) -> float:
    d = key_distance(p, q, metric)
    if len(as_tuple(p)) == 2 and metric.kind == "l2":
        return math.sqrt(d)
    return d


def radius_key(radius: float, metric: Metric, dim: int) -> float:
    return radius * radius if (dim == 2 and metric.kind == "l2") else radius


@dataclass(frozen=True)
class MetricBall:
    """Closed ball ``{p : dist(p, center) <= radius}``.

    ``radius_sq`` may be given for L2 balls so that membership tests use the
    exact squared radius instead of ``radius ** 2``.
    """

    center: Tuple[float, ...]
    radius: float
    metric: Metric
    radius_sq: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "center", as_tuple(self.center))
        if self.radius < 0:
            raise ValueError("negative radius")
        if not self.metric.legal_in(len(self.center)):
            raise ValueError(f"metric {self.metric} is only legal in 1D")

    @classmethod
    def from_key(cls, center: Coord, key: float, metric: Metric) -> "MetricBall":
        center = as_tuple(center)
        if len(center) == 2 and metric.kind == "l2":
            return cls(center, math.sqrt(key), metric, radius_sq=key)
        return cls(center, key, metric)

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def key(self) -> float:
        """Radius in the units of :func:`key_distance`."""
        if self.dim == 2 and self.metric.kind == "l2":
            return self.radius_sq if self.radius_sq is not None else self.radius * self.radius
        return self.radius

    def contains(self, p: Coord) -> bool:
        return key_distance(p, self.center, self.metric) <= self.key


def lift(p: Coord) -> Tuple[float, float, float]:
    x, y = as_tuple(p)
    return (x, y, x * x + y * y)


class QueryPoint3(NamedTuple):
    x: float
    y: float
    z: float


def ball_to_query_point(ball: MetricBall, origin: Coord = (0.0, 0.0)) -> QueryPoint3:
    """Surface-space point of ``ball`` with coordinates taken relative to ``origin``."""
    if ball.dim != 2:
        raise ValueError("surface encoding needs a 2D ball")
    qx, qy = ball.center
    qx, qy = qx - origin[0], qy - origin[1]
    if ball.metric.kind == "l2":
        return QueryPoint3(qx, qy, qx * qx + qy * qy - ball.key)
    if ball.metric.kind == "linf":
        return QueryPoint3(qx, qy, ball.radius)
    raise ValueError(f"no surface encoding for metric {ball.metric}")


@dataclass(frozen=True)
class Surface:
    """Plane ``z = a x + b y + c`` or pyramid ``z = Linf(apex, .)``."""

    kind: str
    params: Tuple[float, ...]
    color: int
    source: int

    @classmethod
    def plane_of(cls, p: Coord, color: int = 0, source: int = 0) -> "Surface":
        x, y = as_tuple(p)
        return cls("plane", (2 * x, 2 * y, -(x * x + y * y)), color, source)

    @classmethod
    def pyramid_of(cls, p: Coord, color: int = 0, source: int = 0) -> "Surface":
        return cls("pyramid", as_tuple(p), color, source)

    def value(self, x: float, y: float) -> float:
        if self.kind == "plane":
            a, b, c = self.params
            return a * x + b * y + c
        px, py = self.params
        return max(abs(px - x), abs(py - y))

    def covers(self, w: Sequence[float]) -> bool:
        wx, wy, wz = w
        if self.kind == "plane":
            a, b, c = self.params
            # same arrangement as the disk test: 2p.q - |p|^2 >= |q|^2 - r^2
            return a * wx + b * wy + c >= wz
        px, py = self.params
        return max(abs(px - wx), abs(py - wy)) <= wz


def surface_of(p: Coord, metric: Metric, color: int = 0, source: int = 0) -> Surface:
    if metric.kind == "l2":
        return Surface.plane_of(p, color, source)
    if metric.kind == "linf":
        return Surface.pyramid_of(p, color, source)
    raise ValueError(f"no surface for metric {metric}")


def rotate45(p: Coord) -> Tuple[float, float]:
    """Map (x, y) to (x + y, x - y); L1 distances become Linf distances."""
    x, y = as_tuple(p)
    return (x + y, x - y)
