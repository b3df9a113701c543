"""Polygonal unit balls and the norm they induce.

A :class:`UnitBall` is a centrally symmetric convex polygon with the origin
in its interior, vertices stored counterclockwise with no three collinear.
Only :func:`validate_ball` should construct one.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .errors import NotConvex, NotSymmetric, OriginOutside, TooFewVertices, ZeroVector
from .geom import EPS_GEOM, ORIGIN, Direction, Point, parallel


@dataclass(frozen=True, slots=True)
class DualFunctional:
    """Linear functional ``v -> a*v.x + b*v.y``."""

    a: float
    b: float

    def __call__(self, v: Point) -> float:
        return self.a * v.x + self.b * v.y

    def __neg__(self) -> DualFunctional:
        return DualFunctional(-self.a, -self.b)

    def dual_norm(self, ball: UnitBall) -> float:
        return max(self(v) for v in ball.vertices)

    def as_tuple(self) -> tuple[float, float]:
        return (self.a, self.b)


@dataclass(frozen=True, slots=True)
class Face:
    """Exposed face ``supporting^{-1}(1) ∩ B``: an edge or a single vertex."""

    start: Point
    end: Point
    supporting: DualFunctional

    @property
    def length(self) -> float:
        return (self.end - self.start).norm()

    def reflected(self) -> Face:
        return Face(-self.start, -self.end, -self.supporting)


@dataclass(frozen=True)
class UnitBall:
    vertices: tuple[Point, ...]
    _angles: list = field(init=False, repr=False, compare=False)
    _edge_functionals: list = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # rotate so that vertex angles increase from index 0
        verts = list(self.vertices)
        k = min(range(len(verts)), key=lambda i: math.atan2(verts[i].y, verts[i].x))
        verts = verts[k:] + verts[:k]
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "_angles", [math.atan2(v.y, v.x) for v in verts])
        object.__setattr__(
            self,
            "_edge_functionals",
            [edge_functional(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))],
        )

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def diameter(self) -> float:
        """Euclidean diameter (twice the largest vertex radius)."""
        return 2.0 * max(v.norm() for v in self.vertices)

    @property
    def edge_functionals(self) -> list[DualFunctional]:
        """Functional of edge ``i`` (from vertex ``i`` to ``i+1``)."""
        return list(self._edge_functionals)

    def edges(self) -> list[tuple[Point, Point]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def scaled(self, factor: float) -> UnitBall:
        return UnitBall(tuple(v * factor for v in self.vertices))

    def transformed(self, m11: float, m12: float, m21: float, m22: float) -> UnitBall:
        """Image under an orientation-preserving linear map."""
        if m11 * m22 - m12 * m21 <= 0:
            raise ValueError("map must preserve orientation")
        return UnitBall(
            tuple(Point(m11 * v.x + m12 * v.y, m21 * v.x + m22 * v.y) for v in self.vertices)
        )

    def edge_index(self, v: Point) -> int:
        """Index of the edge hit by the ray from the origin through ``v``."""
        theta = math.atan2(v.y, v.x)
        return (bisect.bisect_right(self._angles, theta) - 1) % len(self.vertices)


def edge_functional(v0: Point, v1: Point) -> DualFunctional:
    """The functional equal to 1 on the line through ``v0`` and ``v1``."""
    n = Point(v1.y - v0.y, v0.x - v1.x)  # outward normal for a ccw edge
    c = n.dot(v0)
    return DualFunctional(n.x / c, n.y / c)


def _signed_area2(pts: Sequence[Point]) -> float:
    n = len(pts)
    return sum(pts[i].cross(pts[(i + 1) % n]) for i in range(n))


def validate_ball(raw_vertices: Iterable, eps: float = EPS_GEOM) -> UnitBall:
    """Check the standing assumptions on a unit ball and build it.

    Accepts points or ``(x, y)`` pairs in either orientation. Raises
    TooFewVertices, NotSymmetric, NotConvex or OriginOutside.
    """
    pts = [v if isinstance(v, Point) else Point(float(v[0]), float(v[1])) for v in raw_vertices]
    n = len(pts)
    if n % 2 == 1:
        raise NotSymmetric(f"odd vertex count {n}")
    if n < 4:
        raise TooFewVertices(f"need at least 4 vertices, got {n}")
    if _signed_area2(pts) < 0:
        pts.reverse()

    for i in range(n):
        e1 = pts[i] - pts[i - 1]
        e2 = pts[(i + 1) % n] - pts[i]
        if e1.cross(e2) <= eps * e1.norm() * e2.norm():
            raise NotConvex(f"no strict left turn at vertex {i}")
    # a polygon with only left turns can still wind around twice
    total = sum(
        math.atan2((pts[i] - pts[i - 1]).cross(pts[(i + 1) % n] - pts[i]),
                   (pts[i] - pts[i - 1]).dot(pts[(i + 1) % n] - pts[i]))
        for i in range(n)
    )
    if abs(total - 2 * math.pi) > 1e-6:
        raise NotConvex("vertex sequence is not simple")

    diam = 2.0 * max(v.norm() for v in pts)
    half = n // 2
    for i in range(half):
        if not pts[i + half].is_close(-pts[i], eps * diam):
            raise NotSymmetric(f"vertex {i + half} is not the reflection of vertex {i}")

    for i in range(n):
        e = pts[(i + 1) % n] - pts[i]
        if e.cross(ORIGIN - pts[i]) <= eps * e.norm() * diam:
            raise OriginOutside("origin is not strictly inside the polygon")
    return UnitBall(tuple(pts))


def gauge(ball: UnitBall, v: Point) -> float:
    """Minkowski functional of the ball evaluated at ``v``."""
    if v.x == 0.0 and v.y == 0.0:
        return 0.0
    return ball._edge_functionals[ball.edge_index(v)](v)


def distance(ball: UnitBall, a: Point, b: Point) -> float:
    return gauge(ball, b - a)


def face_toward(ball: UnitBall, d: Direction | Point,
                side: Literal["above", "below"] = "above", eps: float = EPS_GEOM) -> Face:
    """Face of ``ball`` touched by the supporting line parallel to ``d``.

    "Above" is the side of ``rot90(d)``. The supporting functional is the
    normalised ``±rot90(d)`` so its level lines are exactly parallel to ``d``.
    """
    dv = d.vec if isinstance(d, Direction) else d
    normal = dv.rot90() if side == "above" else -dv.rot90()
    verts = ball.vertices
    n = len(verts)
    best = max(range(n), key=lambda i: normal.dot(verts[i]))
    phi_scale = normal.dot(verts[best])
    # + 0.0 folds negative zero
    phi = DualFunctional(normal.x / phi_scale + 0.0, normal.y / phi_scale + 0.0)

    # an edge at `best` parallel to d is the whole face
    for j in ((best - 1) % n, (best + 1) % n):
        e = verts[j] - verts[best]
        if parallel(e, dv, eps):
            a, b = (verts[best], verts[j])
            # order start -> end along d
            if (b - a).dot(dv) < 0:
                a, b = b, a
            return Face(a, b, phi)
    return Face(verts[best], verts[best], phi)


def norming_functionals(ball: UnitBall, x: Point, eps: float = EPS_GEOM) -> list[DualFunctional]:
    """Extreme norming functionals of ``x``: one inside an edge, two at a vertex."""
    g = gauge(ball, x)
    if g == 0.0:
        raise ZeroVector("the zero vector has no norming functional")
    y = x / g
    n = len(ball)
    i = ball.edge_index(y)
    tol = eps * ball.diameter
    v0, v1 = ball.vertices[i], ball.vertices[(i + 1) % n]
    if y.is_close(v0, tol):
        return [ball._edge_functionals[(i - 1) % n], ball._edge_functionals[i]]
    if y.is_close(v1, tol):
        return [ball._edge_functionals[i], ball._edge_functionals[(i + 1) % n]]
    return [ball._edge_functionals[i]]
