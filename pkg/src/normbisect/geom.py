"""Planar primitives: points, directions, rays, lines and affine frames.

All objects are immutable. A single relative tolerance ``EPS_GEOM`` governs
parallelism and coincidence tests; every predicate takes an ``eps`` keyword
to override it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import CoincidentLines, DegeneratePair, GeometryError, OverlappingRays

EPS_GEOM = 1e-9


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite coordinates ({self.x}, {self.y})")

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> Point:
        return Point(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __truediv__(self, s: float) -> Point:
        return Point(self.x / s, self.y / s)

    def __neg__(self) -> Point:
        return Point(-self.x, -self.y)

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def dot(self, other: Point) -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Point) -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def rot90(self) -> Point:
        """Counterclockwise rotation by a quarter turn."""
        return Point(-self.y, self.x)

    def is_close(self, other: Point, tol: float = 1e-9) -> bool:
        return abs(self.x - other.x) <= tol and abs(self.y - other.y) <= tol

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


ORIGIN = Point(0.0, 0.0)


@dataclass(frozen=True, slots=True)
class Direction:
    dx: float
    dy: float

    def __post_init__(self):
        object.__setattr__(self, "dx", float(self.dx))
        object.__setattr__(self, "dy", float(self.dy))
        if self.dx == 0 and self.dy == 0:
            raise GeometryError("direction must be nonzero")
        if not (math.isfinite(self.dx) and math.isfinite(self.dy)):
            raise GeometryError("non-finite direction")

    @classmethod
    def of(cls, v: Point) -> Direction:
        return cls(v.x, v.y)

    @property
    def vec(self) -> Point:
        return Point(self.dx, self.dy)


@dataclass(frozen=True, slots=True)
class Ray:
    origin: Point
    dir: Direction

    @classmethod
    def through(cls, a: Point, b: Point) -> Ray:
        """The ray starting at ``a`` and passing through ``b``."""
        return cls(a, Direction.of(b - a))

    def opposite(self) -> Ray:
        return Ray(self.origin, Direction(-self.dir.dx, -self.dir.dy))

    def at(self, t: float) -> Point:
        return self.origin + self.dir.vec * t


@dataclass(frozen=True, slots=True)
class Line:
    through: Point
    dir: Direction

    @classmethod
    def between(cls, a: Point, b: Point) -> Line:
        return cls(a, Direction.of(b - a))

    def at(self, t: float) -> Point:
        return self.through + self.dir.vec * t

    def contains(self, z: Point, eps: float = EPS_GEOM) -> bool:
        d = self.dir.vec
        w = z - self.through
        return abs(d.cross(w)) <= eps * d.norm() * max(w.norm(), 1.0)


def parallel(d1: Point, d2: Point, eps: float = EPS_GEOM) -> bool:
    return abs(d1.cross(d2)) <= eps * d1.norm() * d2.norm()


def _solve_params(o1: Point, d1: Point, o2: Point, d2: Point) -> tuple[float, float]:
    # o1 + s*d1 = o2 + t*d2
    den = d1.cross(d2)
    w = o2 - o1
    return w.cross(d2) / den, w.cross(d1) / den


def ray_intersect(r1: Ray, r2: Ray, eps: float = EPS_GEOM) -> Optional[Point]:
    """Unique common point of two rays, ``None`` if they are disjoint.

    Raises OverlappingRays when the rays share a segment of positive length.
    """
    d1, d2 = r1.dir.vec, r2.dir.vec
    if not parallel(d1, d2, eps):
        s, t = _solve_params(r1.origin, d1, r2.origin, d2)
        if s < -eps or t < -eps:
            return None
        return r1.origin + d1 * max(s, 0.0)

    w = r2.origin - r1.origin
    scale = max(w.norm(), 1.0)
    if abs(d1.cross(w)) > eps * d1.norm() * scale:
        return None
    if d1.dot(d2) > 0:
        raise OverlappingRays("rays are collinear and point the same way")
    # opposite directions on a common line
    ahead = d1.dot(w)
    if abs(ahead) <= eps * d1.norm() * scale:
        return r1.origin
    if ahead > 0:
        raise OverlappingRays("rays point toward each other and share a segment")
    return None


def line_intersect(l1: Line, l2: Line, eps: float = EPS_GEOM) -> Optional[Point]:
    d1, d2 = l1.dir.vec, l2.dir.vec
    if parallel(d1, d2, eps):
        if l1.contains(l2.through, eps):
            raise CoincidentLines("lines are identical")
        return None
    s, _ = _solve_params(l1.through, d1, l2.through, d2)
    return l1.through + d1 * s


def reflect_through(c: Point, z: Point) -> Point:
    return Point(2.0 * c.x - z.x, 2.0 * c.y - z.y)


def midpoint(p: Point, q: Point) -> Point:
    return Point(0.5 * (p.x + q.x), 0.5 * (p.y + q.y))


def in_triangle(z: Point, a: Point, b: Point, c: Point, tol: float = 1e-9) -> bool:
    """Closed triangle membership with an absolute slack ``tol``."""
    area2 = (b - a).cross(c - a)
    if area2 < 0:
        b, c = c, b
    for u, v in ((a, b), (b, c), (c, a)):
        e = v - u
        if e.cross(z - u) < -tol * e.norm():
            return False
    return True


@dataclass(frozen=True)
class AffineFrame:
    """Affine coordinates ``(s, h) = M (x - origin)``.

    The first row of ``M`` measures displacement along ``q - p`` in Euclidean
    units, the second row is the functional whose level lines are parallel to
    ``q - p``. ``h`` is the *height* used throughout the bisector code.
    """

    origin: Point
    m11: float
    m12: float
    m21: float
    m22: float

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def forward(self, z: Point) -> Point:
        w = z - self.origin
        return Point(self.m11 * w.x + self.m12 * w.y, self.m21 * w.x + self.m22 * w.y)

    def inverse(self, c: Point) -> Point:
        det = self.det
        x = (self.m22 * c.x - self.m12 * c.y) / det
        y = (-self.m21 * c.x + self.m11 * c.y) / det
        return Point(x + self.origin.x, y + self.origin.y)

    def height(self, z: Point) -> float:
        w = z - self.origin
        return self.m21 * w.x + self.m22 * w.y


def frame_of(p: Point, q: Point, phi, eps: float = EPS_GEOM) -> AffineFrame:
    """Frame centred at the midpoint of ``p, q`` with ``phi`` as height.

    ``phi`` is anything with attributes ``a, b`` (a linear functional) and
    must vanish on ``q - p``.
    """
    d = q - p
    if d.norm() == 0:
        raise DegeneratePair("p and q coincide")
    fn = math.hypot(phi.a, phi.b)
    if abs(phi.a * d.x + phi.b * d.y) > eps * fn * d.norm():
        raise GeometryError("phi does not vanish on q - p")
    u = d / d.norm()
    return AffineFrame(midpoint(p, q), u.x, u.y, phi.a, phi.b)
