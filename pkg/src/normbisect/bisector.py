"""Bisector of two points in a normed plane with a polygonal unit ball.

The bisector of a *strict* pair is a single curve met exactly once by every
line parallel to ``q - p``. For a *non-strict* pair (the unit circle has an
edge parallel to ``q - p``) it splits into three pieces::

    bisector = B1 ∪ B2 ∪ B3

where ``B1`` is a curve from the lower apex ``s_b`` through the midpoint to
the upper apex ``s_t`` and ``B2``, ``B3`` are closed cones with those apices.

Heights are measured with the supporting functional of the top face, in a
frame centred at the midpoint of ``p`` and ``q``; see :func:`geom.frame_of`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    BracketFailure,
    DegenerateBasis,
    DegeneratePair,
    HeightOutOfRange,
    NotApplicableForStrictPair,
    NotOnBisector,
    OnBaseline,
)
from .geom import (
    EPS_GEOM,
    AffineFrame,
    Direction,
    Line,
    Point,
    Ray,
    frame_of,
    in_triangle,
    midpoint,
    ray_intersect,
    reflect_through,
)
from .norm import DualFunctional, Face, UnitBall, face_toward, gauge

MAX_BISECTION_STEPS = 80
ROOT_WIDTH = 1e-12  # relative to |q - p|
STRICT_WINDOW_FACTOR = 5.0


class PairKind(str, enum.Enum):
    STRICT = "strict"
    NON_STRICT = "non-strict"


class Side(str, enum.Enum):
    NEARER_P = "nearer_p"
    NEARER_Q = "nearer_q"
    EQUIDISTANT = "equidistant"


@dataclass(frozen=True)
class PairClassification:
    kind: PairKind
    top_face: Face
    bottom_face: Face

    @property
    def non_strict(self) -> bool:
        return self.kind is PairKind.NON_STRICT


@dataclass(frozen=True)
class ContactPoints:
    """Contacts of the common supporting lines with ``p + bd(B)``, ``q + bd(B)``.

    Along ``l_top`` in the direction ``q - p`` the order is
    ``t_p, t_p_prime, t_q_prime, t_q``; along ``l_bottom`` it is
    ``b_p, b_p_prime, b_q_prime, b_q``. Primed points are the inner ends
    used to build the apices.
    """

    t_p: Point
    t_p_prime: Point
    t_q_prime: Point
    t_q: Point
    b_p: Point
    b_p_prime: Point
    b_q_prime: Point
    b_q: Point
    l_top: Line
    l_bottom: Line


@dataclass(frozen=True)
class Cone:
    """Closed cone ``{apex + α·dir1 + β·dir2 : α, β >= 0}``."""

    apex: Point
    dir1: Direction
    dir2: Direction

    def coefficients(self, x: Point) -> tuple[float, float]:
        d1, d2 = self.dir1.vec, self.dir2.vec
        w = x - self.apex
        den = d1.cross(d2)
        return w.cross(d2) / den, d1.cross(w) / den

    def contains(self, x: Point, eps: float = EPS_GEOM) -> bool:
        alpha, beta = self.coefficients(x)
        slack = eps * max(1.0, abs(alpha) + abs(beta))
        return alpha >= -slack and beta >= -slack

    def point(self, alpha: float, beta: float) -> Point:
        return self.apex + self.dir1.vec * alpha + self.dir2.vec * beta


@dataclass(frozen=True)
class CurveSample:
    z: Point
    lam: float
    height: float


@dataclass(frozen=True)
class ConstructionWitness:
    v_p: Point
    v_q: Point


@dataclass(frozen=True)
class BisectOptions:
    samples: int = 129
    height_window: Optional[tuple[float, float]] = None
    tolerance: float = EPS_GEOM


@dataclass(frozen=True)
class BisectorDecomposition:
    p: Point
    q: Point
    classification: PairClassification
    contacts: ContactPoints
    curve: list[CurveSample] = field(default_factory=list)
    cone_top: Optional[Cone] = None
    cone_bottom: Optional[Cone] = None
    s_t: Optional[Point] = None
    s_b: Optional[Point] = None
    phi: Optional[DualFunctional] = None
    g_t_height: Optional[float] = None

    @property
    def kind(self) -> PairKind:
        return self.classification.kind

    @property
    def points(self) -> list[Point]:
        return [s.z for s in self.curve]

    @property
    def frame(self) -> AffineFrame:
        return frame_of(self.p, self.q, self.classification.top_face.supporting)

    def cones(self) -> list[Cone]:
        return [c for c in (self.cone_top, self.cone_bottom) if c is not None]


def _check_pair(p: Point, q: Point) -> None:
    if p.x == q.x and p.y == q.y:
        raise DegeneratePair("degenerate pair: p and q coincide")


def classify_pair(ball: UnitBall, p: Point, q: Point, eps: float = EPS_GEOM) -> PairClassification:
    _check_pair(p, q)
    d = q - p
    top = face_toward(ball, d, "above", eps)
    bottom = face_toward(ball, d, "below", eps)
    kind = PairKind.NON_STRICT if top.length >= eps * ball.diameter else PairKind.STRICT
    return PairClassification(kind, top, bottom)


def contacts(ball: UnitBall, p: Point, q: Point, eps: float = EPS_GEOM,
             classification: Optional[PairClassification] = None) -> ContactPoints:
    cls = classification or classify_pair(ball, p, q, eps)
    top, bottom = cls.top_face, cls.bottom_face
    # faces are ordered start -> end along q - p
    d = Direction.of(q - p)
    return ContactPoints(
        t_p=p + top.start,
        t_p_prime=p + top.end,
        t_q_prime=q + top.start,
        t_q=q + top.end,
        b_p=p + bottom.start,
        b_p_prime=p + bottom.end,
        b_q_prime=q + bottom.start,
        b_q=q + bottom.end,
        l_top=Line(p + top.start, d),
        l_bottom=Line(p + bottom.start, d),
    )


def apices(ct: ContactPoints, p: Point, q: Point, eps: float = EPS_GEOM) -> tuple[Point, Point]:
    """Upper and lower apex: where the rays through the inner contacts meet."""
    if (ct.t_p_prime - ct.t_p).norm() == 0.0:
        raise NotApplicableForStrictPair("apices exist only for non-strict pairs")
    s_t = ray_intersect(Ray.through(p, ct.t_p_prime), Ray.through(q, ct.t_q_prime), eps)
    s_b = ray_intersect(Ray.through(p, ct.b_p_prime), Ray.through(q, ct.b_q_prime), eps)
    if s_t is None or s_b is None:
        raise NotApplicableForStrictPair("apex rays do not meet; pair is strict")
    return s_t, s_b


def cones(p: Point, q: Point, s_t: Optional[Point], s_b: Optional[Point]) -> tuple[Cone, Cone]:
    if s_t is None or s_b is None:
        raise NotApplicableForStrictPair("cones exist only for non-strict pairs")
    top = Cone(s_t, Direction.of(s_t - p), Direction.of(s_t - q))
    bot = Cone(s_b, Direction.of(s_b - p), Direction.of(s_b - q))
    return top, bot


@dataclass(frozen=True)
class _Setup:
    ball: UnitBall
    p: Point
    q: Point
    classification: PairClassification
    contacts: ContactPoints
    frame: AffineFrame
    s_t: Optional[Point]
    s_b: Optional[Point]
    top_height: Optional[float]
    eps: float


def _setup(ball: UnitBall, p: Point, q: Point, eps: float) -> _Setup:
    cls = classify_pair(ball, p, q, eps)
    ct = contacts(ball, p, q, eps, cls)
    frame = frame_of(p, q, cls.top_face.supporting, eps)
    s_t = s_b = None
    top_height = None
    if cls.non_strict:
        s_t, s_b = apices(ct, p, q, eps)
        top_height = frame.height(s_t)
    return _Setup(ball, p, q, cls, ct, frame, s_t, s_b, top_height, eps)


def _difference(ball: UnitBall, p: Point, q: Point, z: Point) -> float:
    return gauge(ball, z - p) - gauge(ball, z - q)


def _strip_walls(st: _Setup, h: float) -> tuple[Point, Point]:
    """Points of the bent strip's walls at height ``h`` (p side, q side)."""
    top, bottom = st.classification.top_face, st.classification.bottom_face
    if h >= 0:
        return st.p + top.start * h, st.q + top.end * h
    return st.p + bottom.start * (-h), st.q + bottom.end * (-h)


def _root_at_height(st: _Setup, h: float) -> CurveSample:
    ball, p, q = st.ball, st.p, st.q
    if st.top_height is not None:
        limit = st.top_height * (1.0 + st.eps) + st.eps
        if abs(h) > limit:
            raise HeightOutOfRange(f"|h|={abs(h)!r} exceeds apex height {st.top_height!r}")
    left, right = _strip_walls(st, h)
    u = (q - p) / (q - p).norm()
    pad = ball.diameter
    for attempt in range(2):
        lo, hi = left - u * pad, right + u * pad
        f_lo = _difference(ball, p, q, lo)
        f_hi = _difference(ball, p, q, hi)
        if f_lo < 0 < f_hi:
            break
        pad = 4.0 * (pad + (right - left).norm())
    else:
        raise BracketFailure(f"no sign change at height {h!r}")

    width = ROOT_WIDTH * (q - p).norm()
    for _ in range(MAX_BISECTION_STEPS):
        mid = midpoint(lo, hi)
        f_mid = _difference(ball, p, q, mid)
        if f_mid == 0.0:
            lo = hi = mid
            break
        if f_mid < 0:
            lo = mid
        else:
            hi = mid
        if (hi - lo).norm() <= width:
            break
    z = midpoint(lo, hi)
    return CurveSample(z, gauge(ball, z - p), h)


def construct_point_on_line(ball: UnitBall, p: Point, q: Point, h: float,
                            eps: float = EPS_GEOM) -> CurveSample:
    """The bisector point at height ``h`` on the connecting curve."""
    return _root_at_height(_setup(ball, p, q, eps), h)


def _sample_heights(lo: float, hi: float, n: int) -> np.ndarray:
    # uniform in height; the midpoint height 0 is always a sample when in range
    hs = np.linspace(lo, hi, n)
    if lo <= 0.0 <= hi:
        i = int(np.argmin(np.abs(hs)))
        if abs(hs[i]) <= 1e-12 * (hi - lo):
            hs[i] = 0.0
        else:
            hs = np.sort(np.append(hs, 0.0))
    return hs


def _trace(st: _Setup, n: int, window: Optional[tuple[float, float]]) -> list[CurveSample]:
    if n < 3:
        raise ValueError("need at least 3 samples")
    ball, p, q = st.ball, st.p, st.q
    if st.classification.non_strict:
        top = st.top_height
        hs = _sample_heights(-top, top, n)
        out = [CurveSample(st.s_b, gauge(ball, st.s_b - p), -top)]
        out += [_root_at_height(st, float(h)) for h in hs[1:-1]]
        out.append(CurveSample(st.s_t, gauge(ball, st.s_t - p), top))
        return out
    if window is None:
        w = STRICT_WINDOW_FACTOR * gauge(ball, q - p)
        window = (-w, w)
    lo, hi = window
    if not lo < hi:
        raise ValueError("height window must satisfy lo < hi")
    return [_root_at_height(st, float(h)) for h in _sample_heights(lo, hi, n)]


def trace_B1(ball: UnitBall, p: Point, q: Point, n: int = 129,
             window: Optional[tuple[float, float]] = None,
             eps: float = EPS_GEOM) -> list[CurveSample]:
    """Samples of the connecting curve ordered by increasing height.

    For a non-strict pair the endpoints are the apices and ``window`` is
    ignored; for a strict pair the curve is unbounded and only the heights
    in ``window`` are sampled.
    """
    return _trace(_setup(ball, p, q, eps), n, window)


def bisect(ball: UnitBall, p: Point, q: Point,
           options: Optional[BisectOptions] = None) -> BisectorDecomposition:
    opts = options or BisectOptions()
    st = _setup(ball, p, q, opts.tolerance)
    curve = _trace(st, opts.samples, opts.height_window)
    cone_top = cone_bottom = None
    if st.classification.non_strict:
        cone_top, cone_bottom = cones(p, q, st.s_t, st.s_b)
    return BisectorDecomposition(
        p=p,
        q=q,
        classification=st.classification,
        contacts=st.contacts,
        curve=curve,
        cone_top=cone_top,
        cone_bottom=cone_bottom,
        s_t=st.s_t,
        s_b=st.s_b,
        phi=st.classification.top_face.supporting,
        g_t_height=st.top_height,
    )


def side_of(ball: UnitBall, p: Point, q: Point, x: Point, eps: float = EPS_GEOM) -> Side:
    _check_pair(p, q)
    dp, dq = gauge(ball, x - p), gauge(ball, x - q)
    if abs(dp - dq) <= eps * max(dp, dq):
        return Side.EQUIDISTANT
    return Side.NEARER_P if dp < dq else Side.NEARER_Q


def double_cone_check(z: Point, p: Point, q: Point, w: Point, eps: float = EPS_GEOM) -> bool:
    """Whether ``w = z + λ(p - z) + μ(q - z)`` with ``λμ >= 0``.

    When ``z`` lies on the line through ``p`` and ``q`` the double cone
    collapses to that line and membership is a collinearity test.
    """
    a, b = p - z, q - z
    if a.norm() == 0.0 or b.norm() == 0.0:
        raise DegenerateBasis("apex coincides with p or q")
    v = w - z
    den = a.cross(b)
    if abs(den) <= eps * a.norm() * b.norm():
        d = q - p
        return abs(d.cross(w - p)) <= eps * d.norm() * max((w - p).norm(), 1.0)
    lam = v.cross(b) / den
    mu = a.cross(v) / den
    return lam * mu >= -eps


def witness(ball: UnitBall, p: Point, q: Point, z: Point, eps: float = EPS_GEOM) -> ConstructionWitness:
    """Boundary points ``v_p``, ``v_q`` on the rays from p and q through z.

    By the intercept theorem ``v_q - v_p`` is parallel to ``q - p`` exactly
    when ``z`` is equidistant from ``p`` and ``q``.
    """
    if side_of(ball, p, q, z, eps) is not Side.EQUIDISTANT:
        raise NotOnBisector("z is not on the bisector")
    d = q - p
    if abs(d.cross(z - p)) <= eps * d.norm() * max((z - p).norm(), 1.0):
        raise OnBaseline("construction is undefined on the line through p and q")
    v_p = p + (z - p) / gauge(ball, z - p)
    v_q = q + (z - q) / gauge(ball, z - q)
    if abs((v_q - v_p).cross(d)) > eps * d.dot(d):
        raise NotOnBisector("v_p v_q is not parallel to p q")
    return ConstructionWitness(v_p, v_q)


def in_bent_strip(dec: BisectorDecomposition, z: Point) -> bool:
    """Strict membership in the bent strip that contains the whole bisector."""
    p, q = dec.p, dec.q
    m = midpoint(p, q)
    frame = dec.frame
    if frame.height(z) < 0:
        z = reflect_through(m, z)
    top = dec.classification.top_face
    # walls of the upper half: [p, t_p> and [q, t_q>
    return top.start.cross(z - p) < 0 < top.end.cross(z - q) and frame.height(z) >= -EPS_GEOM * (q - p).norm()


def in_upper_triangle(dec: BisectorDecomposition, z: Point, tol: float = 1e-9) -> bool:
    """Membership in the triangle spanned by p, q and the upper apex."""
    if dec.s_t is None:
        raise NotApplicableForStrictPair("no apex for strict pairs")
    return in_triangle(z, dec.p, dec.q, dec.s_t, tol)
