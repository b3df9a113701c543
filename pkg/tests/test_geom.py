import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from normbisect.errors import CoincidentLines, DegeneratePair, GeometryError, OverlappingRays
from normbisect.geom import (
    Direction,
    Line,
    Point,
    Ray,
    frame_of,
    line_intersect,
    ray_intersect,
    reflect_through,
)
from normbisect.norm import DualFunctional

coords = st.floats(-1e3, 1e3, allow_nan=False)
points = st.builds(Point, coords, coords)


def ray(o, d):
    return Ray(Point(*o), Direction(*d))


def line(o, d):
    return Line(Point(*o), Direction(*d))


class TestRayIntersect:
    def test_apex_configuration(self):
        # (-1.5,0) + s(1,1) = (1.5,0) + t(0,1)  =>  s = 3, t = 3
        z = ray_intersect(ray((-1.5, 0), (1, 1)), ray((1.5, 0), (0, 1)))
        assert z.is_close(Point(1.5, 3.0), 1e-12)

    def test_shared_origin(self):
        assert ray_intersect(ray((0, 0), (1, 0)), ray((0, 0), (0, 1))) == Point(0, 0)

    def test_parallel_disjoint(self):
        assert ray_intersect(ray((0, 0), (1, 0)), ray((0, 1), (1, 0))) is None

    def test_lines_meet_behind_ray(self):
        assert ray_intersect(ray((0, 0), (1, 0)), ray((-1, -1), (0, 1))) is None

    def test_collinear_same_direction_overlaps(self):
        with pytest.raises(OverlappingRays):
            ray_intersect(ray((0, 0), (1, 0)), ray((2, 0), (3, 0)))

    def test_facing_rays_overlap(self):
        with pytest.raises(OverlappingRays):
            ray_intersect(ray((0, 0), (1, 0)), ray((2, 0), (-1, 0)))

    def test_opposite_rays_touch_at_origin(self):
        assert ray_intersect(ray((0, 0), (1, 0)), ray((0, 0), (-1, 0))) == Point(0, 0)

    def test_opposite_rays_apart(self):
        assert ray_intersect(ray((0, 0), (-1, 0)), ray((2, 0), (1, 0))) is None

    @given(points, points, st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
    def test_symmetric(self, o1, o2, a1, a2):
        r1 = Ray(o1, Direction(math.cos(a1), math.sin(a1)))
        r2 = Ray(o2, Direction(math.cos(a2), math.sin(a2)))
        try:
            z12 = ray_intersect(r1, r2)
        except OverlappingRays:
            with pytest.raises(OverlappingRays):
                ray_intersect(r2, r1)
            return
        z21 = ray_intersect(r2, r1)
        if z12 is None or z21 is None:
            assert z12 is None and z21 is None
        else:
            scale = max(1.0, o1.norm(), o2.norm(), z12.norm())
            assert z12.is_close(z21, 1e-6 * scale)


class TestLineIntersect:
    def test_axis_cross(self):
        assert line_intersect(line((0, 0), (1, 0)), line((1, 1), (0, 1))) == Point(1, 0)

    def test_diagonals(self):
        # t(1,1) = (3,0) + s(-1,1)  =>  t = s = 1.5
        z = line_intersect(line((0, 0), (1, 1)), line((3, 0), (-1, 1)))
        assert z.is_close(Point(1.5, 1.5), 1e-12)

    def test_parallel(self):
        assert line_intersect(line((0, 0), (1, 0)), line((0, 1), (1, 0))) is None

    def test_identical(self):
        with pytest.raises(CoincidentLines):
            line_intersect(line((0, 0), (1, 0)), line((5, 0), (-2, 0)))


@pytest.mark.parametrize(
    "c, z, expected",
    [((0, 0), (1.5, 3), (-1.5, -3)), ((0, 0), (0, 0), (0, 0)), ((1, 1), (2, 0), (0, 2))],
)
def test_reflect_through(c, z, expected):
    assert reflect_through(Point(*c), Point(*z)) == Point(*expected)


@given(points, points)
def test_reflect_is_involution(c, z):
    back = reflect_through(c, reflect_through(c, z))
    assert back.is_close(z, 1e-12 * max(1.0, c.norm(), z.norm()))


def test_direction_rejects_zero():
    with pytest.raises(GeometryError):
        Direction(0.0, 0.0)


def test_point_rejects_nan():
    with pytest.raises(GeometryError):
        Point(float("nan"), 0.0)


class TestFrame:
    def test_horizontal_pair_is_translation(self):
        f = frame_of(Point(-1.5, 0), Point(1.5, 0), DualFunctional(0, 1))
        assert (f.m11, f.m12, f.m21, f.m22) == (1.0, 0.0, 0.0, 1.0)
        assert f.forward(Point(2, 5)) == Point(2, 5)

    def test_vertical_pair_swaps_axes(self):
        f = frame_of(Point(0, 0), Point(0, 3), DualFunctional(1, 0))
        assert (f.m11, f.m12, f.m21, f.m22) == (0.0, 1.0, 1.0, 0.0)
        assert f.forward(Point(2, 1.5)) == Point(0, 2)

    def test_round_trip(self):
        rng = np.random.default_rng(3)
        p, q = Point(0.3, -2.0), Point(4.1, 1.7)
        n = (q - p).rot90()
        f = frame_of(p, q, DualFunctional(n.x / 7.0, n.y / 7.0))
        for x, y in rng.uniform(-50, 50, size=(100, 2)):
            z = Point(x, y)
            assert f.inverse(f.forward(z)).is_close(z, 1e-12 * 50)

    @given(points, points)
    def test_baseline_becomes_horizontal(self, p, q):
        if (q - p).norm() < 1e-6:
            return
        n = (q - p).rot90()
        f = frame_of(p, q, DualFunctional(n.x, n.y))
        assert abs(f.height(p) - f.height(q)) <= 1e-12 * max(1.0, n.norm() * (p.norm() + q.norm()))

    def test_degenerate_pair(self):
        with pytest.raises(DegeneratePair):
            frame_of(Point(1, 1), Point(1, 1), DualFunctional(0, 1))

    def test_phi_must_vanish_on_baseline(self):
        with pytest.raises(GeometryError):
            frame_of(Point(0, 0), Point(1, 0), DualFunctional(1, 1))
