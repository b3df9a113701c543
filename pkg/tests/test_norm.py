import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import DIAMOND, HEXAGON, SQUARE, hex_norm, random_ball
from normbisect.errors import NotConvex, NotSymmetric, TooFewVertices, ZeroVector
from normbisect.geom import Direction, Point
from normbisect.norm import face_toward, gauge, norming_functionals, validate_ball
from normbisect.oracle import norm_field

coords = st.floats(-100, 100, allow_nan=False)
vectors = st.builds(Point, coords, coords)


class TestValidate:
    def test_accepts_clockwise(self):
        ball = validate_ball(list(reversed(HEXAGON)))
        assert ball == validate_ball(HEXAGON)

    @pytest.mark.parametrize(
        "verts, err",
        [
            ([(1, 0), (0, 1), (-1, 0)], NotSymmetric),
            ([(1, 0), (-1, 0)], TooFewVertices),
            ([(2, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)], NotSymmetric),
            ([(1, 0), (0.5, 0.5), (0, 1), (-1, 0), (-0.5, -0.5), (0, -1)], NotConvex),
        ],
        ids=["odd", "two", "asymmetric", "collinear"],
    )
    def test_rejects(self, verts, err):
        with pytest.raises(err):
            validate_ball(verts)

    def test_rejects_doubly_wound(self):
        # a pentagram-like star traversed with only left turns is still not convex
        angs = [k * 4 * math.pi / 8 + 0.1 for k in range(8)]
        with pytest.raises(NotConvex):
            validate_ball([(math.cos(a), math.sin(a)) for a in angs])

    def test_vertices_start_at_smallest_angle(self, hexagon):
        angs = [math.atan2(v.y, v.x) for v in hexagon.vertices]
        assert angs == sorted(angs)


class TestGauge:
    @pytest.mark.parametrize(
        "v, expected",
        [((3, 0), 3.0), ((0, 2), 2.0), ((1, 1), 1.0), ((1, -1), 2.0), ((-2, -2), 2.0), ((0.5, 1), 1.0)],
    )
    def test_hexagon_values(self, hexagon, v, expected):
        assert gauge(hexagon, Point(*v)) == pytest.approx(expected, abs=1e-15)

    def test_zero(self, hexagon):
        assert gauge(hexagon, Point(0, 0)) == 0.0

    @given(vectors)
    def test_hexagon_closed_form(self, v):
        ball = validate_ball(HEXAGON)
        assert gauge(ball, v) == pytest.approx(float(hex_norm(v.x, v.y)), rel=1e-12, abs=1e-12)

    @given(vectors)
    def test_square_and_diamond(self, v):
        sq, dm = validate_ball(SQUARE), validate_ball(DIAMOND)
        assert gauge(sq, v) == pytest.approx(max(abs(v.x), abs(v.y)), rel=1e-12, abs=1e-12)
        assert gauge(dm, v) == pytest.approx(abs(v.x) + abs(v.y), rel=1e-12, abs=1e-12)

    @given(vectors, vectors, st.floats(-10, 10, allow_nan=False))
    def test_norm_axioms(self, u, v, t):
        ball = validate_ball(HEXAGON)
        assert gauge(ball, u + v) <= gauge(ball, u) + gauge(ball, v) + 1e-9
        assert gauge(ball, u * t) == pytest.approx(abs(t) * gauge(ball, u), rel=1e-9, abs=1e-9)
        assert gauge(ball, -u) == pytest.approx(gauge(ball, u), rel=1e-12, abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_matches_vectorised_field(self, seed):
        rng = np.random.default_rng(seed)
        ball = random_ball(rng)
        xy = rng.uniform(-5, 5, size=(50, 2))
        field = norm_field(ball.vertices, xy[:, 0], xy[:, 1])
        direct = [gauge(ball, Point(*v)) for v in xy]
        np.testing.assert_allclose(direct, field, rtol=1e-12, atol=1e-12)

    def test_vertices_have_norm_one(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            ball = random_ball(rng)
            for v in ball.vertices:
                assert gauge(ball, v) == pytest.approx(1.0, abs=1e-12)


class TestFaces:
    def test_horizontal_edge_faces(self, hexagon):
        top = face_toward(hexagon, Direction(1, 0), "above")
        assert (top.start, top.end) == (Point(0, 1), Point(1, 1))
        assert top.supporting.as_tuple() == (0.0, 1.0)
        bot = face_toward(hexagon, Direction(1, 0), "below")
        assert (bot.start, bot.end) == (Point(-1, -1), Point(0, -1))
        assert bot.supporting.as_tuple() == (0.0, -1.0)

    def test_diagonal_face(self, hexagon):
        f = face_toward(hexagon, Direction(1, 1), "above")
        assert (f.start, f.end) == (Point(-1, 0), Point(0, 1))

    def test_vertex_face(self, diamond):
        f = face_toward(diamond, Direction(1, 0), "above")
        assert f.start == f.end == Point(0, 1)
        assert f.length == 0.0

    @given(st.floats(0, 2 * math.pi))
    def test_supporting_functional_touches_face(self, t):
        ball = validate_ball(HEXAGON)
        d = Direction(math.cos(t), math.sin(t))
        for side in ("above", "below"):
            f = face_toward(ball, d, side)
            # an edge within eps of parallel counts as the face
            tol = 1e-9 * ball.diameter
            assert f.supporting(f.start) == pytest.approx(1.0, abs=tol)
            assert f.supporting(f.end) == pytest.approx(1.0, abs=tol)
            assert max(f.supporting(v) for v in ball.vertices) == pytest.approx(1.0, abs=1e-12)
            assert abs(f.supporting(d.vec)) <= 1e-12


class TestNormingFunctionals:
    def test_edge_interior(self, hexagon):
        (f,) = norming_functionals(hexagon, Point(0.5, 1))
        assert f.as_tuple() == pytest.approx((0.0, 1.0))

    def test_vertex_gives_two(self, hexagon):
        fs = norming_functionals(hexagon, Point(2, 2))
        assert sorted(f.as_tuple() for f in fs) == pytest.approx([(0.0, 1.0), (1.0, 0.0)])

    def test_zero(self, hexagon):
        with pytest.raises(ZeroVector):
            norming_functionals(hexagon, Point(0, 0))

    @given(vectors)
    def test_norming_property(self, x):
        assume(x.norm() > 1e-6)
        ball = validate_ball(HEXAGON)
        g = gauge(ball, x)
        for f in norming_functionals(ball, x):
            # vertex snapping is within eps * diameter
            assert f(x) == pytest.approx(g, rel=1e-8)
            assert f.dual_norm(ball) == pytest.approx(1.0, rel=1e-12)
