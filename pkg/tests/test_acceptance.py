"""Acceptance criteria 1 to 10.

Each criterion is a single test so the terminal summary prints one
PASS/FAIL line per criterion.
"""

import math

import numpy as np
import pytest
from scipy.spatial import cKDTree

from conftest import P, Q, random_ball, random_pair
from normbisect import checks
from normbisect.bisector import BisectOptions, PairKind, bisect, trace_B1, witness
from normbisect.errors import BracketFailure
from normbisect.geom import Point, frame_of, midpoint, reflect_through
from normbisect.oracle import Window, compare

WINDOW = Window(-6, -6, 6, 6)


def xy(points):
    return np.array([[z.x, z.y] for z in points])


def curve_xy(dec):
    return xy(s.z for s in dec.curve)


def test_criterion_01_hexagon_golden_case(hexagon):
    dec = bisect(hexagon, P, Q)
    assert dec.kind is PairKind.NON_STRICT
    expected = {
        "t_p": (-1.5, 1), "t_p_prime": (-0.5, 1), "t_q_prime": (1.5, 1), "t_q": (2.5, 1),
        "b_p": (-2.5, -1), "b_p_prime": (-1.5, -1), "b_q_prime": (0.5, -1), "b_q": (1.5, -1),
    }
    for name, pt in expected.items():
        assert getattr(dec.contacts, name).is_close(Point(*pt), 1e-9), name
    assert dec.s_t.is_close(Point(1.5, 3), 1e-9)
    assert dec.s_b.is_close(Point(-1.5, -3), 1e-9)


def test_criterion_02_hexagon_curve(hexagon):
    dec = bisect(hexagon, P, Q)
    for s in dec.curve:
        assert abs(s.z.x - s.height / 2) <= 1e-6
    z1 = next(s.z for s in trace_B1(hexagon, P, Q, 7) if s.height == pytest.approx(1.0))
    assert z1.is_close(Point(0.5, 1), 1e-6)
    w = witness(hexagon, P, Q, Point(0.5, 1))
    assert w.v_p.is_close(Point(-0.5, 0.5), 1e-9)
    assert w.v_q.is_close(Point(1, 0.5), 1e-9)


def test_criterion_03_cone_soundness_and_tightness(hexagon):
    dec = bisect(hexagon, P, Q)
    rng = np.random.default_rng(2024)
    assert checks.cone_soundness(hexagon, dec, rng, n=1000) == 1.0
    assert checks.cone_tightness(hexagon, dec, rng, n=1000, offsets=(1e-6, 1e-3)) == 1.0


def test_criterion_04_unique_crossing(hexagon):
    dec = bisect(hexagon, P, Q)
    rng = np.random.default_rng(7)
    hs = rng.uniform(0.0, 3.0, 50)
    counts = [checks.sign_changes(hexagon, dec, float(h)) for h in hs]
    assert counts == [1] * 50


def test_criterion_05_double_cone_and_triangle(hexagon):
    dec = bisect(hexagon, P, Q)
    assert len(dec.curve) == 129
    ok, total = checks.double_cone_pairs(dec)
    # the midpoint sample lies on the baseline and is excluded as an apex
    assert total == 128 * 129
    assert ok == total
    assert checks.upper_triangle(dec, tol=1e-9)


@pytest.mark.parametrize("name", ["hexagon", "square", "diamond"])
def test_criterion_06_oracle_equivalence(name, request):
    ball = request.getfixturevalue(name)
    dec = bisect(ball, P, Q)
    coarse = compare(dec, ball, P, Q, WINDOW, 400, 400)
    assert coarse.max_deviation <= 2 * coarse.cell_diagonal
    assert coarse.cone_mask_agreement >= 0.995
    fine = compare(dec, ball, P, Q, WINDOW, 800, 800)
    assert fine.max_deviation <= 1.1 * coarse.max_deviation
    assert fine.cone_mask_agreement >= 0.995


def test_criterion_07_strict_regression(diamond, square):
    dec = bisect(diamond, P, Q)
    assert dec.kind is PairKind.STRICT
    assert all(abs(s.z.x) <= 1e-9 for s in dec.curve)
    sq = bisect(square, P, Q)
    assert sq.s_t.is_close(Point(0, 1.5), 1e-9)
    assert all(abs(s.z.x) <= 1e-9 for s in sq.curve)


def _rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return c, -s, s, c


def _apply(m, z):
    m11, m12, m21, m22 = m
    return Point(m11 * z.x + m12 * z.y, m21 * z.x + m22 * z.y)


@pytest.mark.parametrize("name", ["hexagon", "diamond"])
def test_criterion_08_invariance(name, request):
    ball = request.getfixturevalue(name)
    ref = bisect(ball, P, Q)
    base = curve_xy(ref)

    for factor in (0.5, 2.0):
        np.testing.assert_allclose(curve_xy(bisect(ball.scaled(factor), P, Q)), base, atol=1e-8)

    t = Point(7, -3)
    np.testing.assert_allclose(curve_xy(bisect(ball, P + t, Q + t)), base + [7, -3], atol=1e-8)

    # the frame of a tilted pair maps it onto a horizontal one
    p0, q0 = Point(0.4, -1.1), Point(2.3, 0.9)
    tilted = bisect(ball, p0, q0)
    f = frame_of(p0, q0, tilted.phi)
    m = (f.m11, f.m12, f.m21, f.m22)
    moved = bisect(ball.transformed(*m), f.forward(p0), f.forward(q0))
    np.testing.assert_allclose(curve_xy(moved), xy(f.forward(s.z) for s in tilted.curve), atol=1e-8)

    for theta in (math.pi / 6, 2.0):
        r = _rotation(theta)
        rotated = bisect(ball.transformed(*r), _apply(r, P), _apply(r, Q))
        np.testing.assert_allclose(curve_xy(rotated), xy(_apply(r, s.z) for s in ref.curve), atol=1e-8)


@pytest.mark.parametrize("name", ["hexagon", "square", "diamond"])
def test_criterion_09_metamorphic_symmetry(name, request):
    ball = request.getfixturevalue(name)
    fwd, back = bisect(ball, P, Q), bisect(ball, Q, P)
    a, b = curve_xy(fwd), curve_xy(back)
    assert len(a) == len(b)
    d_ab, _ = cKDTree(b).query(a)
    d_ba, _ = cKDTree(a).query(b)
    assert max(d_ab.max(), d_ba.max()) <= 1e-9
    m = midpoint(P, Q)
    pts = [s.z for s in fwd.curve]
    for z, w in zip(pts, reversed(pts)):
        assert reflect_through(m, z).is_close(w, 1e-9)


def test_criterion_10_random_ball_fuzz():
    rng = np.random.default_rng(20261015)
    failures = []
    for k in range(200):
        ball = random_ball(rng)
        assert 4 <= len(ball) <= 20
        p, q = random_pair(rng, ball, non_strict=k % 2 == 0)
        try:
            dec = bisect(ball, p, q, BisectOptions(samples=33))
        except BracketFailure as exc:
            failures.append((k, f"bracket: {exc}"))
            continue

        # criterion 3
        lo = max(1e-6, checks.resolvable_offset(ball, dec)) if dec.cones() else 1e-6
        if checks.cone_soundness(ball, dec, rng, n=100) != 1.0:
            failures.append((k, "soundness"))
        if checks.cone_tightness(ball, dec, rng, n=100, offsets=(lo, max(1e-3, 10 * lo))) != 1.0:
            failures.append((k, "tightness"))

        # criterion 4
        top = dec.g_t_height if dec.g_t_height is not None else max(s.height for s in dec.curve)
        for h in rng.uniform(0.0, top, 10):
            if checks.sign_changes(ball, dec, float(h)) != 1:
                failures.append((k, f"crossings at h={h}"))

        # criterion 5
        ok, total = checks.double_cone_pairs(dec)
        if ok != total:
            failures.append((k, f"double cone {ok}/{total}"))
        if not checks.upper_triangle(dec):
            failures.append((k, "upper triangle"))
        if not checks.equidistance(ball, dec):
            failures.append((k, "equidistance"))
    assert failures == []
