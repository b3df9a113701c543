import math

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from normbisect.errors import InvalidBall
from normbisect.geom import Point
from normbisect.norm import validate_ball

HEXAGON = [(-1, 0), (0, 1), (1, 1), (1, 0), (0, -1), (-1, -1)]
SQUARE = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
DIAMOND = [(1, 0), (0, 1), (-1, 0), (0, -1)]

P = Point(-1.5, 0.0)
Q = Point(1.5, 0.0)


@pytest.fixture
def hexagon():
    return validate_ball(HEXAGON)


@pytest.fixture
def square():
    return validate_ball(SQUARE)


@pytest.fixture
def diamond():
    return validate_ball(DIAMOND)


def hex_norm(x, y):
    """Closed form of the hexagon norm."""
    return np.maximum(np.maximum(np.abs(x), np.abs(y)), np.abs(x - y))


def random_ball(rng, max_half=10):
    """Random centrally symmetric convex polygon with 4 to 2*max_half vertices."""
    while True:
        m = int(rng.integers(2, max_half + 1))
        ang = np.sort(rng.uniform(0.0, np.pi, m))
        r = rng.uniform(0.3, 1.5, m)
        half = np.column_stack([r * np.cos(ang), r * np.sin(ang)])
        pts = np.vstack([half, -half])
        hull = pts[ConvexHull(pts).vertices]
        try:
            return validate_ball(hull)
        except InvalidBall:
            continue


def random_pair(rng, ball, non_strict):
    p = Point(*rng.uniform(-3.0, 3.0, 2))
    if non_strict:
        a, b = ball.edges()[int(rng.integers(len(ball)))]
        d = (b - a) / (b - a).norm()
    else:
        t = rng.uniform(0.0, 2 * math.pi)
        d = Point(math.cos(t), math.sin(t))
    return p, p + d * rng.uniform(0.5, 4.0)


def pytest_terminal_summary(terminalreporter):
    results = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in rep.nodeid and rep.when == "call":
                results.append((rep.nodeid.split("::")[-1], outcome))
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(results):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}")
