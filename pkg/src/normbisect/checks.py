"""Property checks on a computed decomposition.

Each check returns ``True`` when the property holds. They are shared by the
``validate`` command and the test-suite.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .bisector import (
    BisectorDecomposition,
    Cone,
    Side,
    double_cone_check,
    in_bent_strip,
    in_upper_triangle,
    side_of,
)
from .geom import EPS_GEOM, Point, midpoint, reflect_through
from .norm import UnitBall, gauge


def equidistance(ball: UnitBall, dec: BisectorDecomposition, tol: float = 1e-6) -> bool:
    for s in dec.curve:
        dp, dq = gauge(ball, s.z - dec.p), gauge(ball, s.z - dec.q)
        if abs(dp - dq) > tol * max(s.lam, 1.0):
            return False
    return True


def monotone_heights(dec: BisectorDecomposition) -> bool:
    hs = [s.height for s in dec.curve]
    return all(b > a for a, b in zip(hs, hs[1:]))


def heights_consistent(dec: BisectorDecomposition, tol: float = 1e-9) -> bool:
    """Stored heights agree with the frame height of each sample point."""
    frame = dec.frame
    scale = max(1.0, max((abs(s.height) for s in dec.curve), default=1.0))
    return all(abs(frame.height(s.z) - s.height) <= tol * scale for s in dec.curve)


def apex_consistency(ball: UnitBall, dec: BisectorDecomposition, tol: float = 1e-9) -> bool:
    if not dec.classification.non_strict:
        return dec.s_t is None and dec.s_b is None
    for s in (dec.s_t, dec.s_b):
        dp, dq = gauge(ball, s - dec.p), gauge(ball, s - dec.q)
        if abs(dp - dq) > tol * max(dp, 1.0):
            return False
    ends_ok = (dec.curve[0].z.is_close(dec.s_b, tol * 10) and dec.curve[-1].z.is_close(dec.s_t, tol * 10))
    apex_ok = dec.cone_top.apex == dec.s_t and dec.cone_bottom.apex == dec.s_b
    return ends_ok and apex_ok


def cone_interior_points(cone: Cone, rng: np.random.Generator, n: int, hi: float = 10.0) -> list[Point]:
    ab = rng.uniform(0.0, hi, size=(n, 2))
    return [cone.point(a, b) for a, b in ab]


def cone_near_misses(cone: Cone, rng: np.random.Generator, n: int,
                     offsets: tuple[float, float] = (1e-6, 1e-3), hi: float = 10.0) -> list[Point]:
    """Points just outside the cone: one coefficient is ``-δ``, the other exceeds ``δ``.

    The second condition keeps the point beyond the apex's level line.
    """
    out = []
    lo_exp, hi_exp = np.log10(offsets[0]), np.log10(offsets[1])
    for _ in range(n):
        delta = 10.0 ** rng.uniform(lo_exp, hi_exp)
        other = rng.uniform(delta + 0.01, hi)
        if rng.random() < 0.5:
            out.append(cone.point(-delta, other))
        else:
            out.append(cone.point(other, -delta))
    return out


def vertex_sharpness(ball: UnitBall, dec: BisectorDecomposition) -> float:
    """Smallest jump of the norm's slope across the two endpoints of the top face.

    Leaving a cone by a coefficient ``-δ`` changes the norm difference by
    about ``δ * sharpness`` times the apex distance.
    """
    top = dec.classification.top_face
    a, b = top.end, top.start
    funcs = ball.edge_functionals
    verts = ball.vertices
    n = len(verts)
    jumps = []
    for here, there in ((a, b), (b, a)):
        i = min(range(n), key=lambda k: (verts[k] - here).norm())
        # the neighbouring edge at `here` that is not the face itself
        for f in (funcs[i], funcs[(i - 1) % n]):
            if abs(f(there) - 1.0) > 1e-12:
                jumps.append(1.0 - f(there))
    return min(jumps) if jumps else 1.0


def resolvable_offset(ball: UnitBall, dec: BisectorDecomposition, eps: float = EPS_GEOM,
                      hi: float = 10.0) -> float:
    """Smallest near-miss coefficient whose defect clears the equidistance dead band."""
    # relative defect is δ·sharpness / (1 + α + β) with α, β <= hi; keep a 5x margin
    return 5.0 * eps * (1.0 + 2.0 * hi) / vertex_sharpness(ball, dec)


def cone_soundness(ball: UnitBall, dec: BisectorDecomposition, rng: np.random.Generator,
                   n: int = 1000, eps: float = EPS_GEOM) -> float:
    """Fraction of random cone points classified equidistant."""
    hits = total = 0
    for cone in dec.cones():
        for x in cone_interior_points(cone, rng, n):
            total += 1
            hits += side_of(ball, dec.p, dec.q, x, eps) is Side.EQUIDISTANT
    return hits / total if total else 1.0


def cone_tightness(ball: UnitBall, dec: BisectorDecomposition, rng: np.random.Generator,
                   n: int = 1000, offsets: tuple[float, float] = (1e-6, 1e-3),
                   eps: float = EPS_GEOM) -> float:
    """Fraction of near-miss exterior points classified as not equidistant."""
    hits = total = 0
    for cone in dec.cones():
        for x in cone_near_misses(cone, rng, n, offsets):
            total += 1
            hits += side_of(ball, dec.p, dec.q, x, eps) is not Side.EQUIDISTANT
    return hits / total if total else 1.0


def bent_strip(dec: BisectorDecomposition, cone_points: Optional[list[Point]] = None) -> bool:
    pts = [s.z for s in dec.curve] + list(cone_points or [])
    return all(in_bent_strip(dec, z) for z in pts)


def _on_baseline(dec: BisectorDecomposition, z: Point, eps: float) -> bool:
    d = dec.q - dec.p
    return abs(d.cross(z - dec.p)) <= eps * d.norm() * max((z - dec.p).norm(), 1.0)


def double_cone_pairs(dec: BisectorDecomposition, eps: float = EPS_GEOM) -> tuple[int, int]:
    """(passing, total) over ordered sample pairs whose apex is off the baseline."""
    pts = [s.z for s in dec.curve]
    ok = total = 0
    for z in pts:
        if _on_baseline(dec, z, eps):
            continue
        for w in pts:
            total += 1
            ok += double_cone_check(z, dec.p, dec.q, w, eps)
    return ok, total


def upper_triangle(dec: BisectorDecomposition, tol: float = 1e-9) -> bool:
    if dec.s_t is None:
        return True
    return all(in_upper_triangle(dec, s.z, tol) for s in dec.curve if s.height >= 0)


def central_symmetry(dec: BisectorDecomposition, tol: float = 1e-9) -> bool:
    """Reflection through the midpoint maps the sample list onto its reverse."""
    m = midpoint(dec.p, dec.q)
    pts = [s.z for s in dec.curve]
    scale = max(1.0, (dec.q - dec.p).norm())
    return all(reflect_through(m, a).is_close(b, tol * scale) for a, b in zip(pts, reversed(pts)))


def sign_changes(ball: UnitBall, dec: BisectorDecomposition, h: float, n: int = 1000,
                 eps: float = EPS_GEOM) -> int:
    """Sign changes of the norm difference along the height-``h`` line between the strip walls.

    Uses the oracle's vectorised norm; points inside the dead band are skipped.
    """
    from .oracle import norm_field

    top, bottom = dec.classification.top_face, dec.classification.bottom_face
    if h >= 0:
        a, b = dec.p + top.start * h, dec.q + top.end * h
    else:
        a, b = dec.p + bottom.start * (-h), dec.q + bottom.end * (-h)
    t = np.linspace(0.0, 1.0, n)
    xs = a.x + t * (b.x - a.x)
    ys = a.y + t * (b.y - a.y)
    gp = norm_field(ball.vertices, xs - dec.p.x, ys - dec.p.y)
    gq = norm_field(ball.vertices, xs - dec.q.x, ys - dec.q.y)
    diff = gp - gq
    keep = np.abs(diff) > eps * np.maximum(gp, gq)
    signs = np.sign(diff[keep])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def default_window(dec: BisectorDecomposition):
    from .oracle import Window

    m = midpoint(dec.p, dec.q)
    reach = (dec.q - dec.p).norm()
    if dec.s_t is not None:
        reach = max(reach, (dec.s_t - m).norm())
    return Window.square(m, 2.0 * reach)


def validation_report(ball: UnitBall, dec: BisectorDecomposition, reference: BisectorDecomposition,
                      window=None, nx: int = 400, ny: int = 400, seed: int = 0,
                      cone_samples: int = 200, eps: float = EPS_GEOM) -> dict:
    """Oracle comparison plus the invariant suite for ``dec``.

    ``reference`` is a freshly computed decomposition of the same problem;
    ``dec`` may come from a file and is the object under test.
    """
    from .oracle import boundary_components, compare, sign_field

    window = window or default_window(reference)
    rng = np.random.default_rng(seed)
    scale = max(1.0, (dec.q - dec.p).norm())

    inv: dict[str, bool] = {}
    same_kind = dec.kind is reference.kind and dec.p == reference.p and dec.q == reference.q
    if same_kind and reference.s_t is not None:
        same_kind = (dec.s_t is not None and dec.s_t.is_close(reference.s_t, 1e-9 * scale)
                     and dec.s_b.is_close(reference.s_b, 1e-9 * scale))
    inv["classification_matches"] = bool(same_kind)
    inv["equidistance"] = equidistance(ball, dec)
    inv["monotone_heights"] = monotone_heights(dec)
    inv["heights_consistent"] = heights_consistent(dec)
    inv["apex_consistency"] = apex_consistency(ball, dec)
    inv["cone_soundness"] = cone_soundness(ball, dec, rng, cone_samples, eps) == 1.0
    inv["cone_tightness"] = cone_tightness(ball, dec, rng, cone_samples, eps=eps) == 1.0
    cone_pts = [x for c in dec.cones() for x in cone_interior_points(c, rng, 50)]
    inv["bent_strip"] = bent_strip(dec, cone_pts)
    ok, total = double_cone_pairs(dec, eps)
    inv["double_cone"] = ok == total
    inv["upper_triangle"] = upper_triangle(dec)
    hs = [s.height for s in dec.curve]
    if hs and abs(hs[0] + hs[-1]) <= 1e-9 * max(1.0, abs(hs[0])):
        inv["central_symmetry"] = central_symmetry(dec)

    grid = sign_field(ball, dec.p, dec.q, window, nx, ny)
    rep = compare(dec, ball, dec.p, dec.q, window, nx, ny, grid=grid)
    bound = 2.0 * rep.cell_diagonal
    inv["oracle_deviation"] = rep.max_deviation <= bound
    inv["cone_mask_agreement"] = rep.cone_mask_agreement >= 0.995
    inv["sign_regions"] = boundary_components(grid, -1) == 1 and boundary_components(grid, 1) == 1

    return {
        "max_deviation": rep.max_deviation,
        "deviation_bound": bound,
        "cone_mask_agreement": rep.cone_mask_agreement,
        "grid": [nx, ny],
        "window": [window.x0, window.y0, window.x1, window.y1],
        "invariants": inv,
        "passed": all(inv.values()),
    }
