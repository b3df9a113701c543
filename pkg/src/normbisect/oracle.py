"""Brute-force verification of a bisector decomposition.

The oracle never calls the bisector construction. It rasterises the sign of
``‖x - p‖ - ‖x - q‖`` on a lattice (with its own vectorised norm), extracts
the zero set by marching squares and measures how far the analytic
decomposition is from it.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .errors import DegeneratePair, EmptyInput
from .geom import Point

GRID_DEAD_BAND = 1e-9


@dataclass(frozen=True)
class Window:
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError(f"degenerate window {self}")

    @classmethod
    def square(cls, center: Point, half: float) -> Window:
        return cls(center.x - half, center.y - half, center.x + half, center.y + half)

    def contains(self, pts: np.ndarray, slack: float = 0.0) -> np.ndarray:
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        return ((pts[:, 0] >= self.x0 - slack) & (pts[:, 0] <= self.x1 + slack)
                & (pts[:, 1] >= self.y0 - slack) & (pts[:, 1] <= self.y1 + slack))

    @property
    def diagonal(self) -> float:
        return float(np.hypot(self.x1 - self.x0, self.y1 - self.y0))


@dataclass
class SignGrid:
    """Signs of the norm difference on an ``nx`` by ``ny`` cell grid.

    ``values`` has shape ``(nx + 1, ny + 1)``; ``values[i, j]`` is at ``(xs[i], ys[j])``.
    """

    window: Window
    nx: int
    ny: int
    values: np.ndarray

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.window.x0, self.window.x1, self.nx + 1)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.window.y0, self.window.y1, self.ny + 1)

    @property
    def cell(self) -> tuple[float, float]:
        return ((self.window.x1 - self.window.x0) / self.nx,
                (self.window.y1 - self.window.y0) / self.ny)

    @property
    def cell_diagonal(self) -> float:
        return float(np.hypot(*self.cell))

    def lattice(self) -> np.ndarray:
        """All lattice points, shape ``(nx + 1, ny + 1, 2)``."""
        X, Y = np.meshgrid(self.xs, self.ys, indexing="ij")
        return np.stack([X, Y], axis=-1)


@dataclass
class ZeroSet:
    polylines: list[np.ndarray]
    interior_mask: np.ndarray = field(default_factory=lambda: np.zeros((0, 0), bool))

    def points(self) -> np.ndarray:
        if not self.polylines:
            return np.zeros((0, 2))
        return np.concatenate(self.polylines, axis=0)


@dataclass(frozen=True)
class ComparisonReport:
    max_deviation: float
    cone_mask_agreement: float
    cell_diagonal: float
    zero_points: int
    analytic_points: int


def norm_field(vertices: Sequence[Point], vx: np.ndarray, vy: np.ndarray) -> np.ndarray:
    """Vectorised norm as the maximum of the edge functionals.

    Valid for any convex polygon with the origin inside, regardless of
    orientation of the vertex list.
    """
    pts = np.array([[v.x, v.y] for v in vertices], dtype=float)
    nxt = np.roll(pts, -1, axis=0)
    normals = np.column_stack([nxt[:, 1] - pts[:, 1], pts[:, 0] - nxt[:, 0]])
    offsets = np.einsum("ij,ij->i", normals, pts)
    # make every functional equal +1 on its own edge
    funcs = normals / offsets[:, None]
    out = funcs[0, 0] * vx + funcs[0, 1] * vy
    for a, b in funcs[1:]:
        np.maximum(out, a * vx + b * vy, out=out)
    return out


def sign_field(ball, p: Point, q: Point, window: Window, nx: int, ny: int,
               dead_band: float = GRID_DEAD_BAND) -> SignGrid:
    if p.x == q.x and p.y == q.y:
        raise DegeneratePair("degenerate pair: p and q coincide")
    if nx < 1 or ny < 1:
        raise ValueError("need at least one cell per axis")
    xs = np.linspace(window.x0, window.x1, nx + 1)
    ys = np.linspace(window.y0, window.y1, ny + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    gp = norm_field(ball.vertices, X - p.x, Y - p.y)
    gq = norm_field(ball.vertices, X - q.x, Y - q.y)
    diff = gp - gq
    band = dead_band * np.maximum(np.maximum(gp, gq), 1.0)
    values = np.sign(diff).astype(np.int8)
    values[np.abs(diff) <= band] = 0
    return SignGrid(window, nx, ny, values)


def _edge_point(key, xs, ys):
    kind, i, j = key
    if kind == "h":
        return (0.5 * (xs[i] + xs[i + 1]), ys[j])
    return (xs[i], 0.5 * (ys[j] + ys[j + 1]))


def _cell_segments(inside: np.ndarray, signs: np.ndarray, positive: bool):
    """Marching-squares segments of the boundary of ``inside`` as edge-key pairs."""
    c0 = inside[:-1, :-1]
    c1 = inside[1:, :-1]
    c2 = inside[1:, 1:]
    c3 = inside[:-1, 1:]
    mixed = ~((c0 == c1) & (c1 == c2) & (c2 == c3))
    segs = []
    for i, j in zip(*np.nonzero(mixed)):
        corners = (c0[i, j], c1[i, j], c2[i, j], c3[i, j])
        # edges in ccw order: bottom, right, top, left
        edges = [("h", i, j), ("v", i + 1, j), ("h", i, j + 1), ("v", i, j)]
        crossing = [k for k in range(4) if corners[k] != corners[(k + 1) % 4]]
        if len(crossing) == 2:
            segs.append((edges[crossing[0]], edges[crossing[1]]))
            continue
        # saddle: decide by the average of the four corner signs
        avg = (int(signs[i, j]) + int(signs[i + 1, j]) + int(signs[i + 1, j + 1])
               + int(signs[i, j + 1])) / 4.0
        centre_inside = avg > 0 if positive else avg < 0
        if centre_inside == corners[0]:
            # c0 and c2 joined through the centre; cut off c1 and c3
            segs.append((edges[0], edges[1]))
            segs.append((edges[2], edges[3]))
        else:
            segs.append((edges[3], edges[0]))
            segs.append((edges[1], edges[2]))
    return segs


def _join(segs) -> list[list]:
    adj = defaultdict(list)
    for a, b in segs:
        adj[a].append(b)
        adj[b].append(a)
    seen = set()
    chains = []

    def walk(start):
        chain = [start]
        seen.add(start)
        cur = start
        while True:
            nxt = [n for n in adj[cur] if n not in seen]
            if not nxt:
                break
            cur = nxt[0]
            seen.add(cur)
            chain.append(cur)
        return chain

    # open chains start at degree-one keys; the rest are cycles
    for key in sorted(k for k, v in adj.items() if len(v) == 1):
        if key not in seen:
            chains.append(walk(key))
    for key in sorted(adj):
        if key not in seen:
            chain = walk(key)
            chain.append(chain[0])
            chains.append(chain)
    return chains


def extract_zero_set(grid: SignGrid) -> ZeroSet:
    """Zero set of a sign grid.

    Zero-valued corners count as outside for both the ``< 0`` and the ``> 0``
    region, so a two-dimensional equidistant region contributes both of its
    boundary curves. Cells whose four corners are all zero are reported in
    ``interior_mask``.
    """
    v = grid.values
    xs, ys = grid.xs, grid.ys
    polylines = []
    for positive, inside in ((False, v < 0), (True, v > 0)):
        for chain in _join(_cell_segments(inside, v, positive)):
            polylines.append(np.array([_edge_point(k, xs, ys) for k in chain], dtype=float))
    zero = v == 0
    interior = zero[:-1, :-1] & zero[1:, :-1] & zero[1:, 1:] & zero[:-1, 1:]
    return ZeroSet(polylines, interior)


def _as_array(pts) -> np.ndarray:
    if not isinstance(pts, np.ndarray):
        pts = [tuple(x) for x in pts]
    return np.asarray(pts, dtype=float).reshape(-1, 2)


def hausdorff(a, b) -> float:
    """Symmetric Hausdorff distance between two finite planar point sets."""
    a, b = _as_array(a), _as_array(b)
    if a.size == 0 or b.size == 0:
        raise EmptyInput("hausdorff distance needs two non-empty sets")
    d_ab, _ = cKDTree(b).query(a)
    d_ba, _ = cKDTree(a).query(b)
    return float(max(d_ab.max(), d_ba.max()))


def densify(points: np.ndarray, step: float) -> np.ndarray:
    """Insert points along a polyline so consecutive points are ``<= step`` apart."""
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(points) < 2:
        return points
    out = [points[:1]]
    for a, b in zip(points[:-1], points[1:]):
        k = max(1, int(np.ceil(np.hypot(*(b - a)) / step)))
        t = np.linspace(0.0, 1.0, k + 1)[1:, None]
        out.append(a + t * (b - a))
    return np.concatenate(out, axis=0)


def _ray_samples(apex: Point, d: Point, window: Window, step: float) -> np.ndarray:
    a = np.array([apex.x, apex.y])
    dv = np.array([d.x, d.y]) / np.hypot(d.x, d.y)
    corners = np.array([[window.x0, window.y0], [window.x1, window.y1]])
    reach = np.max(np.hypot(*(corners - a).T)) + window.diagonal
    t = np.arange(0.0, reach + step, step)
    return a + t[:, None] * dv


def analytic_points(dec, window: Window, step: float) -> np.ndarray:
    """Dense samples of the curve and the cone boundaries, clipped to ``window``."""
    parts = [densify(np.array([s.z.as_tuple() for s in dec.curve]), step)]
    for cone in dec.cones():
        parts.append(_ray_samples(cone.apex, cone.dir1.vec, window, step))
        parts.append(_ray_samples(cone.apex, cone.dir2.vec, window, step))
    pts = np.concatenate(parts, axis=0)
    return pts[window.contains(pts)]


def _cone_mask(cone, pts: np.ndarray, eps: float) -> np.ndarray:
    d1, d2 = cone.dir1.vec, cone.dir2.vec
    wx = pts[..., 0] - cone.apex.x
    wy = pts[..., 1] - cone.apex.y
    den = d1.cross(d2)
    alpha = (wx * d2.y - wy * d2.x) / den
    beta = (d1.x * wy - d1.y * wx) / den
    slack = eps * np.maximum(1.0, np.abs(alpha) + np.abs(beta))
    return (alpha >= -slack) & (beta >= -slack)


def analytic_zero_mask(dec, ball, grid: SignGrid, eps: float = GRID_DEAD_BAND) -> np.ndarray:
    """Lattice points the decomposition declares equidistant.

    A point qualifies when it lies in one of the cones, or when it is within
    one cell of the traced curve and the bisector's own side test calls it
    equidistant.
    """
    from .bisector import Side, side_of

    lat = grid.lattice()
    mask = np.zeros(lat.shape[:2], dtype=bool)
    for cone in dec.cones():
        mask |= _cone_mask(cone, lat, eps)
    step = min(grid.cell) / 4.0
    curve = densify(np.array([s.z.as_tuple() for s in dec.curve]), step)
    if len(curve):
        dist, _ = cKDTree(curve).query(lat.reshape(-1, 2))
        near = np.nonzero(dist.reshape(mask.shape) <= max(grid.cell))
        for i, j in zip(*near):
            if mask[i, j]:
                continue
            x = Point(*lat[i, j])
            if side_of(ball, dec.p, dec.q, x, eps) is Side.EQUIDISTANT:
                mask[i, j] = True
    return mask


def compare(dec, ball, p: Point, q: Point, window: Window, nx: int, ny: int,
            grid: Optional[SignGrid] = None) -> ComparisonReport:
    """Distance between the analytic decomposition and the brute-force zero set."""
    if grid is None:
        grid = sign_field(ball, p, q, window, nx, ny)
    zs = extract_zero_set(grid)
    zpts = zs.points()
    step = min(grid.cell) / 4.0
    apts = analytic_points(dec, window, step)
    if len(zpts) == 0 and len(apts) == 0:
        dev = 0.0
    elif len(zpts) == 0 or len(apts) == 0:
        dev = float("inf")
    else:
        dev = hausdorff(apts, zpts)
    agree = analytic_zero_mask(dec, ball, grid) == (grid.values == 0)
    return ComparisonReport(
        max_deviation=dev,
        cone_mask_agreement=float(agree.mean()),
        cell_diagonal=grid.cell_diagonal,
        zero_points=int(len(zpts)),
        analytic_points=int(len(apts)),
    )


def boundary_components(grid: SignGrid, sign: int) -> int:
    """Number of 4-connected ``sign`` regions that touch the window boundary."""
    labels, _ = ndimage.label(grid.values == sign)
    edge = np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    return int(len(np.unique(edge[edge > 0])))
