"""Matplotlib figures of a decomposition and of an oracle run."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from .bisector import BisectorDecomposition  # noqa: E402
from .norm import UnitBall  # noqa: E402

STYLE = {
    "font.size": 9,
    "font.family": "serif",
    "mathtext.fontset": "cm",
    "axes.linewidth": 0.6,
    "lines.linewidth": 0.9,
    "svg.hashsalt": "normbisect",
    "svg.fonttype": "path",
}

CONTACT_LABELS = {
    "t_p": r"$t_p$", "t_p_prime": r"$t_p'$", "t_q_prime": r"$t_q'$", "t_q": r"$t_q$",
    "b_p": r"$b_p$", "b_p_prime": r"$b_p'$", "b_q_prime": r"$b_q'$", "b_q": r"$b_q$",
}


def _ball_outline(ball: UnitBall, centre) -> np.ndarray:
    v = np.array([[p.x, p.y] for p in ball.vertices]) + np.array([centre.x, centre.y])
    return np.vstack([v, v[:1]])


def viewport(dec: BisectorDecomposition, ball: UnitBall, pad: float = 0.1):
    """Bounding box of balls, contacts, apices and curve, padded by ``pad``."""
    pts = [_ball_outline(ball, dec.p), _ball_outline(ball, dec.q)]
    ct = dec.contacts
    pts.append(np.array([[getattr(ct, k).x, getattr(ct, k).y] for k in CONTACT_LABELS]))
    pts.append(np.array([[s.z.x, s.z.y] for s in dec.curve]))
    for cone in dec.cones():
        # show a stretch of each cone beyond its apex
        a = cone.apex
        for d in (cone.dir1.vec, cone.dir2.vec):
            pts.append(np.array([[a.x, a.y], [a.x + 0.5 * d.x, a.y + 0.5 * d.y]]))
    allp = np.vstack(pts)
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    return lo - pad * span, hi + pad * span


def _save(fig, path) -> None:
    path = Path(path)
    meta = {"Date": None} if path.suffix.lower() == ".svg" else {}
    fig.savefig(path, metadata=meta, bbox_inches="tight")
    plt.close(fig)


def plot_decomposition(dec: BisectorDecomposition, ball: UnitBall, path, labels: bool = True) -> None:
    """Draw both translated balls, supporting lines, contacts, apices, cones and curve."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6, 6))
        lo, hi = viewport(dec, ball)
        reach = 4.0 * float(np.hypot(*(hi - lo)))

        for cone in dec.cones():
            a = np.array([cone.apex.x, cone.apex.y])
            d1 = np.array([cone.dir1.dx, cone.dir1.dy])
            d2 = np.array([cone.dir2.dx, cone.dir2.dy])
            poly = [a, a + reach * d1 / np.hypot(*d1), a + reach * d2 / np.hypot(*d2)]
            ax.add_patch(Polygon(poly, closed=True, facecolor="black", alpha=0.1, edgecolor="none"))

        for c in (dec.p, dec.q):
            o = _ball_outline(ball, c)
            ax.plot(o[:, 0], o[:, 1], color="black")

        ct = dec.contacts
        for line in (ct.l_top, ct.l_bottom):
            d = np.array([line.dir.dx, line.dir.dy])
            d /= np.hypot(*d)
            t = np.array([line.through.x, line.through.y])
            seg = np.vstack([t - reach * d, t + reach * d])
            ax.plot(seg[:, 0], seg[:, 1], color="black", linewidth=0.6)
        ax.plot([dec.p.x, dec.q.x], [dec.p.y, dec.q.y], color="black", linestyle=":")

        z = np.array([[s.z.x, s.z.y] for s in dec.curve])
        ax.plot(z[:, 0], z[:, 1], color="tab:red", linewidth=1.4)

        named = [("p", dec.p), ("q", dec.q)] + [(k, getattr(ct, k)) for k in CONTACT_LABELS]
        if dec.s_t is not None:
            named += [("s_t", dec.s_t), ("s_b", dec.s_b)]
        for name, pt in named:
            ax.plot(pt.x, pt.y, "o", color="black", markersize=2.5)
            if labels:
                text = CONTACT_LABELS.get(name, f"${name}$")
                ax.annotate(text, (pt.x, pt.y), textcoords="offset points", xytext=(3, 3))

        ax.set_xlim(lo[0], hi[0])
        ax.set_ylim(lo[1], hi[1])
        ax.set_aspect("equal")
        ax.set_title(f"{dec.kind.value} pair")
        _save(fig, path)


def plot_oracle(grid, zero_set, dec: BisectorDecomposition, path) -> None:
    """Sign field with the extracted zero set and the analytic curve overlaid."""
    w = grid.window
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6, 6))
        ax.imshow(grid.values.T, origin="lower", extent=(w.x0, w.x1, w.y0, w.y1),
                  cmap="coolwarm", vmin=-1.5, vmax=1.5, interpolation="nearest")
        for line in zero_set.polylines:
            ax.plot(line[:, 0], line[:, 1], color="black", linewidth=0.6)
        z = np.array([[s.z.x, s.z.y] for s in dec.curve])
        ax.plot(z[:, 0], z[:, 1], color="gold", linewidth=1.0, linestyle="--")
        ax.set_xlim(w.x0, w.x1)
        ax.set_ylim(w.y0, w.y1)
        ax.set_aspect("equal")
        _save(fig, path)
