"""Problem files in, result documents out.

Problem (JSON)::

    {"ball": [[x, y], ...], "p": [x, y], "q": [x, y],
     "options": {"samples": 129, "height_window": [lo, hi], "tolerance": 1e-9}}

Floats are written with Python's shortest round-trip ``repr`` so results
are lossless and byte-for-byte reproducible.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Optional

from . import __version__
from .bisector import (
    BisectOptions,
    BisectorDecomposition,
    Cone,
    ContactPoints,
    CurveSample,
    PairClassification,
    PairKind,
)
from .errors import DegeneratePair, NormBisectError
from .geom import EPS_GEOM, Direction, Line, Point
from .norm import DualFunctional, Face, UnitBall, validate_ball

TOLERANCE_ENV = "NORMBISECT_TOLERANCE"


class ProblemParseError(NormBisectError, ValueError):
    pass


@dataclass(frozen=True)
class Problem:
    ball: UnitBall
    p: Point
    q: Point
    options: BisectOptions


def _pair(obj: Any, what: str) -> Point:
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2):
        raise ProblemParseError(f"{what} must be an [x, y] pair")
    try:
        return Point(float(obj[0]), float(obj[1]))
    except (TypeError, ValueError) as exc:
        raise ProblemParseError(f"{what}: {exc}") from None


def default_tolerance(env: Optional[Mapping[str, str]] = None) -> float:
    env = os.environ if env is None else env
    raw = env.get(TOLERANCE_ENV)
    if raw is None:
        return EPS_GEOM
    try:
        tol = float(raw)
    except ValueError:
        raise ProblemParseError(f"{TOLERANCE_ENV}={raw!r} is not a number") from None
    if not tol > 0:
        raise ProblemParseError(f"{TOLERANCE_ENV} must be positive")
    return tol


def read_ball_csv(path) -> list[Point]:
    pts = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            row = [c.strip() for c in row if c.strip()]
            if not row or row[0].startswith("#"):
                continue
            try:
                pts.append(Point(float(row[0]), float(row[1])))
            except (IndexError, ValueError):
                # tolerate a header line
                if pts:
                    raise ProblemParseError(f"bad vertex row {row!r} in {path}") from None
    return pts


def parse_problem(doc: Any, ball_override: Optional[list[Point]] = None,
                  env: Optional[Mapping[str, str]] = None) -> Problem:
    if not isinstance(doc, dict):
        raise ProblemParseError("problem must be a JSON object")
    if ball_override is not None:
        raw_ball = ball_override
    else:
        if not isinstance(doc.get("ball"), list):
            raise ProblemParseError("missing 'ball' vertex list")
        raw_ball = [_pair(v, "ball vertex") for v in doc["ball"]]
    p = _pair(doc.get("p"), "p")
    q = _pair(doc.get("q"), "q")
    opts = doc.get("options") or {}
    if not isinstance(opts, dict):
        raise ProblemParseError("'options' must be an object")
    try:
        samples = int(opts.get("samples", 129))
        tolerance = float(opts["tolerance"]) if "tolerance" in opts else default_tolerance(env)
        window = opts.get("height_window")
        if window is not None:
            lo, hi = (float(w) for w in window)
            window = (lo, hi)
    except (TypeError, ValueError) as exc:
        raise ProblemParseError(f"bad options: {exc}") from None
    if samples < 3:
        raise ProblemParseError("options.samples must be at least 3")

    ball = validate_ball(raw_ball, tolerance)
    if p == q:
        raise DegeneratePair("degenerate pair: p and q coincide")
    return Problem(ball, p, q, BisectOptions(samples, window, tolerance))


def load_problem(path, ball_csv=None, env=None) -> Problem:
    try:
        text = Path(path).read_text(encoding="utf-8")
        doc = json.loads(text)
    except OSError as exc:
        raise ProblemParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ProblemParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    override = read_ball_csv(ball_csv) if ball_csv else None
    return parse_problem(doc, override, env)


# --- result documents -------------------------------------------------------

def _xy(pt: Optional[Point]):
    return None if pt is None else [pt.x, pt.y]


def _face_doc(f: Face) -> dict:
    return {"start": _xy(f.start), "end": _xy(f.end), "supporting": [f.supporting.a, f.supporting.b]}


def _cone_doc(c: Optional[Cone]):
    if c is None:
        return None
    return {"apex": _xy(c.apex), "dir1": [c.dir1.dx, c.dir1.dy], "dir2": [c.dir2.dx, c.dir2.dy]}


def classification_document(cls: PairClassification) -> dict:
    return {"kind": cls.kind.value, "top_face": _face_doc(cls.top_face),
            "bottom_face": _face_doc(cls.bottom_face)}


def result_document(dec: BisectorDecomposition, tolerance: float) -> dict:
    ct = dec.contacts
    contacts_doc = {name: _xy(getattr(ct, name)) for name in (
        "t_p", "t_p_prime", "t_q_prime", "t_q", "b_p", "b_p_prime", "b_q_prime", "b_q")}
    contacts_doc["l_top"] = {"through": _xy(ct.l_top.through), "dir": [ct.l_top.dir.dx, ct.l_top.dir.dy]}
    contacts_doc["l_bottom"] = {"through": _xy(ct.l_bottom.through),
                                "dir": [ct.l_bottom.dir.dx, ct.l_bottom.dir.dy]}
    non_strict = dec.classification.non_strict
    return {
        "p": _xy(dec.p),
        "q": _xy(dec.q),
        "classification": classification_document(dec.classification),
        "contacts": contacts_doc,
        "apices": {"s_t": _xy(dec.s_t), "s_b": _xy(dec.s_b)} if non_strict else None,
        "cones": {"top": _cone_doc(dec.cone_top), "bottom": _cone_doc(dec.cone_bottom)} if non_strict else None,
        "phi": None if dec.phi is None else [dec.phi.a, dec.phi.b],
        "g_t_height": dec.g_t_height,
        "curve": [{"z": _xy(s.z), "lambda": s.lam, "height": s.height} for s in dec.curve],
        "metadata": {"tool": "normbisect", "version": __version__,
                     "tolerance": tolerance, "samples": len(dec.curve)},
    }


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _pt(v) -> Point:
    return Point(v[0], v[1])


def _face(d: dict) -> Face:
    return Face(_pt(d["start"]), _pt(d["end"]), DualFunctional(*d["supporting"]))


def _cone(d: Optional[dict]) -> Optional[Cone]:
    if d is None:
        return None
    return Cone(_pt(d["apex"]), Direction(*d["dir1"]), Direction(*d["dir2"]))


def decomposition_from_document(doc: dict) -> BisectorDecomposition:
    """Inverse of :func:`result_document`."""
    try:
        c = doc["classification"]
        cls = PairClassification(PairKind(c["kind"]), _face(c["top_face"]), _face(c["bottom_face"]))
        ct = doc["contacts"]
        contacts = ContactPoints(
            **{k: _pt(ct[k]) for k in ("t_p", "t_p_prime", "t_q_prime", "t_q",
                                       "b_p", "b_p_prime", "b_q_prime", "b_q")},
            l_top=Line(_pt(ct["l_top"]["through"]), Direction(*ct["l_top"]["dir"])),
            l_bottom=Line(_pt(ct["l_bottom"]["through"]), Direction(*ct["l_bottom"]["dir"])),
        )
        apx = doc.get("apices") or {}
        cones = doc.get("cones") or {}
        return BisectorDecomposition(
            p=_pt(doc["p"]),
            q=_pt(doc["q"]),
            classification=cls,
            contacts=contacts,
            curve=[CurveSample(_pt(s["z"]), s["lambda"], s["height"]) for s in doc["curve"]],
            cone_top=_cone(cones.get("top")),
            cone_bottom=_cone(cones.get("bottom")),
            s_t=_pt(apx["s_t"]) if apx.get("s_t") else None,
            s_b=_pt(apx["s_b"]) if apx.get("s_b") else None,
            phi=DualFunctional(*doc["phi"]) if doc.get("phi") else None,
            g_t_height=doc.get("g_t_height"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ProblemParseError(f"malformed result document: {exc!r}") from None


def load_result(path) -> BisectorDecomposition:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ProblemParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ProblemParseError(f"{path}: invalid JSON ({exc.msg})") from None
    return decomposition_from_document(doc)


def write_curve_csv(dec: BisectorDecomposition, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "lambda", "height"])
        for s in dec.curve:
            w.writerow([repr(s.z.x), repr(s.z.y), repr(s.lam), repr(s.height)])
