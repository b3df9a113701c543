"""Bisectors of point pairs in normed planes with polygonal unit balls."""

__version__ = "0.1.0"

from .bisector import (  # noqa: E402
    BisectOptions,
    BisectorDecomposition,
    PairKind,
    Side,
    bisect,
    classify_pair,
    side_of,
    trace_B1,
)
from .geom import Point  # noqa: E402
from .norm import UnitBall, gauge, validate_ball  # noqa: E402

__all__ = [
    "BisectOptions",
    "BisectorDecomposition",
    "PairKind",
    "Point",
    "Side",
    "UnitBall",
    "bisect",
    "classify_pair",
    "gauge",
    "side_of",
    "trace_B1",
    "validate_ball",
]
