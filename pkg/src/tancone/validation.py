"""Input coercion shared by the estimators and the command line."""
from __future__ import annotations

import math

import numpy as np

from .exceptions import DegenerateInputError, SchemaError
from .geometry import Point, as_point
from .intervals import IntervalSet
from .ladder import ScaleLadder
from .sets import PlanarSet, membership, parse_set_spec

__all__ = ["check_interval_set", "check_ladder", "check_planar_set", "check_sample_count"]


def check_planar_set(X, point=None) -> tuple[PlanarSet, Point]:
    """Return ``(X, a)`` from a set, a set-spec mapping or JSON text.

    ``point`` overrides the document's marked point and must lie in ``X``.
    """
    if isinstance(X, PlanarSet):
        if point is None:
            raise DegenerateInputError("a marked point is required with a PlanarSet")
        a = as_point(point)
    else:
        X, a = parse_set_spec(X)
        if point is not None:
            a = as_point(point)
    if not membership(X, a):
        raise DegenerateInputError(f"marked point {tuple(a)} does not belong to the set")
    return X, a


def check_interval_set(A) -> IntervalSet:
    """Accept an IntervalSet, a list of ``[lo, hi]`` pairs or ``{"intervals": [...]}``."""
    if isinstance(A, IntervalSet):
        return A
    if isinstance(A, dict):
        if "intervals" not in A:
            raise SchemaError("interval spec needs an 'intervals' field")
        A = A["intervals"]
    try:
        pairs = [(float(lo), float(hi)) for lo, hi in A]
    except (TypeError, ValueError) as exc:
        raise SchemaError("intervals must be [lo, hi] pairs") from exc
    return IntervalSet(pairs)


def check_ladder(t0: float, q: float, depth: int, minimum: int = 4) -> ScaleLadder:
    ladder = ScaleLadder(float(t0), float(q), int(depth))
    ladder.require(minimum)
    return ladder


def check_sample_count(n, minimum: int = 64) -> int:
    if isinstance(n, (bool, np.bool_)) or int(n) != n or n < minimum:
        raise DegenerateInputError(f"sample count must be an integer >= {minimum}")
    return int(n)


def check_angle(theta) -> float:
    theta = float(theta)
    if not math.isfinite(theta):
        raise DegenerateInputError("angle must be finite")
    return theta
