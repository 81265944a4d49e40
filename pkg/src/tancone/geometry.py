"""Planar primitives: angles, distances to rays and segments, sampled Hausdorff distance.

Points are plain ``(x, y)`` pairs; batches of points are ``(n, 2)`` float arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from .exceptions import DegenerateInputError, EmptySampleError

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-12

__all__ = [
    "ANGLE_TOL",
    "TWO_PI",
    "Point",
    "PointSample",
    "Ray",
    "angle_of",
    "as_point",
    "as_points",
    "dist_to_ray",
    "dist_to_segment",
    "hausdorff_distance",
    "directed_hausdorff",
    "normalize_angle",
    "segment_distances",
]


class Point(NamedTuple):
    x: float
    y: float


def as_point(z) -> Point:
    """Coerce ``z`` to a :class:`Point`, rejecting non-finite coordinates."""
    if isinstance(z, complex):
        x, y = z.real, z.imag
    else:
        x, y = z
    x, y = float(x), float(y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DegenerateInputError(f"non-finite point ({x}, {y})")
    return Point(x, y)


def as_points(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, 2)
    if arr.size == 0:
        return np.empty((0, 2))
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DegenerateInputError(f"expected an (n, 2) array of points, got shape {arr.shape}")
    return arr


def normalize_angle(theta):
    """Map angles into ``[0, 2*pi)``; values within ANGLE_TOL of 2*pi become 0."""
    out = np.mod(theta, TWO_PI)
    out = np.where(out >= TWO_PI - ANGLE_TOL, 0.0, out)
    if np.ndim(out) == 0:
        return float(out)
    return out


def angle_of(z, a) -> float:
    """Argument of ``z - a`` in ``[0, 2*pi)``."""
    z, a = as_point(z), as_point(a)
    dx, dy = z.x - a.x, z.y - a.y
    if dx == 0.0 and dy == 0.0:
        raise DegenerateInputError("angle_of is undefined for z == a")
    return normalize_angle(math.atan2(dy, dx))


@dataclass(frozen=True)
class Ray:
    """The closed ray ``{vertex + s*(cos d, sin d) : s >= 0}``."""

    vertex: Point
    direction: float

    def __post_init__(self):
        object.__setattr__(self, "vertex", as_point(self.vertex))
        if not math.isfinite(self.direction):
            raise DegenerateInputError("ray direction must be finite")
        object.__setattr__(self, "direction", normalize_angle(float(self.direction)))

    @classmethod
    def through(cls, a, b) -> "Ray":
        """The ray from ``a`` through ``b``."""
        return cls(as_point(a), angle_of(b, a))

    @property
    def unit(self) -> tuple[float, float]:
        return math.cos(self.direction), math.sin(self.direction)


def dist_to_ray(z, ray: Ray) -> float:
    z = as_point(z)
    ux, uy = ray.unit
    dx, dy = z.x - ray.vertex.x, z.y - ray.vertex.y
    s = dx * ux + dy * uy
    if s <= 0.0:
        return math.hypot(dx, dy)
    return abs(dx * uy - dy * ux)


def segment_distances(points: np.ndarray, p, q) -> np.ndarray:
    """Distances from each row of ``points`` to the closed segment ``[p, q]``."""
    points = as_points(points)
    p = np.asarray(p, dtype=float)
    d = np.asarray(q, dtype=float) - p
    rel = points - p
    dd = float(d @ d)
    if dd == 0.0:
        return np.hypot(rel[:, 0], rel[:, 1])
    s = np.clip((rel @ d) / dd, 0.0, 1.0)
    foot = rel - s[:, None] * d
    return np.hypot(foot[:, 0], foot[:, 1])


def dist_to_segment(z, p, q) -> float:
    return float(segment_distances(np.array([as_point(z)]), as_point(p), as_point(q))[0])


@dataclass(frozen=True, eq=False)
class PointSample:
    """Finite sample of a shape; ``mesh`` bounds the Hausdorff distance to that shape."""

    points: np.ndarray
    mesh: float = 0.0

    def __post_init__(self):
        pts = as_points(self.points)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if not self.mesh >= 0.0:
            raise DegenerateInputError("mesh must be non-negative")

    def __len__(self):
        return len(self.points)

    @property
    def empty(self) -> bool:
        return len(self.points) == 0


def _directed_brute(src: np.ndarray, dst: np.ndarray, chunk: int = 2048) -> float:
    worst = 0.0
    for start in range(0, len(src), chunk):
        block = src[start:start + chunk]
        dx = block[:, 0, None] - dst[None, :, 0]
        dy = block[:, 1, None] - dst[None, :, 1]
        best = np.min(dx * dx + dy * dy, axis=1)
        worst = max(worst, float(np.max(best)))
    return math.sqrt(worst)


def _directed_tree(src: np.ndarray, dst: np.ndarray, k: int = 4) -> float:
    # Candidates come from the tree; the distance itself is recomputed with the
    # brute-force expression so both paths return the same floats.
    k = min(k, len(dst))
    _, idx = cKDTree(dst).query(src, k=k)
    idx = np.asarray(idx).reshape(len(src), k)
    cand = dst[idx]
    dx = src[:, 0, None] - cand[:, :, 0]
    dy = src[:, 1, None] - cand[:, :, 1]
    best = np.min(dx * dx + dy * dy, axis=1)
    return math.sqrt(float(np.max(best)))


def directed_hausdorff(A: PointSample, B: PointSample, method: str = "brute") -> float:
    """``sup_{x in A} inf_{y in B} |x - y|`` over the sample points."""
    if A.empty or B.empty:
        raise EmptySampleError("Hausdorff distance needs two nonempty samples")
    if method == "brute":
        return _directed_brute(A.points, B.points)
    if method == "tree":
        return _directed_tree(A.points, B.points)
    raise ValueError(f"unknown method {method!r}")


def hausdorff_distance(A: PointSample, B: PointSample, method: str = "brute") -> float:
    """Symmetric Hausdorff distance between two samples.

    The distance between the underlying shapes differs from the returned value
    by at most ``A.mesh + B.mesh``.  ``method="tree"`` uses a k-d tree to find
    nearest-neighbour candidates and returns the same value as ``"brute"``.
    """
    return max(directed_hausdorff(A, B, method), directed_hausdorff(B, A, method))
