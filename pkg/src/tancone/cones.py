"""Smallest closed cone and smallest closed convex cone of a set at a point."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angular import AngularSet
from .exceptions import DegenerateInputError, InvariantError
from .geometry import TWO_PI, Point, as_point
from .ladder import ScaleLadder
from .sets import ConeSet, PlanarSet, membership, sphere_sample

__all__ = [
    "CONVEX_CLASSES",
    "ConeDescriptor",
    "angular_support",
    "classify_arcs",
    "con_a",
    "conv_a",
    "cone_distance",
]

CONVEX_CLASSES = ("point", "ray", "sector", "line", "half-plane", "plane", "general-union")

# width comparisons against pi
_PI_TOL = 1e-9


def classify_arcs(arcs: AngularSet) -> str:
    """Name the cone spanned by ``arcs`` (``general-union`` when it is not convex)."""
    if arcs.is_empty:
        return "point"
    if arcs.is_full:
        return "plane"
    circ = arcs.circular_arcs()
    if len(circ) == 1:
        width = circ[0][1] - circ[0][0]
        if width <= arcs.tol:
            return "ray"
        if width < math.pi - _PI_TOL:
            return "sector"
        if width <= math.pi + _PI_TOL:
            return "half-plane"
        return "general-union"
    if len(circ) == 2 and all(hi - lo <= arcs.tol for lo, hi in circ):
        if abs(abs(circ[1][0] - circ[0][0]) - math.pi) <= _PI_TOL:
            return "line"
    return "general-union"


@dataclass(frozen=True)
class ConeDescriptor:
    vertex: Point
    arcs: AngularSet
    convex_class: str

    def __post_init__(self):
        object.__setattr__(self, "vertex", as_point(self.vertex))
        if self.convex_class not in CONVEX_CLASSES:
            raise InvariantError(f"unknown cone class {self.convex_class!r}")
        if classify_arcs(self.arcs) != self.convex_class:
            raise InvariantError(
                f"class {self.convex_class!r} inconsistent with arcs {self.arcs!r}"
            )

    @classmethod
    def from_arcs(cls, vertex, arcs: AngularSet) -> "ConeDescriptor":
        return cls(vertex, arcs, classify_arcs(arcs))

    def as_set(self) -> ConeSet:
        return ConeSet(self.vertex, self.arcs)

    def to_dict(self) -> dict:
        """Set-spec document (a ``cone`` variant) for this cone."""
        return {
            "variant": "cone",
            "vertex": list(self.vertex),
            "arcs": [[lo, hi] for lo, hi in self.arcs.circular_arcs()],
            "marked_point": list(self.vertex),
        }


def _sampled_support(X: PlanarSet, a: Point, window: ScaleLadder, pad: float, n: int) -> AngularSet:
    out = AngularSet.empty()
    for t in window.scales:
        sample = sphere_sample(X, a, t, n)
        if sample.empty:
            continue
        rel = sample.points - np.asarray(a)
        theta = np.arctan2(rel[:, 1], rel[:, 0])
        p = max(pad + sample.mesh / t, 1e-9)
        out = out.union(AngularSet.from_angles(theta, p))
    return out


def angular_support(X: PlanarSet, a, window: ScaleLadder | None = None, pad: float = 0.0,
                    n: int = 1024) -> AngularSet:
    """Closed set of directions whose cone is ``Con_a(X)``.

    Variants that know their direction set exactly (cones, radial products and
    polygons at any point, star regions at their center, finite samples) skip
    sampling.  Otherwise sphere samples over every scale of ``window`` are
    padded by ``pad`` plus the per-scale mesh angle and merged.
    """
    a = as_point(a)
    if not membership(X, a):
        raise DegenerateInputError("the marked point must belong to the set")
    exact = X.directions(a)
    if exact is not None:
        arcs = exact
    else:
        window = window or ScaleLadder()
        arcs = _sampled_support(X, a, window, pad, n)
    if arcs.is_empty:
        raise DegenerateInputError("the set reduces to its marked point")
    return arcs


def con_a(X: PlanarSet, a, window: ScaleLadder | None = None, pad: float = 0.0) -> ConeDescriptor:
    """Smallest closed cone with vertex ``a`` containing ``X``."""
    a = as_point(a)
    if not membership(X, a):
        raise DegenerateInputError("the marked point must belong to the set")
    try:
        arcs = angular_support(X, a, window, pad)
    except DegenerateInputError:
        # X == {a}
        return ConeDescriptor(a, AngularSet.empty(), "point")
    return ConeDescriptor.from_arcs(a, arcs)


def _convex_hull_arcs(arcs: AngularSet) -> tuple[AngularSet, str]:
    if arcs.is_empty:
        return arcs, "point"
    if arcs.is_full:
        return arcs, "plane"
    circ = arcs.circular_arcs()
    if len(circ) == 1 and circ[0][1] - circ[0][0] < math.pi - _PI_TOL:
        # already convex: return the identical arcs
        return arcs, classify_arcs(arcs)
    lo, hi = arcs.largest_gap()
    gap = hi - lo
    if gap > math.pi + _PI_TOL:
        return AngularSet([(hi, lo + TWO_PI)]), classify_arcs(AngularSet([(hi, lo + TWO_PI)]))
    if gap >= math.pi - _PI_TOL:
        if len(circ) == 2 and classify_arcs(arcs) == "line":
            return arcs, "line"
        return AngularSet([(hi, hi + math.pi)]), "half-plane"
    return AngularSet.full(), "plane"


def conv_a(X: PlanarSet, a, window: ScaleLadder | None = None, pad: float = 0.0) -> ConeDescriptor:
    """Smallest closed convex cone with vertex ``a`` containing ``X``.

    Directions inside an arc narrower than pi give that sector; an extreme
    gap of exactly pi gives a half-plane bounded through the two extreme
    directions, unless the directions are one antipodal pair (a line);
    anything wider fills the plane.
    """
    cone = con_a(X, a, window, pad)
    arcs, kind = _convex_hull_arcs(cone.arcs)
    return ConeDescriptor(cone.vertex, arcs, kind)


def cone_distance(C: ConeDescriptor, z) -> float:
    """Exact distance from ``z`` to the closed cone ``C``."""
    z = as_point(z)
    v = C.vertex
    dx, dy = z.x - v.x, z.y - v.y
    r = math.hypot(dx, dy)
    if r == 0.0 or C.arcs.is_empty:
        return r
    if C.arcs.contains(math.atan2(dy, dx)):
        return 0.0
    best = r
    for phi in C.arcs.endpoints():
        ux, uy = math.cos(phi), math.sin(phi)
        s = dx * ux + dy * uy
        if s > 0:
            best = min(best, abs(dx * uy - dy * ux))
    return best
