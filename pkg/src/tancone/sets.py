"""Planar sets with a marked point.

Every variant implements the same small vectorized protocol used by the rest
of the package:

``contains(points)``
    closed membership, with a relative tolerance of about 1e-12;
``distances(points)``
    ``(values, error_bounds)`` of the distance to the set;
``sphere_arcs(a, t)``
    ``(AngularSet, angular_error)``: the directions ``phi`` with
    ``a + t*exp(i*phi)`` in the set;
``directions(a)``
    closure of ``{arg(z - a) : z in X, z != a}`` when it can be computed
    exactly, else ``None``;
``radii_along(a, arcs, resolution)``
    ``{|z - a| : z in X, z == a or arg(z - a) in arcs}``.
"""
from __future__ import annotations

import json
import math
from abc import ABC, abstractmethod
from pathlib import Path
from typing import ClassVar, NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from .angular import AngularSet
from .exceptions import (
    DegenerateInputError,
    EmptySampleError,
    InvariantError,
    SchemaError,
    UnsupportedVariantError,
)
from .geometry import (
    ANGLE_TOL,
    TWO_PI,
    Point,
    PointSample,
    as_point,
    as_points,
    normalize_angle,
    segment_distances,
)
from .intervals import IntervalSet

__all__ = [
    "ConeSet",
    "FiniteSample",
    "FullPlane",
    "HalfPlane",
    "PlanarSet",
    "Polygon",
    "RadialProduct",
    "RealHalfLine",
    "RealLine",
    "StarRegion",
    "StarlikeResult",
    "membership",
    "nearest_distance",
    "parse_set_spec",
    "serialize_set",
    "sphere_sample",
    "starlike_check",
    "load_set_spec",
]

_REL_TOL = 1e-12


def _rotate(points: np.ndarray, angle: float, shift) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    x, y = points[:, 0], points[:, 1]
    return np.column_stack((c * x - s * y + shift[0], s * x + c * y + shift[1]))


def _polar(points: np.ndarray, center) -> tuple[np.ndarray, np.ndarray]:
    rel = points - np.asarray(center, dtype=float)
    r = np.hypot(rel[:, 0], rel[:, 1])
    theta = normalize_angle(np.arctan2(rel[:, 1], rel[:, 0]))
    return r, np.atleast_1d(theta)


def _circle_points(a, t: float, theta) -> np.ndarray:
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    return np.column_stack((a[0] + t * np.cos(theta), a[1] + t * np.sin(theta)))


def _arcs_from_breakpoints(breaks, member) -> AngularSet:
    """Exact angular set from the angles where membership may change."""
    breaks = np.asarray(breaks, dtype=float)
    if breaks.size == 0:
        return AngularSet.full() if member(np.array([0.0]))[0] else AngularSet.empty()
    b = np.unique(normalize_angle(breaks))
    nxt = np.roll(b, -1)
    nxt[-1] += TWO_PI
    mid_in = member(0.5 * (b + nxt))
    pt_in = member(b)
    prev_in = np.roll(mid_in, 1)
    arcs = [(b[i], nxt[i]) for i in np.flatnonzero(mid_in)]
    arcs += [(b[i], b[i]) for i in np.flatnonzero(pt_in & ~mid_in & ~prev_in)]
    return AngularSet(arcs)


def _arcs_by_probing(member, step: float) -> tuple[AngularSet, float]:
    k = max(8, int(math.ceil(TWO_PI / step)))
    theta = np.arange(k) * (TWO_PI / k)
    hit = member(theta)
    h = TWO_PI / k
    arcs = AngularSet.from_angles(theta[hit], 0.5 * h) if hit.any() else AngularSet.empty()
    return arcs, h


def _ray_circle_angles(a, t, vertex, phis) -> list[float]:
    """Directions (seen from ``a``) where circle(a, t) meets rays from ``vertex``."""
    out = []
    f = np.asarray(vertex, dtype=float) - np.asarray(a, dtype=float)
    for phi in phis:
        u = np.array([math.cos(phi), math.sin(phi)])
        b = float(f @ u)
        c = float(f @ f) - t * t
        disc = b * b - c
        if disc < 0:
            continue
        root = math.sqrt(disc)
        for s in (-b - root, -b + root):
            if s >= 0:
                p = f + s * u
                out.append(math.atan2(p[1], p[0]))
    return out


def _circle_circle_angles(a, t, center, radius) -> list[float]:
    """Directions (seen from ``a``) where circle(a, t) meets circle(center, radius)."""
    f = np.asarray(center, dtype=float) - np.asarray(a, dtype=float)
    d = float(np.hypot(f[0], f[1]))
    if d == 0.0 or d > t + radius or d < abs(t - radius):
        return []
    base = math.atan2(f[1], f[0])
    cosw = (t * t + d * d - radius * radius) / (2 * t * d)
    w = math.acos(max(-1.0, min(1.0, cosw)))
    return [base - w, base + w]


class PlanarSet(ABC):
    """Common interface; instances are immutable."""

    variant: ClassVar[str]

    @abstractmethod
    def contains(self, points) -> np.ndarray: ...

    @abstractmethod
    def distances(self, points) -> tuple[np.ndarray, np.ndarray]: ...

    @abstractmethod
    def sphere_arcs(self, a, t: float) -> tuple[AngularSet, float]: ...

    @abstractmethod
    def moved(self, angle: float, shift=(0.0, 0.0)) -> "PlanarSet":
        """Image under ``z -> exp(i*angle)*z + shift``."""

    @abstractmethod
    def to_dict(self) -> dict: ...

    @abstractmethod
    def witness_points(self, mesh: float) -> np.ndarray:
        """Points whose segments to a centre decide starlikeness (boundary samples)."""

    def directions(self, a) -> AngularSet | None:
        return None

    def radii_along(self, a, arcs: AngularSet, resolution: float) -> IntervalSet | None:
        return None

    def critical_radii(self, a) -> list[float]:
        """Radii at which sphere arcs may change non-monotonically."""
        return []

    def extent(self, a) -> float:
        """``sup |z - a|`` over the set."""
        return math.inf

    def __repr__(self):
        return f"{type(self).__name__}({json.dumps(self.to_dict())})"


# ---------------------------------------------------------------------------
# cones and radial products
# ---------------------------------------------------------------------------


def _interval_gap(r: np.ndarray, radii: IntervalSet) -> np.ndarray:
    best = np.full(r.shape, np.inf)
    for lo, hi in radii:
        best = np.minimum(best, np.maximum.reduce([lo - r, np.zeros_like(r), r - hi]))
    return best


def _radial_segment_distances(rel: np.ndarray, phi: float, radii: IntervalSet) -> np.ndarray:
    u = np.array([math.cos(phi), math.sin(phi)])
    s = rel @ u
    best = np.full(len(rel), np.inf)
    for lo, hi in radii:
        sc = np.clip(s, lo, hi)
        best = np.minimum(best, np.hypot(rel[:, 0] - sc * u[0], rel[:, 1] - sc * u[1]))
    return best


class RadialProduct(PlanarSet):
    """``{vertex + r*exp(i*theta) : r in radii, theta in arcs}``."""

    variant = "radial-product"

    def __init__(self, vertex, radii: IntervalSet, arcs: AngularSet):
        self.vertex = as_point(vertex)
        if not isinstance(radii, IntervalSet):
            radii = IntervalSet(radii)
        if not isinstance(arcs, AngularSet):
            arcs = AngularSet(arcs)
        self.radii = radii
        self.arcs = arcs

    def _at_vertex(self, a) -> bool:
        a = as_point(a)
        return a == self.vertex

    def contains(self, points) -> np.ndarray:
        pts = as_points(points)
        r, theta = _polar(pts, self.vertex)
        scale = np.maximum(r, 1.0) * _REL_TOL
        in_r = _interval_gap(r, self.radii) <= scale
        at_v = r == 0.0
        return in_r & (at_v | self.arcs.contains(theta))

    def distances(self, points):
        pts = as_points(points)
        if self.radii.is_empty:
            raise EmptySampleError("distance to an empty set")
        rel = pts - np.asarray(self.vertex)
        r, theta = _polar(pts, self.vertex)
        if self.arcs.is_empty:
            if not self.radii.contains(0.0):
                raise EmptySampleError("distance to an empty set")
            return r, np.zeros_like(r)
        inside = self.arcs.contains(theta)
        out = _interval_gap(r, self.radii)
        if not inside.all():
            side = np.full(len(pts), np.inf)
            for phi in self.arcs.endpoints() or [self.arcs.circular_arcs()[0][0]]:
                side = np.minimum(side, _radial_segment_distances(rel, phi, self.radii))
            out = np.where(inside, out, side)
        return out, np.zeros_like(out)

    def sphere_arcs(self, a, t):
        a = as_point(a)
        if a == self.vertex:
            return (self.arcs if self.radii.contains(t, t * _REL_TOL) else AngularSet.empty()), 0.0
        breaks = _ray_circle_angles(a, t, self.vertex, self.arcs.endpoints())
        for lo, hi in self.radii:
            for rad in (lo, hi):
                if math.isfinite(rad) and rad > 0:
                    breaks += _circle_circle_angles(a, t, self.vertex, rad)
        member = lambda th: self.contains(_circle_points(a, t, th))  # noqa: E731
        return _arcs_from_breakpoints(breaks, member), 0.0

    def directions(self, a):
        if not self._at_vertex(a):
            return None
        positive = any(hi > 0 for _, hi in self.radii)
        return self.arcs if positive else AngularSet.empty()

    def radii_along(self, a, arcs, resolution):
        if not self._at_vertex(a):
            return None
        if self.arcs.intersects(arcs):
            return self.radii.union(IntervalSet.point(0.0))
        return IntervalSet.point(0.0)

    def critical_radii(self, a):
        if not self._at_vertex(a):
            return []
        return sorted({x for iv in self.radii for x in iv if math.isfinite(x)})

    def extent(self, a):
        hi = self.radii.intervals[-1][1] if len(self.radii) else 0.0
        return hi + math.dist(as_point(a), self.vertex)

    def moved(self, angle, shift=(0.0, 0.0)):
        v = _rotate(np.array([self.vertex]), angle, shift)[0]
        return RadialProduct(v, self.radii, self.arcs.shifted(angle))

    def witness_points(self, mesh):
        # outer radii first so the reported counterexample is the farthest witness
        theta = self.arcs.sample(max(mesh, 1e-6))
        pts = []
        for lo, hi in sorted(self.radii, key=lambda iv: -iv[1]):
            for rad in (hi, lo):
                rad = rad if math.isfinite(rad) else 1.0
                if rad > 0:
                    pts.append(_circle_points(self.vertex, rad, theta))
        pts.append(np.array([self.vertex]))
        return np.concatenate(pts)

    def to_dict(self):
        return {
            "variant": self.variant,
            "vertex": list(self.vertex),
            "radii": [[lo, hi] for lo, hi in self.radii],
            "arcs": [[lo, hi] for lo, hi in self.arcs.circular_arcs()],
        }


class ConeSet(RadialProduct):
    """Closed cone ``{vertex + r*exp(i*theta) : r >= 0, theta in arcs}``."""

    variant = "cone"

    def __init__(self, vertex, arcs: AngularSet):
        super().__init__(vertex, IntervalSet.half_line(), arcs)

    def sphere_arcs(self, a, t):
        if as_point(a) == self.vertex:
            return self.arcs, 0.0
        return super().sphere_arcs(a, t)

    def moved(self, angle, shift=(0.0, 0.0)):
        v = _rotate(np.array([self.vertex]), angle, shift)[0]
        return ConeSet(v, self.arcs.shifted(angle))

    def witness_points(self, mesh):
        theta = self.arcs.sample(max(mesh, 1e-6))
        return np.concatenate([_circle_points(self.vertex, 1.0, theta), np.array([self.vertex])])

    def to_dict(self):
        return {
            "variant": self.variant,
            "vertex": list(self.vertex),
            "arcs": [[lo, hi] for lo, hi in self.arcs.circular_arcs()],
        }


class _CanonicalCone(ConeSet):
    _arcs: ClassVar[tuple] = ()

    def __init__(self):
        super().__init__((0.0, 0.0), AngularSet(self._arcs))

    def to_dict(self):
        return {"variant": self.variant}


class RealLine(_CanonicalCone):
    """The real axis ``{(x, 0)}``."""

    variant = "real-line"
    _arcs = ((0.0, 0.0), (math.pi, math.pi))


class RealHalfLine(_CanonicalCone):
    """``{(x, 0) : x >= 0}``."""

    variant = "real-half-line"
    _arcs = ((0.0, 0.0),)


class HalfPlane(_CanonicalCone):
    """Closed upper half-plane ``{y >= 0}``."""

    variant = "half-plane"
    _arcs = ((0.0, math.pi),)


class FullPlane(_CanonicalCone):
    variant = "full-plane"
    _arcs = ((0.0, TWO_PI),)


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------


def _segments_cross(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    def on_seg(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    if ((d1 > 0 > d2) or (d1 < 0 < d2)) and ((d3 > 0 > d4) or (d3 < 0 < d4)):
        return True
    return (
        (d1 == 0 and on_seg(q1, q2, p1))
        or (d2 == 0 and on_seg(q1, q2, p2))
        or (d3 == 0 and on_seg(p1, p2, q1))
        or (d4 == 0 and on_seg(p1, p2, q2))
    )


class Polygon(PlanarSet):
    """Closed region bounded by a simple polygon (stored counter-clockwise)."""

    variant = "polygon"

    def __init__(self, vertices):
        v = as_points(vertices)
        if len(v) >= 2 and np.array_equal(v[0], v[-1]):
            v = v[:-1]
        if len(v) < 3:
            raise InvariantError("a polygon needs at least 3 vertices")
        if not np.all(np.isfinite(v)):
            raise InvariantError("polygon vertices must be finite")
        x, y = v[:, 0], v[:, 1]
        area2 = float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
        scale = max(1.0, float(np.max(np.abs(v))))
        if abs(area2) <= 1e-14 * scale * scale:
            raise InvariantError("degenerate polygon (zero area)")
        if area2 < 0:
            v = v[::-1].copy()
        n = len(v)
        for i in range(n):
            if np.array_equal(v[i], v[(i + 1) % n]):
                raise InvariantError("repeated polygon vertex")
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                if _segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]):
                    raise InvariantError("polygon is not simple")
        v.setflags(write=False)
        self.vertices = v
        self._scale = scale
        self._edges = (v, np.roll(v, -1, axis=0))

    def _boundary_distance(self, pts):
        p, q = self._edges
        best = np.full(len(pts), np.inf)
        for i in range(len(p)):
            best = np.minimum(best, segment_distances(pts, p[i], q[i]))
        return best

    def contains(self, points) -> np.ndarray:
        pts = as_points(points)
        p, q = self._edges
        x, y = pts[:, 0], pts[:, 1]
        inside = np.zeros(len(pts), dtype=bool)
        for i in range(len(p)):
            (x1, y1), (x2, y2) = p[i], q[i]
            cond = (y1 > y) != (y2 > y)
            with np.errstate(divide="ignore", invalid="ignore"):
                xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            inside ^= cond & (x < xc)
        if inside.all():
            return inside
        near = self._boundary_distance(pts[~inside]) <= _REL_TOL * self._scale
        inside[~inside] = near
        return inside

    def distances(self, points):
        pts = as_points(points)
        out = np.zeros(len(pts))
        outside = ~self.contains(pts)
        if outside.any():
            out[outside] = self._boundary_distance(pts[outside])
        return out, np.zeros_like(out)

    def sphere_arcs(self, a, t):
        a = np.asarray(as_point(a))
        p, q = self._edges
        f = p - a
        d = q - p
        A = np.einsum("ij,ij->i", d, d)
        B = 2 * np.einsum("ij,ij->i", f, d)
        C = np.einsum("ij,ij->i", f, f) - t * t
        disc = B * B - 4 * A * C
        # near-tangent circles: rounding can push the discriminant below 0
        ok = disc >= -1e-12 * (B * B + np.abs(4 * A * C))
        root = np.sqrt(np.where(disc > 0, disc, 0.0))
        slack = 1e-12
        breaks = []
        for sgn in (-1.0, 1.0):
            s = (-B + sgn * root) / (2 * A)
            good = ok & (s >= -slack) & (s <= 1 + slack)
            pt = f[good] + np.clip(s[good], 0.0, 1.0)[:, None] * d[good]
            breaks.append(np.arctan2(pt[:, 1], pt[:, 0]))
        # vertices lying on the circle
        rv = np.hypot(f[:, 0], f[:, 1])
        on = np.abs(rv - t) <= 1e-12 * max(t, 1.0)
        on &= rv > 0
        breaks.append(np.arctan2(f[on, 1], f[on, 0]))
        member = lambda th: self.contains(_circle_points(a, t, th))  # noqa: E731
        return _arcs_from_breakpoints(np.concatenate(breaks), member), 0.0

    def directions(self, a):
        a = np.asarray(as_point(a))
        p, q = self._edges
        arcs = []
        for i in range(len(p)):
            u, w = p[i] - a, q[i] - a
            nu, nw = math.hypot(*u), math.hypot(*w)
            tu = math.atan2(u[1], u[0]) if nu > 0 else None
            tw = math.atan2(w[1], w[0]) if nw > 0 else None
            if tu is None or tw is None:
                t = tu if tu is not None else tw
                arcs.append((t, t))
                continue
            cross = u[0] * w[1] - u[1] * w[0]
            if cross > 0:
                lo, hi = tu, tw
            elif cross < 0:
                lo, hi = tw, tu
            elif u @ w > 0:
                lo = hi = tu
            else:
                arcs.extend([(tu, tu), (tw, tw)])
                continue
            if hi < lo:
                hi += TWO_PI
            arcs.append((lo, hi))
        return AngularSet(arcs)

    def radii_along(self, a, arcs, resolution):
        a_pt = np.asarray(as_point(a))
        p, q = self._edges
        crit = [0.0]
        crit += list(np.hypot(*(self.vertices - a_pt).T))
        d = q - p
        f = a_pt - p
        s = np.clip(np.einsum("ij,ij->i", f, d) / np.einsum("ij,ij->i", d, d), 0.0, 1.0)
        foot = p + s[:, None] * d - a_pt
        crit += list(np.hypot(foot[:, 0], foot[:, 1]))
        for phi in arcs.endpoints():
            u = np.array([math.cos(phi), math.sin(phi)])
            for i in range(len(p)):
                m = np.column_stack((u, -d[i]))
                det = np.linalg.det(m)
                if abs(det) < 1e-15:
                    continue
                r, sp = np.linalg.solve(m, p[i] - a_pt)
                if r > 0 and -1e-12 <= sp <= 1 + 1e-12:
                    crit.append(float(r))
        crit = np.unique(np.asarray(crit))

        def hit(r):
            if r == 0.0:
                return True
            sph, _ = self.sphere_arcs(a_pt, r)
            return (not sph.is_empty) if arcs.is_full else sph.intersects(arcs)

        at = [hit(r) for r in crit]
        between = [hit(0.5 * (crit[i] + crit[i + 1])) for i in range(len(crit) - 1)]
        out = [(r, r) for r, h in zip(crit, at) if h]
        out += [(crit[i], crit[i + 1]) for i, h in enumerate(between) if h]
        return IntervalSet(out)

    def extent(self, a):
        return float(np.max(np.hypot(*(self.vertices - np.asarray(as_point(a))).T)))

    def is_convex(self) -> bool:
        v, w = self._edges
        d = w - v
        cross = d[:, 0] * np.roll(d[:, 1], -1) - d[:, 1] * np.roll(d[:, 0], -1)
        return bool(np.all(cross >= -1e-14 * self._scale ** 2))

    def moved(self, angle, shift=(0.0, 0.0)):
        return Polygon(_rotate(self.vertices, angle, shift))

    def witness_points(self, mesh):
        p, q = self._edges
        pts = [p]
        for i in range(len(p)):
            k = max(1, int(math.ceil(math.dist(p[i], q[i]) / max(mesh, 1e-9))))
            s = np.arange(1, k) / k
            pts.append(p[i] + s[:, None] * (q[i] - p[i]))
        return np.concatenate(pts)

    def to_dict(self):
        return {"variant": self.variant, "vertices": self.vertices.tolist()}


# ---------------------------------------------------------------------------
# star regions
# ---------------------------------------------------------------------------


class StarRegion(PlanarSet):
    """``{center + r*exp(i*theta) : theta in support, 0 <= r <= rho(theta)}``.

    ``rho`` is given by samples on the uniform grid ``linspace(theta_start,
    theta_stop, len(radii))`` and interpolated linearly in ``theta``.  When
    ``theta_stop - theta_start`` is ``2*pi`` the grid is periodic (the last
    sample is not repeated) and the support is the whole circle; otherwise
    only the center lies outside ``[theta_start, theta_stop]``.
    """

    variant = "star-region"

    def __init__(self, center, theta_start: float, theta_stop: float, radii):
        self.center = as_point(center)
        rho = np.asarray(radii, dtype=float).ravel()
        if len(rho) < 8:
            raise InvariantError("star region needs at least 8 radial samples")
        if not np.all(np.isfinite(rho)) or np.any(rho < 0):
            raise InvariantError("star region radii must be finite and nonnegative")
        width = float(theta_stop) - float(theta_start)
        if not (0.0 < width <= TWO_PI + ANGLE_TOL):
            raise InvariantError("star region needs 0 < theta_stop - theta_start <= 2*pi")
        self.periodic = width >= TWO_PI - ANGLE_TOL
        self.theta_start = float(theta_start)
        self.theta_stop = float(theta_stop)
        rho.setflags(write=False)
        self.radii = rho
        n = len(rho)
        if self.periodic:
            self.width = TWO_PI
            self._phi = np.arange(n + 1) * (TWO_PI / n)
            self._rho = np.append(rho, rho[0])
            self.support = AngularSet.full()
        else:
            self.width = width
            self._phi = np.linspace(0.0, width, n)
            self._rho = rho
            self.support = AngularSet([(self.theta_start, self.theta_start + width)])
        self._step = self._phi[1] - self._phi[0]
        self._cells = None

    # rho as a function of absolute direction; -1 off the support
    def rho(self, theta) -> np.ndarray:
        phi = np.atleast_1d(normalize_angle(np.asarray(theta, dtype=float) - self.theta_start))
        if not self.periodic:
            near_top = phi > TWO_PI - ANGLE_TOL
            phi = np.where(near_top, 0.0, phi)
            on = phi <= self.width + ANGLE_TOL
            phi = np.minimum(phi, self.width)
        else:
            on = np.ones(phi.shape, dtype=bool)
        return np.where(on, np.interp(phi, self._phi, self._rho), -1.0)

    def contains(self, points):
        pts = as_points(points)
        r, theta = _polar(pts, self.center)
        rho = self.rho(theta)
        return (r == 0.0) | (r <= rho * (1 + _REL_TOL) + 1e-15)

    def _chords(self):
        if self._cells is None:
            th = self.theta_start + self._phi
            pts = np.column_stack((self._rho * np.cos(th), self._rho * np.sin(th))) + np.asarray(self.center)
            d_rho = np.abs(np.diff(self._rho))
            top = np.maximum(self._rho[:-1], self._rho[1:])
            dev = (2 * d_rho * self._step + top * self._step ** 2) / 8.0
            p, q = pts[:-1], pts[1:]
            if not self.periodic:
                c = np.asarray(self.center)[None, :]
                p = np.concatenate([p, c, c])
                q = np.concatenate([q, pts[:1], pts[-1:]])
                dev = np.concatenate([dev, [0.0, 0.0]])
            self._cells = (p, q - p, dev)
        return self._cells

    def distances(self, points, chunk: int = 256):
        pts = as_points(points)
        out = np.zeros(len(pts))
        bound = np.zeros(len(pts))
        outside = np.flatnonzero(~self.contains(pts))
        p, d, dev = self._chords()
        dd = np.einsum("ij,ij->i", d, d)
        dd = np.where(dd == 0.0, 1.0, dd)
        for start in range(0, len(outside), chunk):
            idx = outside[start:start + chunk]
            rel = pts[idx, None, :] - p[None, :, :]
            s = np.clip(np.einsum("kij,ij->ki", rel, d) / dd, 0.0, 1.0)
            foot = rel - s[..., None] * d[None, :, :]
            dist = np.hypot(foot[..., 0], foot[..., 1])
            lo = np.maximum(np.min(dist - dev, axis=1), 0.0)
            hi = np.min(dist + dev, axis=1)
            out[idx] = 0.5 * (lo + hi)
            bound[idx] = 0.5 * (hi - lo)
        return out, bound

    def _cell_arcs(self, t: float) -> AngularSet:
        r0, r1 = self._rho[:-1], self._rho[1:]
        f0, f1 = self._phi[:-1], self._phi[1:]
        a0, a1 = r0 >= t, r1 >= t
        keep = a0 | a1
        with np.errstate(divide="ignore", invalid="ignore"):
            cut = self._step * (r0 - t) / (r0 - r1)
        lo = np.where(a0, f0, f0 + cut)
        hi = np.where(a1, f1, f0 + cut)
        lo, hi = lo[keep], hi[keep]
        return self._runs(lo, hi)

    def _runs(self, lo, hi) -> AngularSet:
        if lo.size == 0:
            return AngularSet.empty()
        brk = np.flatnonzero(lo[1:] > hi[:-1] + ANGLE_TOL)
        starts = np.concatenate([[0], brk + 1])
        stops = np.concatenate([brk, [lo.size - 1]])
        arcs = [(self.theta_start + lo[i], self.theta_start + hi[j]) for i, j in zip(starts, stops)]
        return AngularSet(arcs)

    def sphere_arcs(self, a, t):
        a = as_point(a)
        if a == self.center:
            return self._cell_arcs(t), 0.0
        member = lambda th: self.contains(_circle_points(a, t, th))  # noqa: E731
        return _arcs_by_probing(member, TWO_PI / 4096)

    def directions(self, a):
        if as_point(a) != self.center:
            return None
        r0, r1 = self._rho[:-1], self._rho[1:]
        keep = (r0 > 0) | (r1 > 0)
        return self._runs(self._phi[:-1][keep], self._phi[1:][keep])

    def radii_along(self, a, arcs, resolution):
        if as_point(a) != self.center:
            return None
        inter = arcs.intersection(self.support)
        if inter.is_empty:
            return IntervalSet.point(0.0)
        nodes = self.theta_start + self._phi
        vals = list(self._rho[inter.contains(nodes)])
        ends = inter.endpoints() or [0.0]
        vals += list(self.rho(np.asarray(ends)))
        top = max(0.0, max(vals))
        return IntervalSet([(0.0, top)])

    def extent(self, a):
        return float(np.max(self._rho)) + math.dist(as_point(a), self.center)

    def moved(self, angle, shift=(0.0, 0.0)):
        c = _rotate(np.array([self.center]), angle, shift)[0]
        return StarRegion(c, self.theta_start + angle, self.theta_stop + angle, self.radii)

    def witness_points(self, mesh):
        th = self.theta_start + self._phi
        k = max(1, int(math.ceil(self._step * max(1.0, float(np.max(self._rho))) / max(mesh, 1e-9))))
        sub = np.linspace(th[0], th[-1], (len(th) - 1) * k + 1)
        rho = self.rho(sub)
        rho = np.where(rho < 0, 0.0, rho)
        pts = [np.column_stack((rho * np.cos(sub), rho * np.sin(sub))) + np.asarray(self.center)]
        if not self.periodic:
            for end in (0, -1):
                top = self._rho[end]
                n = max(2, int(math.ceil(top / max(mesh, 1e-9))) + 1)
                s = np.linspace(0.0, top, n)
                u = np.array([math.cos(th[end]), math.sin(th[end])])
                pts.append(np.asarray(self.center) + s[:, None] * u)
        return np.concatenate(pts)

    def to_dict(self):
        return {
            "variant": self.variant,
            "center": list(self.center),
            "theta_start": self.theta_start,
            "theta_stop": self.theta_stop,
            "radii": self.radii.tolist(),
        }


# ---------------------------------------------------------------------------
# finite samples
# ---------------------------------------------------------------------------


class FiniteSample(PlanarSet):
    """A finite point set.  ``mesh`` is its covering radius for the shape it samples (0 if exact)."""

    variant = "finite-sample"

    def __init__(self, points, mesh: float = 0.0):
        pts = as_points(points)
        if len(pts) == 0:
            raise InvariantError("finite sample needs at least one point")
        if not np.all(np.isfinite(pts)):
            raise InvariantError("sample points must be finite")
        pts.setflags(write=False)
        self.points = pts
        self.mesh = float(mesh)
        self._tree = None
        self._polar_at = None

    @property
    def tree(self):
        if self._tree is None:
            self._tree = cKDTree(self.points)
        return self._tree

    def contains(self, points):
        d, _ = self.tree.query(as_points(points))
        scale = np.maximum(1.0, np.max(np.abs(self.points)))
        return d <= _REL_TOL * scale

    def distances(self, points):
        d, _ = self.tree.query(as_points(points))
        return d, np.zeros_like(d)

    def sphere_arcs(self, a, t):
        raise UnsupportedVariantError("finite samples have no sphere arcs; use sphere_sample with a band")

    def band_points(self, a, t, band):
        r = np.hypot(*(self.points - np.asarray(as_point(a))).T)
        return self.points[np.abs(r - t) <= band]

    def directions(self, a):
        r, theta = _polar(self.points, as_point(a))
        theta = theta[r > 0]
        return AngularSet([(x, x) for x in theta])

    def _polar_cached(self, a):
        a = as_point(a)
        if self._polar_at is None or self._polar_at[0] != a:
            self._polar_at = (a, _polar(self.points, a))
        return self._polar_at[1]

    def radii_along(self, a, arcs, resolution):
        r, theta = self._polar_cached(a)
        keep = (r == 0.0) | arcs.contains(theta)
        return IntervalSet.from_values(np.append(r[keep], 0.0), merge_tol=resolution)

    def extent(self, a):
        return float(np.max(np.hypot(*(self.points - np.asarray(as_point(a))).T)))

    def moved(self, angle, shift=(0.0, 0.0)):
        return FiniteSample(_rotate(self.points, angle, shift), self.mesh)

    def witness_points(self, mesh):
        return self.points

    def to_dict(self):
        out = {"variant": self.variant, "points": self.points.tolist()}
        if self.mesh:
            out["mesh"] = self.mesh
        return out


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def membership(X: PlanarSet, z) -> bool:
    return bool(X.contains(np.array([as_point(z)]))[0])


def nearest_distance(X: PlanarSet, z) -> tuple[float, float]:
    """``(distance, error_bound)`` from ``z`` to ``X``."""
    v, b = X.distances(np.array([as_point(z)]))
    return float(v[0]), float(b[0])


def sphere_sample(X: PlanarSet, a, t: float, n: int, band: float | None = None) -> PointSample:
    """Points of ``S_t = {z in X : |z - a| = t}``.

    Analytic variants return the exact sphere arcs sampled with angular step
    ``2*pi/n`` (arc endpoints included); ``mesh`` is the covering radius
    ``pi*t/n`` plus any angular error of the arcs.  An empty sphere gives an
    empty sample.  A :class:`FiniteSample` returns every point within
    ``band`` (default: its own mesh) of the sphere.
    """
    if not t > 0:
        raise DegenerateInputError("sphere radius must be positive")
    if n < 1:
        raise DegenerateInputError("sample count must be positive")
    a = as_point(a)
    if isinstance(X, FiniteSample):
        band = X.mesh if band is None else band
        pts = X.band_points(a, t, max(band, _REL_TOL * max(1.0, t)))
        if len(pts) == 0:
            raise UnsupportedVariantError(f"no sample point within {band:g} of the sphere of radius {t:g}")
        return PointSample(pts, band + X.mesh)
    arcs, ang_err = X.sphere_arcs(a, t)
    step = TWO_PI / n
    theta = arcs.sample(step)
    return PointSample(_circle_points(a, t, theta), t * (0.5 * step + ang_err))


class StarlikeResult(NamedTuple):
    starlike: bool
    witness: Point | None = None
    t: float | None = None

    def __bool__(self):
        return self.starlike


def _dyadic_params(mesh: float) -> np.ndarray:
    out = [1.0]
    level = 1
    while 2.0 ** -level >= mesh / 2:
        k = np.arange(1, 2 ** level, 2)
        out.extend(k / 2.0 ** level)
        level += 1
        if level > 24:
            break
    return np.asarray(out)


def starlike_check(X: PlanarSet, a, mesh: float = 1e-2) -> StarlikeResult:
    """Sampled one-sided test of ``[a, b] subset X`` over boundary witnesses ``b``.

    Witnesses are visited in the variant's order (outer boundary first) and,
    for each, segment parameters coarse-to-fine (1, 1/2, 1/4, 3/4, ...) down
    to pitch ``mesh``.  The first point ``a + t*(b - a)`` outside ``X`` is
    returned as the counterexample ``(b, t)``.
    """
    a = np.asarray(as_point(a))
    params = _dyadic_params(mesh)
    witnesses = X.witness_points(mesh)
    chunk = max(1, 200_000 // len(params))
    for start in range(0, len(witnesses), chunk):
        block = witnesses[start:start + chunk]
        pts = a + params[:, None, None] * (block[None, :, :] - a)
        bad = ~X.contains(pts.reshape(-1, 2)).reshape(len(params), len(block))
        hit = bad.any(axis=0)
        if hit.any():
            j = int(np.flatnonzero(hit)[0])
            i = int(np.flatnonzero(bad[:, j])[0])
            return StarlikeResult(False, as_point(block[j]), float(params[i]))
    return StarlikeResult(True)


# -- set-spec documents -------------------------------------------------------

_CANONICAL = {cls.variant: cls for cls in (RealLine, RealHalfLine, HalfPlane, FullPlane)}


def _pair(doc, key):
    try:
        value = doc[key]
        x, y = value
        return as_point((float(x), float(y)))
    except KeyError:
        raise SchemaError(f"missing field {key!r}") from None
    except (TypeError, ValueError, DegenerateInputError) as exc:
        raise SchemaError(f"field {key!r} must be a pair of finite numbers") from exc


def _pairs(doc, key):
    if key not in doc:
        raise SchemaError(f"missing field {key!r}")
    try:
        out = [(float(lo), float(hi)) for lo, hi in doc[key]]
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"field {key!r} must be a list of [lo, hi] pairs") from exc
    return out


def _arcs(doc) -> AngularSet:
    try:
        return AngularSet(_pairs(doc, "arcs"))
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise InvariantError(str(exc)) from exc


def _radii(doc) -> IntervalSet:
    return IntervalSet(_pairs(doc, "radii"))


def parse_set_spec(document) -> tuple[PlanarSet, Point]:
    """Build ``(X, marked_point)`` from a set-spec mapping or JSON string.

    See the README for the schema.  When ``marked_point`` is omitted it
    defaults to the cone/product vertex, the star-region center, the first
    polygon vertex, the first sample point, or the origin for canonical sets.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise SchemaError("set spec must be a JSON object")
    variant = document.get("variant")
    if variant in _CANONICAL:
        X = _CANONICAL[variant]()
        default = Point(0.0, 0.0)
    elif variant == "cone":
        X = ConeSet(_pair(document, "vertex"), _arcs(document))
        default = X.vertex
    elif variant == "radial-product":
        X = RadialProduct(_pair(document, "vertex"), _radii(document), _arcs(document))
        default = X.vertex
    elif variant == "polygon":
        try:
            verts = np.asarray(document["vertices"], dtype=float)
        except KeyError:
            raise SchemaError("missing field 'vertices'") from None
        except (TypeError, ValueError) as exc:
            raise SchemaError("vertices must be a list of [x, y] pairs") from exc
        if verts.ndim != 2 or verts.shape[1] != 2:
            raise SchemaError("vertices must be a list of [x, y] pairs")
        X = Polygon(verts)
        default = as_point(verts[0])
    elif variant == "star-region":
        try:
            start, stop = float(document["theta_start"]), float(document["theta_stop"])
            radii = np.asarray(document["radii"], dtype=float)
        except KeyError as exc:
            raise SchemaError(f"missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise SchemaError("malformed star-region fields") from exc
        X = StarRegion(_pair(document, "center"), start, stop, radii)
        default = X.center
    elif variant == "finite-sample":
        try:
            pts = np.asarray(document["points"], dtype=float)
        except KeyError:
            raise SchemaError("missing field 'points'") from None
        except (TypeError, ValueError) as exc:
            raise SchemaError("points must be a list of [x, y] pairs") from exc
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise SchemaError("points must be a list of [x, y] pairs")
        X = FiniteSample(pts, float(document.get("mesh", 0.0)))
        default = as_point(pts[0])
    else:
        raise SchemaError(f"unknown variant {variant!r}")
    a = _pair(document, "marked_point") if "marked_point" in document else default
    if not membership(X, a):
        raise InvariantError(f"marked point {tuple(a)} does not belong to the set")
    return X, a


def serialize_set(X: PlanarSet, a) -> dict:
    doc = X.to_dict()
    doc["marked_point"] = list(as_point(a))
    return doc


def load_set_spec(path) -> tuple[PlanarSet, Point]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    return parse_set_spec(text)
