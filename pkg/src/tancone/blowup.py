"""Blow-ups ``(X - a)/t`` on a bounded window, convergence to the tangent cone, and a cluster lab."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .angular import AngularSet
from .cones import con_a
from .exceptions import DegenerateInputError
from .geometry import TWO_PI, Point, PointSample, as_point, hausdorff_distance
from .ladder import ScaleLadder
from .reporting import fmt, to_csv
from .sets import ConeSet, FiniteSample, PlanarSet, membership

__all__ = [
    "ClusterReport",
    "ConvergenceReport",
    "blowup_at_scale",
    "cone_convergence_report",
    "sequence_cluster_directions",
]

TOL_CONV = 0.02
TOL_DIV = 0.1
WINDOW = 3
ORIGIN = np.zeros((1, 2))


def _level_count(n: int) -> int:
    return max(1, int(math.ceil(math.sqrt(n / math.pi))))


def _levels(X: PlanarSet, a: Point, t: float, R: float, m: int) -> np.ndarray:
    base = R * np.arange(1, m + 1) / m
    crit = np.asarray([c / t for c in X.critical_radii(a) if 0 < c / t <= R])
    return np.unique(np.concatenate([base, crit]))


def _anchor(arcs: AngularSet) -> float:
    # an intrinsic angle (start of the arc after the widest gap) so that
    # rotating the set rotates the sampling grid with it
    if arcs.is_full or arcs.is_empty:
        return 0.0
    return arcs.largest_gap()[1]


def _grid_angles(arcs: AngularSet, step: float, anchor: float) -> np.ndarray:
    """Angles ``anchor + k*step`` inside ``arcs`` together with every arc endpoint."""
    if arcs.is_empty:
        return np.empty(0)
    if arcs.is_full:
        k = np.arange(int(round(TWO_PI / step)))
        return anchor + k * step
    chunks = []
    for lo, hi in arcs.circular_arcs():
        k0 = math.ceil((lo - anchor) / step - 1e-9)
        k1 = math.floor((hi - anchor) / step + 1e-9)
        inner = anchor + np.arange(k0, k1 + 1) * step
        inner = inner[(inner > lo + 1e-12) & (inner < hi - 1e-12)]
        ends = [lo] if hi - lo <= arcs.tol else [lo, hi]
        chunks.append(np.concatenate([[lo], inner, ends[1:]]))
    return np.concatenate(chunks)


def _level_sample(arcs_at, levels: np.ndarray, R: float, m: int, anchor: float) -> PointSample:
    spacing = R / m
    pts = [ORIGIN]
    ang_err = 0.0
    for r in levels:
        arcs, err = arcs_at(float(r))
        ang_err = max(ang_err, err * r)
        count = max(4, int(math.ceil(TWO_PI * r / spacing)))
        theta = _grid_angles(arcs, TWO_PI / count, anchor)
        if theta.size:
            pts.append(r * np.column_stack((np.cos(theta), np.sin(theta))))
    gaps = np.diff(np.concatenate([[0.0], levels]))
    mesh = float(np.max(gaps)) + 0.5 * spacing + ang_err
    return PointSample(np.concatenate(pts), mesh)


def blowup_at_scale(X: PlanarSet, a, t: float, R: float = 1.0, n: int = 4096,
                    anchor: float | None = None) -> PointSample:
    """Sample of ``{(z - a)/t : z in X, |z - a| <= R*t}``, origin included.

    Circles of radius ``R*j/m`` (``m = ceil(sqrt(n/pi))``) plus the set's
    critical radii are intersected with the rescaled set and sampled at arc
    spacing ``R/m`` on a grid anchored at ``anchor``.  The recorded mesh
    ``R/m + R/(2m)`` covers the window when ``X`` is starlike at ``a``.
    """
    if not (t > 0 and R > 0):
        raise DegenerateInputError("t and R must be positive")
    a = as_point(a)
    if isinstance(X, FiniteSample):
        rel = (X.points - np.asarray(a)) / t
        keep = np.hypot(rel[:, 0], rel[:, 1]) <= R
        return PointSample(np.concatenate([ORIGIN, rel[keep]]), X.mesh / t)
    m = _level_count(n)
    if anchor is None:
        directions = X.directions(a)
        anchor = _anchor(directions) if directions is not None else 0.0
    levels = _levels(X, a, t, R, m)
    return _level_sample(lambda r: X.sphere_arcs(a, r * t), levels, R, m, anchor)


@dataclass(frozen=True)
class ConvergenceRow:
    t: float
    d_h: float
    bound: float
    ratio: float


@dataclass
class ConvergenceReport:
    rows: list[ConvergenceRow]
    verdict: str
    radius: float

    @property
    def distances(self) -> np.ndarray:
        return np.array([r.d_h for r in self.rows])

    def to_csv(self) -> str:
        return to_csv(("t", "d_h", "bound", "ratio"), ((r.t, r.d_h, r.bound, r.ratio) for r in self.rows))

    def to_gnuplot(self) -> str:
        lines = ["# t d_h"] + [f"{fmt(r.t)} {fmt(r.d_h)}" for r in self.rows]
        return "\n".join(lines) + "\n"


def _verdict(rows, R, tol_conv, tol_div, window) -> str:
    tail = rows[-window:]
    if all(r.d_h <= tol_conv * R for r in tail):
        return "converges"
    if all(r.d_h - r.bound > tol_div * R for r in tail):
        return "diverges"
    return "inconclusive"


def cone_convergence_report(X: PlanarSet, a, ladder: ScaleLadder | None = None, R: float = 1.0,
                            n: int = 4096, tol_conv: float = TOL_CONV, tol_div: float = TOL_DIV,
                            window: int = WINDOW, method: str = "tree") -> ConvergenceReport:
    """Hausdorff distance on ``D_R`` between blow-ups of ``X`` and the tangent cone.

    The cone is sampled on exactly the blow-up's circles and angular grid, so
    identical geometry yields identical samples and the mesh cancels.  The
    verdict reads the ``window`` finest rows: ``converges`` when every
    distance is at most ``tol_conv*R``; ``diverges`` when every distance
    exceeds ``tol_div*R`` even after subtracting its bound.
    """
    ladder = ladder or ScaleLadder()
    ladder.require(max(4, window))
    a = as_point(a)
    if not membership(X, a):
        raise DegenerateInputError("the marked point must belong to the set")
    cone = ConeSet((0.0, 0.0), con_a(X, a).arcs)
    anchor = _anchor(cone.arcs)
    m = _level_count(n)
    rows = []
    for t in ladder.scales:
        t = float(t)
        if isinstance(X, FiniteSample):
            blow = blowup_at_scale(X, a, t, R, n, anchor)
            levels = R * np.arange(1, m + 1) / m
        else:
            levels = _levels(X, a, t, R, m)
            blow = _level_sample(lambda r: X.sphere_arcs(a, r * t), levels, R, m, anchor)
        ref = _level_sample(lambda r: cone.sphere_arcs((0.0, 0.0), r), levels, R, m, anchor)
        d = hausdorff_distance(blow, ref, method)
        rows.append(ConvergenceRow(t, d, blow.mesh + ref.mesh, d / t))
    return ConvergenceReport(rows, _verdict(rows, R, tol_conv, tol_div, window), R)


@dataclass
class ClusterReport:
    """Limit candidates of ``z_n / r_n`` along the odd and even subsequences."""

    tags: list[str]
    candidates: list[Point]
    labels: list[int]
    centers: list[Point]
    separations: dict[tuple[int, int], float]

    @property
    def n_clusters(self) -> int:
        return len(self.centers)

    @property
    def separation(self) -> float:
        """Largest distance between clusters (0 for a single cluster)."""
        return max(self.separations.values(), default=0.0)

    def to_csv(self) -> str:
        rows = [(tag, p.x, p.y, math.hypot(*p), lab) for tag, p, lab in zip(self.tags, self.candidates, self.labels)]
        return to_csv(("tag", "x", "y", "modulus", "cluster"), rows)

    def separation_csv(self) -> str:
        return to_csv(("cluster_i", "cluster_j", "separation"),
                      ((i, j, d) for (i, j), d in sorted(self.separations.items())))


def sequence_cluster_directions(theta_odd: float, theta_even: float, ladder: ScaleLadder | None = None,
                                tol: float = 1e-9) -> ClusterReport:
    """Cluster points of ``z_n / r_n`` for ``z_n = r_n*exp(i*theta)`` alternating by parity.

    ``r_n`` runs over the ladder (``n = 1, 2, ...``).  Each parity class is
    checked to settle (its tail spread is below ``tol``); candidates closer
    than ``tol`` are merged into one cluster.
    """
    ladder = ladder or ScaleLadder()
    ladder.require(4)
    r = ladder.scales
    idx = np.arange(1, len(r) + 1)
    theta = np.where(idx % 2 == 1, theta_odd, theta_even)
    z = r[:, None] * np.column_stack((np.cos(theta), np.sin(theta)))
    w = z / r[:, None]
    tags, candidates = [], []
    for tag, parity in (("odd", 1), ("even", 0)):
        sub = w[idx % 2 == parity]
        tail = sub[-2:]
        if np.max(np.hypot(*(tail - tail[-1]).T)) > tol:
            raise DegenerateInputError(f"{tag} subsequence does not settle")
        tags.append(tag)
        candidates.append(as_point(sub[-1]))
    labels: list[int] = []
    centers: list[Point] = []
    for p in candidates:
        for k, c in enumerate(centers):
            if math.dist(p, c) <= tol:
                labels.append(k)
                break
        else:
            labels.append(len(centers))
            centers.append(p)
    seps = {(i, j): math.dist(centers[i], centers[j]) for i, j in itertools.combinations(range(len(centers)), 2)}
    return ClusterReport(tags, candidates, labels, centers, seps)
