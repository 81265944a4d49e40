"""Longest gaps, right-side porosity, the sector radii set and the porosity dichotomy probe."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angular import AngularSet
from .exceptions import DegenerateInputError
from .geometry import Point, Ray, as_point
from .intervals import IntervalSet
from .ladder import ScaleLadder, beta_ladder
from .reporting import to_csv
from .sets import FiniteSample, PlanarSet, membership

__all__ = [
    "LIMIT_ONE",
    "LIMIT_ZERO",
    "DichotomyVerdict",
    "PorosityEstimate",
    "classify_estimate",
    "dichotomy_probe",
    "longest_gap",
    "porosity_estimate",
    "radii_set",
    "refined_scales",
    "sector_arcs",
]

LIMIT_ZERO = 0.1
LIMIT_ONE = 0.9
SUBSAMPLES = 8
WINDOW = 4
STABLE_ROWS = 3


def longest_gap(x: float, h: float, A: IntervalSet) -> float:
    """Length of the longest open interval in ``[x, x + h] \\ A``."""
    if not h > 0:
        raise DegenerateInputError("h must be positive")
    end = x + h
    best, cursor = 0.0, x
    for lo, hi in A.clipped(x, end):
        best = max(best, lo - cursor)
        cursor = max(cursor, hi)
    return max(best, end - cursor)


def refined_scales(ladder: ScaleLadder, per_octave: int = SUBSAMPLES) -> np.ndarray:
    """Ladder scales plus ``per_octave`` geometric sub-samples per octave, decreasing."""
    scales = ladder.scales
    top, bottom = float(scales[0]), float(scales[-1])
    steps = int(math.floor(per_octave * math.log2(top / bottom) + 1e-9))
    sub = top * 2.0 ** (-np.arange(steps + 1) / per_octave)
    return np.unique(np.concatenate([scales, sub]))[::-1]


@dataclass
class PorosityEstimate:
    """Ratios ``l(x, h, A) / h`` along a refined ladder and their max over the finest window."""

    x: float
    h: np.ndarray
    gaps: np.ndarray
    ratios: np.ndarray
    estimate: float
    window: int

    def to_csv(self) -> str:
        return to_csv(("h", "gap", "ratio"), zip(self.h, self.gaps, self.ratios))


def porosity_estimate(A: IntervalSet, x: float = 0.0, ladder: ScaleLadder | None = None,
                      window: int = WINDOW) -> PorosityEstimate:
    """Right-side porosity of ``A`` at ``x`` as a finest-window maximum.

    The limsup is attained along special scales (gap right ends), so every
    octave of the ladder is sampled ``SUBSAMPLES`` times.  The estimate is the
    largest ratio over scales ``h <= h_min * 2**window``.
    """
    ladder = ladder or ScaleLadder(depth=30)
    ladder.require(window)
    x = float(x)
    if not A.contains(x):
        first = A.intervals[0][0] if len(A) else None
        if first is None or first != x:
            raise DegenerateInputError("x must belong to A or be its infimum")
    h = refined_scales(ladder)
    gaps = np.array([longest_gap(x, float(s), A) for s in h])
    ratios = np.clip(gaps / h, 0.0, 1.0)
    finest = h[-1] * 2.0 ** window * (1 + 1e-12)
    est = float(np.max(ratios[h <= finest]))
    return PorosityEstimate(x, h, gaps, ratios, est, window)


def sector_arcs(direction: float, beta: float) -> AngularSet:
    """Directions of ``{z : dist(z, l) <= beta*|z - a|}`` around a ray ``l`` from ``a``.

    The sector is the whole plane once ``beta >= 1``.
    """
    if not beta > 0:
        raise DegenerateInputError("beta must be positive")
    if beta >= 1.0:
        return AngularSet.full()
    w = math.asin(beta)
    return AngularSet([(direction - w, direction + w)])


def _scan_radii(X: PlanarSet, a: Point, arcs: AngularSet, resolution: float) -> IntervalSet:
    top = X.extent(a)
    if not math.isfinite(top):
        top = 1.0
    radii = np.arange(1, int(math.ceil(top / resolution)) + 1) * resolution
    hits = [0.0]
    for r in radii:
        sph, _ = X.sphere_arcs(a, float(r))
        if sph.intersects(arcs):
            hits.append(float(r))
    return IntervalSet.from_values(hits, merge_tol=resolution * (1 + 1e-9))


def radii_set(X: PlanarSet, a, l: Ray, beta: float, resolution: float = 1e-3) -> IntervalSet:
    """``{|z - a| : z in X, dist(z, l) <= beta*|z - a|}``.

    Cones, radial products, polygons and star regions centred at ``a`` answer
    exactly; other configurations fall back to a scan of sphere arcs at pitch
    ``resolution`` with gaps of at most ``resolution`` closed.  The result
    always contains 0 because ``a`` lies in every sector.
    """
    a = as_point(a)
    if l.vertex != a:
        raise DegenerateInputError("the ray must start at the marked point")
    if not membership(X, a):
        raise DegenerateInputError("the marked point must belong to the set")
    arcs = sector_arcs(l.direction, beta)
    exact = X.radii_along(a, arcs, resolution)
    if exact is not None:
        return exact
    return _scan_radii(X, a, arcs, resolution)


def classify_estimate(value: float) -> str:
    if value <= LIMIT_ZERO:
        return "limit-zero"
    if value >= LIMIT_ONE:
        return "limit-one"
    return "violation"


@dataclass
class DichotomyVerdict:
    """Porosity of the radii set for each aperture, and the limiting classification."""

    betas: list[float]
    estimates: list[PorosityEstimate]
    classification: str
    value: float | None = None

    def __str__(self):
        if self.classification == "violation":
            return f"violation {self.value:.2f}"
        return self.classification

    @property
    def is_violation(self) -> bool:
        return self.classification == "violation"

    def to_csv(self) -> str:
        return to_csv(("beta", "estimate", "classification"),
                      ((b, e.estimate, classify_estimate(e.estimate)) for b, e in zip(self.betas, self.estimates)))


def default_resolution(X: PlanarSet) -> float:
    if isinstance(X, FiniteSample):
        return max(2.0 * X.mesh, 1e-12)
    return 1e-3


def dichotomy_probe(X: PlanarSet, a, l: Ray, betas=None, ladder: ScaleLadder | None = None,
                    window: int = WINDOW, resolution: float | None = None) -> DichotomyVerdict:
    """Porosity at 0 of the radii sets along ``l`` as the aperture shrinks.

    The finest ``STABLE_ROWS`` apertures decide: all estimates at most
    ``LIMIT_ZERO`` give ``limit-zero``, all at least ``LIMIT_ONE`` give
    ``limit-one``; anything else is a ``violation`` carrying the last estimate.
    """
    betas = list(beta_ladder() if betas is None else betas)
    if len(betas) < STABLE_ROWS:
        raise DegenerateInputError(f"need at least {STABLE_ROWS} apertures")
    if any(b2 >= b1 for b1, b2 in zip(betas, betas[1:])):
        raise DegenerateInputError("apertures must be strictly decreasing")
    ladder = ladder or ScaleLadder(depth=30)
    resolution = default_resolution(X) if resolution is None else resolution
    estimates = [porosity_estimate(radii_set(X, a, l, b, resolution), 0.0, ladder, window) for b in betas]
    tail = [e.estimate for e in estimates[-STABLE_ROWS:]]
    if all(v <= LIMIT_ZERO for v in tail):
        return DichotomyVerdict(betas, estimates, "limit-zero")
    if all(v >= LIMIT_ONE for v in tail):
        return DichotomyVerdict(betas, estimates, "limit-one")
    return DichotomyVerdict(betas, estimates, "violation", tail[-1])
