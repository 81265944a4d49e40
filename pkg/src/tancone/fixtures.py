"""Named test sets with a marked point and documented expectations.

Every expectation carries a provenance tag:

``paper``
    stated in the source text for the model spaces and sectors;
``trivial``
    immediate from the construction;
``derived``
    computed by an independent brute-force oracle (see ``tests/oracles.py``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.spatial import ConvexHull

from .angular import AngularSet
from .exceptions import InvariantError, UnknownFixtureError
from .geometry import TWO_PI, Point, as_point
from .intervals import IntervalSet
from .sets import (
    ConeSet,
    FiniteSample,
    FullPlane,
    HalfPlane,
    PlanarSet,
    Polygon,
    RadialProduct,
    RealHalfLine,
    RealLine,
    StarRegion,
    membership,
    starlike_check,
)

__all__ = [
    "PROBE_RAYS",
    "STARLIKE_FIXTURES",
    "Expectations",
    "Fixture",
    "check_fixture",
    "densified_sample",
    "fixture_names",
    "make_fixture",
    "parabola_radius",
    "random_convex_polygon",
]

ORIGIN = Point(0.0, 0.0)
PROBE_RAYS = tuple(k * math.pi / 8 for k in range(17))
RAY_MARGIN = 0.05


@dataclass(frozen=True)
class Expectations:
    """What a fixture should produce, each item tagged with where the value comes from."""

    name: str
    starlike: bool
    cone: AngularSet | None = None
    convex_class: str | None = None
    blowup: str | None = None
    dichotomy: dict = field(default_factory=dict)
    partner: PlanarSet | None = None
    equivalence: str | None = None
    provenance: dict = field(default_factory=dict)


class Fixture(NamedTuple):
    X: PlanarSet
    point: Point
    expect: Expectations


def parabola_radius(theta) -> np.ndarray:
    """Boundary of ``{x >= 0, x**2 <= y <= 1}`` seen from the origin, for ``theta`` in ``[0, pi/2]``."""
    theta = np.asarray(theta, dtype=float)
    s, c = np.sin(theta), np.cos(theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        lower = np.where(c > 0, s / (c * c), np.inf)
        upper = np.where(s > 0, 1.0 / s, np.inf)
    return np.minimum(lower, upper)


def _vertex_margin(directions, rays=PROBE_RAYS) -> float:
    d = np.asarray(directions)[:, None] - np.asarray(rays)[None, :]
    d = np.abs((d + math.pi) % TWO_PI - math.pi)
    return float(np.min(d))


def random_convex_polygon(seed: int, n_points: int = 12, avoid_rays: bool = False) -> Polygon:
    """Convex hull of ``n_points`` uniform points in ``[-1, 1]^2``, first hull vertex moved to 0.

    With ``avoid_rays`` the polygon is also rotated (by the smallest multiple
    of half a degree that works) so both edges at the origin keep an angular
    distance of at least ``RAY_MARGIN`` from every probe ray.
    """
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-1.0, 1.0, size=(n_points, 2))
    hull = ConvexHull(pts)
    verts = pts[hull.vertices]
    verts = verts - verts[0]
    poly = Polygon(verts)
    if not avoid_rays:
        return poly
    nxt, prv = poly.vertices[1], poly.vertices[-1]
    edges = [math.atan2(nxt[1], nxt[0]), math.atan2(prv[1], prv[0])]
    for j in range(720):
        alpha = j * math.pi / 360
        if _vertex_margin([e + alpha for e in edges]) >= RAY_MARGIN:
            return poly.moved(alpha) if j else poly
    raise InvariantError("no rotation keeps the polygon edges away from the probe rays")


def densified_sample(X: PlanarSet, a, delta: float = 1e-3, radius: float = 1.0 / 16,
                     min_count: int = 1024) -> FiniteSample:
    """Polar grid sample of ``X`` within ``radius`` of ``a`` with covering radius about ``delta``.

    Circles at pitch ``delta`` (plus the set's critical radii) carry points
    at arc spacing at most ``delta`` and at least ``min_count`` points per
    circle, so small circles still resolve narrow sectors.  Every circle
    includes the directions
    ``k*pi/8`` and the set's boundary directions at ``a`` so thin pieces and
    probe rays are not missed.
    """
    a = as_point(a)
    radii = np.arange(1, int(math.ceil(radius / delta)) + 1) * delta
    crit = [c for c in X.critical_radii(a) if 0 < c <= radius]
    radii = np.unique(np.concatenate([radii, crit]))
    extra = np.empty(0)
    directions = X.directions(a)
    if directions is not None and not directions.is_full:
        extra = np.asarray(directions.endpoints())
    chunks = [np.array([a])]
    for r in radii:
        count = max(int(math.ceil(TWO_PI * r / delta)), min_count)
        count += (-count) % 16
        theta = np.concatenate([np.arange(count) * (TWO_PI / count), extra])
        ring = r * np.column_stack((np.cos(theta), np.sin(theta))) + np.asarray(a)
        chunks.append(ring[X.contains(ring)])
    return FiniteSample(np.concatenate(chunks), delta)


# -- catalog -------------------------------------------------------------------


def _model(X, arcs, kind, tag="paper"):
    def build(name):
        return Fixture(X(), ORIGIN, Expectations(
            name, True, arcs, kind, "converges",
            provenance={"cone": tag, "starlike": "trivial", "blowup": tag},
        ))
    return build


def _sector(name, theta1: float = 0.3, theta2: float = 1.2):
    arcs = AngularSet([(theta1, theta2)])
    return Fixture(ConeSet(ORIGIN, arcs), ORIGIN, Expectations(
        name, True, arcs, "sector" if theta2 - theta1 < math.pi else None, "converges",
        provenance={"cone": "paper", "starlike": "trivial", "blowup": "trivial"},
    ))


def _square(name, side: float = 1.0):
    X = Polygon([(0, 0), (side, 0), (side, side), (0, side)])
    return Fixture(X, ORIGIN, Expectations(
        name, True, AngularSet([(0.0, math.pi / 2)]), "sector", "converges",
        dichotomy={0.0: "limit-zero", math.pi: "limit-one"},
        provenance={"cone": "trivial", "starlike": "trivial", "blowup": "trivial", "dichotomy": "trivial"},
    ))


def _convex_polygon(name, seed: int = 7, n_points: int = 12):
    X = random_convex_polygon(seed, n_points, avoid_rays=True)
    v = X.vertices
    lo = math.atan2(v[1][1], v[1][0])
    hi = math.atan2(v[-1][1], v[-1][0])
    if hi < lo:
        hi += TWO_PI
    return Fixture(X, ORIGIN, Expectations(
        name, True, AngularSet([(lo, hi)]), "sector", "converges",
        provenance={"cone": "trivial", "starlike": "trivial", "blowup": "paper"},
    ))


def _parabola(name, samples: int = 2049):
    theta = np.linspace(0.0, math.pi / 2, samples)
    X = StarRegion(ORIGIN, 0.0, math.pi / 2, parabola_radius(theta))
    return Fixture(X, ORIGIN, Expectations(
        name, True, AngularSet([(0.0, math.pi / 2)]), "sector", "converges",
        provenance={"cone": "derived", "starlike": "trivial", "blowup": "derived"},
    ))


def _annulus(name, inner: float = 0.5, outer: float = 1.0):
    X = RadialProduct(ORIGIN, IntervalSet([(0.0, 0.0), (inner, outer)]), AngularSet.full())
    return Fixture(X, ORIGIN, Expectations(
        name, False, AngularSet.full(), "plane", "diverges",
        provenance={"cone": "trivial", "starlike": "derived", "blowup": "trivial"},
    ))


def _geometric(name, q: float = 0.25, c: float = 0.5, direction: float = 0.0):
    X = RadialProduct(ORIGIN, IntervalSet.geometric(q, c), AngularSet.point(direction))
    return Fixture(X, ORIGIN, Expectations(
        name, False, AngularSet.point(direction), "ray",
        dichotomy={direction: ("violation", 1.0 - q / c)},
        provenance={"cone": "trivial", "starlike": "trivial", "dichotomy": "derived"},
    ))


def _two_rays(name, theta_z: float = 0.0, theta_y: float = math.pi / 2):
    Z = ConeSet(ORIGIN, AngularSet.point(theta_z))
    Y = ConeSet(ORIGIN, AngularSet.point(theta_y))
    return Fixture(Z, ORIGIN, Expectations(
        name, True, Z.arcs, "ray", "converges", partner=Y, equivalence="not-equivalent",
        provenance={"cone": "trivial", "starlike": "trivial", "equivalence": "derived"},
    ))


def _segment(name, length: float = 1.0, direction: float = 0.0):
    X = RadialProduct(ORIGIN, IntervalSet([(0.0, length)]), AngularSet.point(direction))
    return Fixture(X, ORIGIN, Expectations(
        name, True, AngularSet.point(direction), "ray", "converges",
        provenance={"cone": "trivial", "starlike": "trivial", "blowup": "trivial"},
    ))


_CATALOG: dict[str, Callable[..., Fixture]] = {
    "real-line": _model(RealLine, AngularSet([(0.0, 0.0), (math.pi, math.pi)]), "line"),
    "real-halfline": _model(RealHalfLine, AngularSet.point(0.0), "ray"),
    "full-plane": _model(FullPlane, AngularSet.full(), "plane"),
    "half-plane": _model(HalfPlane, AngularSet([(0.0, math.pi)]), "half-plane", "trivial"),
    "sector": _sector,
    "square-at-corner": _square,
    "convex-polygon-at-vertex": _convex_polygon,
    "parabola-star-region": _parabola,
    "annulus": _annulus,
    "geometric-radial": _geometric,
    "two-rays": _two_rays,
    "segment": _segment,
}

STARLIKE_FIXTURES = (
    "real-line",
    "real-halfline",
    "full-plane",
    "half-plane",
    "sector",
    "square-at-corner",
    "convex-polygon-at-vertex",
    "parabola-star-region",
    "segment",
)


def fixture_names() -> list[str]:
    return list(_CATALOG)


def make_fixture(name: str, **params) -> Fixture:
    """Build the named fixture; ``params`` override its defaults.

    Raises
    ------
    UnknownFixtureError
        If ``name`` is not in the catalog.
    """
    try:
        build = _CATALOG[name]
    except KeyError:
        raise UnknownFixtureError(f"unknown fixture {name!r}; choose from {', '.join(_CATALOG)}") from None
    fx = build(name, **params)
    if not membership(fx.X, fx.point):
        raise InvariantError(f"fixture {name!r} does not contain its marked point")
    return fx


def check_fixture(fx: Fixture, mesh: float = 1e-2) -> bool:
    """True when ``starlike_check`` agrees with the documented starlikeness flag."""
    return bool(starlike_check(fx.X, fx.point, mesh)) == fx.expect.starlike
