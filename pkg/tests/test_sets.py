import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tancone.angular import AngularSet
from tancone.exceptions import InvariantError, SchemaError, UnsupportedVariantError
from tancone.intervals import IntervalSet
from tancone.sets import (
    ConeSet,
    FiniteSample,
    FullPlane,
    HalfPlane,
    Polygon,
    RadialProduct,
    RealHalfLine,
    RealLine,
    StarRegion,
    membership,
    nearest_distance,
    parse_set_spec,
    serialize_set,
    sphere_sample,
    starlike_check,
)

QUARTER = AngularSet([(0.0, math.pi / 2)])
rng = np.random.default_rng(3)
PROBES = rng.uniform(-2, 2, size=(10_000, 2))


def variants():
    return [
        (FullPlane(), (0, 0)),
        (RealLine(), (0, 0)),
        (RealHalfLine(), (0, 0)),
        (HalfPlane(), (0, 0)),
        (ConeSet((0.5, -0.2), AngularSet([(0.3, 1.2)])), (0.5, -0.2)),
        (RadialProduct((0, 0), IntervalSet([(0.125, 0.25), (0.5, 1.0)]), AngularSet([(-1, 1)])), (0.5, 0)),
        (Polygon([(0, 0), (2, 0), (2, 1), (1, 0.4), (0, 1)]), (0, 0)),
        (StarRegion((0, 0), 0.0, 2 * math.pi, 1 + 0.3 * np.cos(3 * np.linspace(0, 2 * math.pi, 64, endpoint=False))),
         (0, 0)),
        (FiniteSample([(0, 0), (1, 0), (0.5, 0.5)]), (1, 0)),
    ]


def test_membership_examples():
    assert membership(FullPlane(), (123.0, -9.0))
    assert not membership(RealHalfLine(), (-1, 0))
    theta = 0.5 * (0.3 + 1.2)
    assert membership(ConeSet((0, 0), AngularSet([(0.3, 1.2)])), (math.cos(theta), math.sin(theta)))


def test_finite_sample_membership_is_exact_to_1e12():
    X = FiniteSample([(0.1, 0.2)])
    assert membership(X, (0.1, 0.2 + 1e-13))
    assert not membership(X, (0.1, 0.2 + 1e-9))


def test_sphere_sample_examples():
    s = sphere_sample(FullPlane(), (0, 0), 1.0, 4)
    assert len(s) == 4 and s.mesh <= math.pi / 2
    np.testing.assert_allclose(np.hypot(*s.points.T), 1.0)
    s = sphere_sample(RealHalfLine(), (0, 0), 0.5, 64)
    np.testing.assert_allclose(s.points, [[0.5, 0.0]])


def test_quarter_cone_sphere_matches_dense_membership_grid():
    s = sphere_sample(ConeSet((0, 0), QUARTER), (0, 0), 2.0, 4096)
    np.testing.assert_allclose(s.points[0], [2, 0])
    np.testing.assert_allclose(s.points[-1], [0, 2], atol=1e-12)
    th = np.linspace(0, 2 * math.pi, 100_000, endpoint=False)
    circle = 2 * np.column_stack((np.cos(th), np.sin(th)))
    inside = circle[(circle[:, 0] >= -1e-12) & (circle[:, 1] >= -1e-12)]
    assert oracles.hausdorff(inside, s.points) <= s.mesh + 1e-4


def test_empty_sphere_is_not_an_error():
    X = RadialProduct((0, 0), IntervalSet([(0, 0), (0.5, 1)]), AngularSet.full())
    assert sphere_sample(X, (0, 0), 0.25, 64).empty


def test_finite_sample_sphere_needs_band():
    X = FiniteSample([(0, 0), (1, 0), (0, 1.5)])
    assert len(sphere_sample(X, (0, 0), 1.0, 64, band=0.01)) == 1
    with pytest.raises(UnsupportedVariantError):
        sphere_sample(X, (0, 0), 1.2, 64, band=0.01)


def test_nearest_distance_examples():
    assert nearest_distance(RealLine(), (3, 4)) == (4.0, 0.0)
    v, b = nearest_distance(ConeSet((0, 0), QUARTER), (-1, -1))
    assert v == pytest.approx(math.sqrt(2)) and b == 0.0
    cloud = np.concatenate([[[0, 0]], 3 * np.random.default_rng(0).uniform(0, 1, (200_000, 2))])
    assert v == pytest.approx(oracles.min_dist([[-1, -1]], cloud)[0], abs=1e-6)


@pytest.mark.parametrize("X,a", variants())
def test_members_have_distance_within_bound(X, a):
    inside = PROBES[X.contains(PROBES)]
    if len(inside):
        d, b = X.distances(inside)
        assert np.all(d <= b + 1e-12)


@pytest.mark.parametrize("X,a", [v for v in variants() if not isinstance(v[0], FiniteSample)])
def test_sphere_points_lie_on_sphere_and_in_set(X, a):
    for t in (0.1, 0.3, 0.8):
        s = sphere_sample(X, a, t, 512)
        if s.empty:
            continue
        r = np.hypot(*(s.points - np.asarray(a)).T)
        assert np.all(np.abs(r - t) <= s.mesh + 1e-12)
        d, b = X.distances(s.points)
        assert np.all(d <= s.mesh + b + 1e-9)


@pytest.mark.parametrize("X,a", variants())
def test_spec_round_trip_preserves_membership(X, a):
    doc = json.loads(json.dumps(serialize_set(X, a)))
    Y, b = parse_set_spec(doc)
    assert b == a
    assert np.array_equal(X.contains(PROBES), Y.contains(PROBES))


def test_parse_examples():
    X, a = parse_set_spec({"variant": "cone", "vertex": [0, 0], "arcs": [[0, 1.5708]]})
    assert isinstance(X, ConeSet) and a == (0, 0)
    X, _ = parse_set_spec('{"variant": "radial-product", "vertex": [0, 0], '
                          '"radii": [[0.125, 0.25], [0.5, 1.0]], "arcs": [[0, 6.283185307179586]], '
                          '"marked_point": [0.125, 0]}')
    assert len(X.radii) == 2
    with pytest.raises(InvariantError):
        parse_set_spec({"variant": "polygon", "vertices": [[0, 0], [1, 0]]})
    with pytest.raises(InvariantError):
        parse_set_spec({"variant": "radial-product", "vertex": [0, 0], "radii": [[-1, 1]], "arcs": [[0, 1]]})
    with pytest.raises(SchemaError):
        parse_set_spec({"variant": "blob"})
    with pytest.raises(SchemaError):
        parse_set_spec("{not json")
    with pytest.raises(InvariantError):
        parse_set_spec({"variant": "half-plane", "marked_point": [0, -1]})


def test_polygon_rejects_self_intersection():
    with pytest.raises(InvariantError):
        Polygon([(0, 0), (1, 1), (1, 0), (0, 1)])


def test_star_region_needs_eight_samples():
    with pytest.raises(InvariantError):
        StarRegion((0, 0), 0, 1, [1] * 7)


def test_starlike_examples():
    assert starlike_check(ConeSet((1, 2), AngularSet([(0.3, 4.0)])), (1, 2))
    assert starlike_check(Polygon([(0, 0), (1, 0), (1, 1), (0, 1)]), (0, 0))
    annulus = RadialProduct((0, 0), IntervalSet([(0, 0), (0.5, 1)]), AngularSet.full())
    res = starlike_check(annulus, (0, 0))
    assert not res and res.t == 0.25 and res.witness == (1.0, 0.0)


def test_l_shape_is_starlike_only_from_its_kernel():
    L = Polygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
    assert starlike_check(L, (0.5, 0.5))
    res = starlike_check(L, (2, 1))
    assert not res and res.witness == (1.0, 2.0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10))
def test_convex_polygons_are_starlike_at_vertices(seed, k):
    from tancone.fixtures import random_convex_polygon
    P = random_convex_polygon(seed, 10)
    v = P.vertices[k % len(P.vertices)]
    assert starlike_check(P, v, mesh=0.05)


@settings(max_examples=25, deadline=None)
@given(st.floats(-3, 3), st.floats(0.05, 3.0), st.floats(-5, 5), st.floats(-5, 5))
def test_cones_are_starlike_at_vertex(lo, width, x, y):
    assert starlike_check(ConeSet((x, y), AngularSet([(lo, lo + width)])), (x, y), mesh=0.05)
