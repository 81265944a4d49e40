import json
import math

import numpy as np
import pytest

import oracles
from tancone.cones import con_a
from tancone.exceptions import UnknownFixtureError
from tancone.fixtures import (
    PROBE_RAYS,
    STARLIKE_FIXTURES,
    check_fixture,
    densified_sample,
    fixture_names,
    make_fixture,
    parabola_radius,
    random_convex_polygon,
)
from tancone.sets import parse_set_spec, serialize_set

REQUIRED = {"real-line", "real-halfline", "full-plane", "sector", "square-at-corner", "convex-polygon-at-vertex",
            "parabola-star-region", "annulus", "geometric-radial", "half-plane"}
PROBES = np.random.default_rng(5).uniform(-1.5, 1.5, size=(4000, 2))


def test_catalog_covers_required_names():
    assert REQUIRED <= set(fixture_names())


def test_unknown_fixture():
    with pytest.raises(UnknownFixtureError):
        make_fixture("moebius")


@pytest.mark.parametrize("name", fixture_names())
def test_starlike_flag_matches_checker(name):
    assert check_fixture(make_fixture(name))


@pytest.mark.parametrize("name", fixture_names())
def test_every_expectation_has_provenance(name):
    fx = make_fixture(name)
    assert fx.expect.provenance
    assert set(fx.expect.provenance.values()) <= {"paper", "trivial", "derived"}


@pytest.mark.parametrize("name", fixture_names())
def test_expected_cone_matches(name):
    fx = make_fixture(name)
    assert con_a(fx.X, fx.point).arcs.isclose(fx.expect.cone, atol=1e-6)


@pytest.mark.parametrize("name", fixture_names())
def test_exports_to_set_spec(name):
    fx = make_fixture(name)
    Y, b = parse_set_spec(json.dumps(serialize_set(fx.X, fx.point)))
    assert b == fx.point
    assert np.array_equal(Y.contains(PROBES), fx.X.contains(PROBES))


def test_sector_parameters():
    fx = make_fixture("sector", theta1=0.1, theta2=0.2)
    assert fx.expect.cone.circular_arcs() == [(0.1, 0.2)]


def test_parabola_radius_hits_the_curve():
    th = np.linspace(0.01, math.pi / 2 - 0.01, 50)
    r = parabola_radius(th)
    pts = r[:, None] * np.column_stack((np.cos(th), np.sin(th)))
    lower = th <= math.pi / 4
    np.testing.assert_allclose(pts[lower, 1], pts[lower, 0] ** 2, rtol=1e-12)
    np.testing.assert_allclose(pts[~lower, 1], 1.0, rtol=1e-12)


def test_parabola_cone_matches_angle_sweep(parabola):
    lo, hi = oracles.parabola_directions()
    (got_lo, got_hi), = con_a(parabola.X, parabola.point).arcs.circular_arcs()
    assert got_lo == pytest.approx(lo, abs=1e-6) and got_hi == pytest.approx(hi, abs=1e-6)


def test_random_convex_polygon_is_seeded_and_convex():
    a, b = random_convex_polygon(4), random_convex_polygon(4)
    assert np.array_equal(a.vertices, b.vertices) and a.is_convex()
    assert np.array_equal(a.vertices[0], [0.0, 0.0])


def test_probe_rays_avoid_polygon_edges():
    P = make_fixture("convex-polygon-at-vertex").X
    edges = [math.atan2(*P.vertices[1][::-1]), math.atan2(*P.vertices[-1][::-1])]
    for e in edges:
        d = min(abs((e - r + math.pi) % (2 * math.pi) - math.pi) for r in PROBE_RAYS)
        assert d >= 0.05


def test_densified_sample_is_a_fine_cover(square):
    S = densified_sample(square.X, square.point, delta=5e-3, radius=0.25)
    assert np.all(square.X.contains(S.points))
    g = np.linspace(0, 0.25 / math.sqrt(2), 60)
    probe = np.stack(np.meshgrid(g, g), -1).reshape(-1, 2)
    d, _ = S.distances(probe)
    assert d.max() <= 5e-3


def test_starlike_list_is_consistent():
    for name in STARLIKE_FIXTURES:
        assert make_fixture(name).expect.starlike
