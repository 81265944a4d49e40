import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tancone.angular import AngularSet
from tancone.cones import con_a
from tancone.equivalence import epsilon_one_sided, epsilon_sym, strong_equiv_probe
from tancone.exceptions import DegenerateInputError, ShallowLadderError
from tancone.fixtures import densified_sample
from tancone.intervals import IntervalSet
from tancone.ladder import ScaleLadder
from tancone.sets import ConeSet, FiniteSample, FullPlane, Polygon, RadialProduct, RealLine

O = (0.0, 0.0)
QUARTER = ConeSet(O, AngularSet([(0.0, math.pi / 2)]))
SQUARE = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])

# frozen from oracles.eps_cone_to_parabola(2**-6)
EPS_CONE_TO_PARABOLA = 2.4402156395306204e-4


def test_same_set_gives_zero():
    v, b = epsilon_sym(0.3, SQUARE, SQUARE, O)
    assert v == 0.0 and b >= 0


def test_plane_to_line_is_t():
    for t in (1.0, 0.25, 2 ** -10):
        v, b = epsilon_one_sided(t, FullPlane(), RealLine(), O, 1024)
        assert abs(v - t) <= b + 1e-15


def test_cone_to_parabola_matches_brute_force(parabola):
    v, b = epsilon_one_sided(2 ** -6, QUARTER, parabola.X, O, 4096)
    assert v == pytest.approx(EPS_CONE_TO_PARABOLA, abs=b)


def test_cone_to_parabola_oracle_reproduces_frozen_value():
    assert oracles.eps_cone_to_parabola(2 ** -6) == pytest.approx(EPS_CONE_TO_PARABOLA, rel=1e-9)


def test_square_against_its_cone():
    t = 2 ** -8
    zy, _ = epsilon_one_sided(t, QUARTER, SQUARE, O)
    yz, _ = epsilon_one_sided(t, SQUARE, QUARTER, O)
    v, _ = epsilon_sym(t, SQUARE, QUARTER, O)
    assert v == zy and yz == 0.0 and zy == 0.0


def test_empty_sphere_counts_zero_and_is_flagged():
    annulus = RadialProduct(O, IntervalSet([(0, 0), (0.5, 1)]), AngularSet.full())
    e = epsilon_one_sided(0.25, annulus, FullPlane(), O)
    assert tuple(e) == (0.0, 0.0) and e.empty_sphere
    rep = strong_equiv_probe(annulus, FullPlane(), O, ScaleLadder(depth=5))
    assert [r.empty_sphere for r in rep.rows] == [False, False, True, True, True]


def test_marked_point_must_be_shared():
    with pytest.raises(DegenerateInputError):
        epsilon_one_sided(0.5, SQUARE, ConeSet((5, 5), AngularSet.point(0.0)), O)


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 6.2), st.floats(0, 2), st.floats(0, 6.2), st.floats(0, 2), st.floats(0.01, 5))
def test_symmetry_is_exact(l1, w1, l2, w2, t):
    Z = ConeSet(O, AngularSet([(l1, l1 + w1)]))
    Y = ConeSet(O, AngularSet([(l2, l2 + w2)]))
    assert tuple(epsilon_sym(t, Z, Y, O)) == tuple(epsilon_sym(t, Y, Z, O))


@settings(max_examples=20, deadline=None)
@given(st.floats(0, 6.2), st.floats(0, 2), st.floats(0, 6.2), st.floats(0, 2))
def test_cone_ratio_is_scale_invariant(l1, w1, l2, w2):
    Z = ConeSet(O, AngularSet([(l1, l1 + w1)]))
    Y = ConeSet(O, AngularSet([(l2, l2 + w2)]))
    rep = strong_equiv_probe(Z, Y, O, ScaleLadder(depth=6))
    rel = max(r.bound / r.t for r in rep.rows)
    assert np.ptp(rep.ratios) <= 2 * rel + 1e-12


def test_square_probe_is_equivalent_with_zero_ratios():
    rep = strong_equiv_probe(SQUARE, SQUARE, O)
    assert rep.verdict == "equivalent" and not rep.ratios.any()


def test_parabola_probe_decays_linearly(parabola):
    rep = strong_equiv_probe(parabola.X, con_a(parabola.X, O).as_set(), O)
    assert rep.verdict == "equivalent"
    assert rep.slope == pytest.approx(1.0, abs=0.15)


def test_two_perpendicular_rays_give_ratio_one():
    # inf over all of Y: the vertex is at distance t from every sphere point
    rep = strong_equiv_probe(ConeSet(O, AngularSet.point(0)), ConeSet(O, AngularSet.point(math.pi / 2)), O)
    assert rep.verdict == "not-equivalent"
    np.testing.assert_allclose(rep.ratios, 1.0)


def test_shallow_ladder_rejected():
    with pytest.raises(ShallowLadderError):
        strong_equiv_probe(SQUARE, SQUARE, O, ScaleLadder(depth=3))


def test_csv_columns_and_order():
    rep = strong_equiv_probe(SQUARE, QUARTER, O, ScaleLadder(depth=4))
    lines = rep.to_csv().splitlines()
    assert lines[0] == "t,eps_zy,eps_yz,eps,ratio,bound,empty_sphere_flag"
    ts = [float(line.split(",")[0]) for line in lines[1:]]
    assert ts == sorted(ts, reverse=True)


@pytest.mark.parametrize("delta", [1e-2, 1e-3, 2.5e-4])
def test_dense_samples_track_the_set(square, delta):
    # ratios stay below delta/t and the verdict turns equivalent once delta << t
    S = densified_sample(square.X, square.point, delta, radius=0.5)
    rep = strong_equiv_probe(S, square.X, square.point, ScaleLadder(0.5, 0.5, 4))
    for r in rep.rows:
        assert r.ratio <= delta / r.t + 1e-12
    assert (rep.verdict == "equivalent") == (delta < 1e-3)


def test_finite_sample_band_uses_its_mesh():
    S = FiniteSample([(0, 0), (0.5, 0.0004), (0.5, 0.5)], mesh=1e-3)
    e = epsilon_one_sided(0.5, S, RealLine(), O)
    assert e.value == pytest.approx(0.0004)
