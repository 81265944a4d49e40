import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from tancone.exceptions import DegenerateInputError, EmptySampleError
from tancone.geometry import (
    PointSample,
    Ray,
    angle_of,
    as_point,
    dist_to_ray,
    dist_to_segment,
    hausdorff_distance,
    normalize_angle,
)

coords = st.floats(-100, 100, allow_nan=False)
clouds = arrays(np.float64, st.tuples(st.integers(1, 40), st.just(2)), elements=coords)


def test_angle_of_quadrants():
    assert angle_of((0, 1), (0, 0)) == pytest.approx(math.pi / 2)
    assert angle_of((0, -1), (0, 0)) == pytest.approx(3 * math.pi / 2)
    assert angle_of((2, 1), (1, 1)) == 0.0


def test_angle_of_rejects_coincident_points():
    with pytest.raises(DegenerateInputError):
        angle_of((1, 1), (1, 1))


def test_normalize_angle_wraps_near_two_pi_to_zero():
    assert normalize_angle(2 * math.pi - 1e-14) == 0.0
    assert normalize_angle(-math.pi / 2) == pytest.approx(3 * math.pi / 2)


def test_as_point_accepts_complex_and_rejects_nan():
    assert as_point(1 + 2j) == (1.0, 2.0)
    with pytest.raises(DegenerateInputError):
        as_point((float("nan"), 0))


def test_ray_distance_behind_vertex_is_euclidean():
    ray = Ray((0, 0), 0.0)
    assert dist_to_ray((-3, 4), ray) == 5.0
    assert dist_to_ray((3, 4), ray) == 4.0
    assert Ray.through((1, 1), (1, 3)).direction == pytest.approx(math.pi / 2)


def test_segment_distance():
    assert dist_to_segment((0.5, 2), (0, 0), (1, 0)) == 2.0
    assert dist_to_segment((3, 4), (0, 0), (0, 0)) == 5.0


def test_hausdorff_rejects_empty():
    with pytest.raises(EmptySampleError):
        hausdorff_distance(PointSample(np.empty((0, 2))), PointSample([[0, 0]]))


@settings(max_examples=60, deadline=None)
@given(clouds, clouds)
def test_hausdorff_matches_scipy(a, b):
    want = oracles.hausdorff(a, b)
    A, B = PointSample(a), PointSample(b)
    assert hausdorff_distance(A, B) == pytest.approx(want, abs=1e-9)
    assert hausdorff_distance(A, B, "tree") == hausdorff_distance(A, B)


@settings(max_examples=60, deadline=None)
@given(clouds, clouds)
def test_hausdorff_symmetric(a, b):
    assert hausdorff_distance(PointSample(a), PointSample(b)) == hausdorff_distance(PointSample(b), PointSample(a))
