import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from tancone.estimators import (
    BlowupConvergence,
    DichotomyProbe,
    PorosityEstimator,
    StrongEquivalenceProbe,
    TangentConeEstimator,
)
from tancone.exceptions import DegenerateInputError
from tancone.intervals import IntervalSet

SQUARE_SPEC = {"variant": "polygon", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}


def test_get_params_and_clone():
    est = BlowupConvergence(depth=6, n_samples=256)
    assert est.get_params()["depth"] == 6
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est


def test_tangent_cone_estimator():
    est = TangentConeEstimator().fit(SQUARE_SPEC)
    assert est.convex_class_ == "sector"
    np.testing.assert_allclose(est.transform([[-1, -1], [0.5, 0.5]]), [math.sqrt(2), 0.0])
    assert list(est.predict([[1, 1], [-1, 0.5]])) == [True, False]


def test_convex_option():
    spec = {"variant": "finite-sample", "points": [[0, 0], [1, 0], [0, 1], [-1, 0]]}
    assert TangentConeEstimator(convex=True).fit(spec).convex_class_ == "half-plane"
    assert TangentConeEstimator().fit(spec).convex_class_ == "general-union"


def test_unfitted():
    with pytest.raises(NotFittedError):
        TangentConeEstimator().transform([[0, 0]])


def test_planar_set_needs_point(square):
    with pytest.raises(DegenerateInputError):
        TangentConeEstimator().fit(square.X)
    assert TangentConeEstimator().fit(square.X, point=square.point).convex_class_ == "sector"


def test_blowup_and_equivalence(square):
    assert BlowupConvergence(n_samples=512).fit(square.X, point=square.point).predict() == "converges"
    probe = StrongEquivalenceProbe(depth=6).fit(square.X, SQUARE_SPEC, point=square.point)
    assert probe.predict() == "equivalent"


def test_porosity_estimator():
    est = PorosityEstimator().fit(IntervalSet.geometric(0.25, 0.5))
    assert est.estimate_ == pytest.approx(0.5, abs=0.02)
    np.testing.assert_array_equal(est.transform([[[0, 1]], {"intervals": [[0, 0]]}]), [0.0, 1.0])


def test_dichotomy_probe():
    est = DichotomyProbe(direction=math.pi).fit(SQUARE_SPEC)
    assert est.predict() == "limit-one"
    assert DichotomyProbe(direction=0.0).fit(SQUARE_SPEC).classification_ == "limit-zero"
