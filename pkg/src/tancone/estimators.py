"""Scikit-learn style wrappers: hyper-parameters in ``__init__``, results in trailing-underscore attributes."""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .blowup import cone_convergence_report
from .cones import con_a, cone_distance, conv_a
from .equivalence import strong_equiv_probe
from .geometry import Ray, as_points
from .ladder import beta_ladder
from .porosity import dichotomy_probe, porosity_estimate
from .validation import check_angle, check_interval_set, check_ladder, check_planar_set, check_sample_count

__all__ = [
    "BlowupConvergence",
    "DichotomyProbe",
    "PorosityEstimator",
    "StrongEquivalenceProbe",
    "TangentConeEstimator",
]


class TangentConeEstimator(BaseEstimator):
    """Fit the tangent cone of a set at a point.

    Parameters
    ----------
    convex : bool
        Fit the smallest closed convex cone instead of the smallest closed cone.

    Attributes
    ----------
    cone_ : ConeDescriptor
    arcs_ : AngularSet
    convex_class_ : str
    """

    def __init__(self, convex: bool = False):
        self.convex = convex

    def fit(self, X, y=None, point=None):
        X, a = check_planar_set(X, point)
        self.cone_ = (conv_a if self.convex else con_a)(X, a)
        self.arcs_ = self.cone_.arcs
        self.convex_class_ = self.cone_.convex_class
        return self

    def transform(self, points) -> np.ndarray:
        """Distance from each point to the fitted cone."""
        check_is_fitted(self, "cone_")
        return np.array([cone_distance(self.cone_, p) for p in as_points(points)])

    def predict(self, points) -> np.ndarray:
        """Whether each point lies in the fitted cone."""
        return self.transform(points) <= 1e-12 * np.maximum(1.0, np.hypot(*as_points(points).T))


class BlowupConvergence(BaseEstimator):
    """Hausdorff convergence of blow-ups to the tangent cone on a disk of radius ``radius``."""

    def __init__(self, t0: float = 1.0, q: float = 0.5, depth: int = 12, radius: float = 1.0,
                 n_samples: int = 4096):
        self.t0 = t0
        self.q = q
        self.depth = depth
        self.radius = radius
        self.n_samples = n_samples

    def fit(self, X, y=None, point=None):
        X, a = check_planar_set(X, point)
        ladder = check_ladder(self.t0, self.q, self.depth)
        self.report_ = cone_convergence_report(X, a, ladder, self.radius, check_sample_count(self.n_samples))
        self.verdict_ = self.report_.verdict
        return self

    def predict(self, X=None) -> str:
        check_is_fitted(self, "report_")
        return self.verdict_


class StrongEquivalenceProbe(BaseEstimator):
    """Strong tangent equivalence of ``X`` and ``y`` at a common point."""

    def __init__(self, t0: float = 1.0, q: float = 0.5, depth: int = 12, n_samples: int = 1024):
        self.t0 = t0
        self.q = q
        self.depth = depth
        self.n_samples = n_samples

    def fit(self, X, y, point=None):
        X, a = check_planar_set(X, point)
        Y, _ = check_planar_set(y, a)
        ladder = check_ladder(self.t0, self.q, self.depth)
        self.report_ = strong_equiv_probe(X, Y, a, ladder, check_sample_count(self.n_samples))
        self.verdict_ = self.report_.verdict
        return self

    def predict(self, X=None) -> str:
        check_is_fitted(self, "report_")
        return self.verdict_


class PorosityEstimator(BaseEstimator):
    """Right-side porosity at ``x`` of closed subsets of the half-line."""

    def __init__(self, x: float = 0.0, t0: float = 1.0, q: float = 0.5, depth: int = 30, window: int = 4):
        self.x = x
        self.t0 = t0
        self.q = q
        self.depth = depth
        self.window = window

    def _estimate(self, A):
        ladder = check_ladder(self.t0, self.q, self.depth, self.window)
        return porosity_estimate(check_interval_set(A), self.x, ladder, self.window)

    def fit(self, X, y=None):
        self.result_ = self._estimate(X)
        self.estimate_ = self.result_.estimate
        return self

    def transform(self, X) -> np.ndarray:
        """Porosity estimate for each interval set in ``X``."""
        return np.array([self._estimate(A).estimate for A in X])


class DichotomyProbe(BaseEstimator):
    """Limit of the radii-set porosity along one ray as the sector closes."""

    def __init__(self, direction: float = 0.0, beta_depth: int = 10, t0: float = 1.0, q: float = 0.5,
                 depth: int = 30, window: int = 4):
        self.direction = direction
        self.beta_depth = beta_depth
        self.t0 = t0
        self.q = q
        self.depth = depth
        self.window = window

    def fit(self, X, y=None, point=None):
        X, a = check_planar_set(X, point)
        ladder = check_ladder(self.t0, self.q, self.depth, self.window)
        ray = Ray(a, check_angle(self.direction) % (2 * math.pi))
        self.verdict_ = dichotomy_probe(X, a, ray, beta_ladder(self.beta_depth), ladder, self.window)
        self.classification_ = self.verdict_.classification
        return self

    def predict(self, X=None) -> str:
        check_is_fitted(self, "verdict_")
        return self.classification_
