"""Sphere defect ``eps_a(t, Z, Y)`` and the multi-scale strong tangent equivalence probe.

Two sets through ``a`` are strongly tangent equivalent there exactly when
``eps_a(t) / t -> 0`` as ``t -> 0``, where ``eps_a(t)`` is the larger of the
two one-sided sphere defects.  The probe evaluates this ratio on a
:class:`~tancone.ladder.ScaleLadder` and classifies the tail.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import as_point
from .ladder import ScaleLadder
from .reporting import to_csv
from .sets import PlanarSet, membership, sphere_sample
from .exceptions import DegenerateInputError

__all__ = [
    "TOL_EQ",
    "TOL_NE",
    "Epsilon",
    "EquivalenceReport",
    "EquivalenceRow",
    "epsilon_one_sided",
    "epsilon_sym",
    "strong_equiv_probe",
]

TOL_EQ = 0.05
TOL_NE = 0.2
WINDOW = 3


@dataclass(frozen=True)
class Epsilon:
    """A sphere defect with its error bound; unpacks as ``(value, error_bound)``."""

    value: float
    error_bound: float
    empty_sphere: bool = False

    def __iter__(self):
        yield self.value
        yield self.error_bound


def _check_members(Z, Y, a):
    if not (membership(Z, a) and membership(Y, a)):
        raise DegenerateInputError("both sets must contain the marked point")


def epsilon_one_sided(t: float, Z: PlanarSet, Y: PlanarSet, a, n: int = 1024) -> Epsilon:
    """``sup over z in S_t^Z of dist(z, Y)``.

    An empty sphere contributes 0 (supremum over the empty set) and is
    flagged on the result.
    """
    a = as_point(a)
    _check_members(Z, Y, a)
    sample = sphere_sample(Z, a, t, n)
    if sample.empty:
        return Epsilon(0.0, 0.0, True)
    d, b = Y.distances(sample.points)
    return Epsilon(float(np.max(d)), float(sample.mesh + np.max(b)))


def epsilon_sym(t: float, Z: PlanarSet, Y: PlanarSet, a, n: int = 1024) -> Epsilon:
    zy = epsilon_one_sided(t, Z, Y, a, n)
    yz = epsilon_one_sided(t, Y, Z, a, n)
    return Epsilon(max(zy.value, yz.value), max(zy.error_bound, yz.error_bound),
                   zy.empty_sphere or yz.empty_sphere)


@dataclass(frozen=True)
class EquivalenceRow:
    t: float
    eps_zy: float
    eps_yz: float
    eps: float
    ratio: float
    bound: float
    empty_sphere: bool


@dataclass
class EquivalenceReport:
    rows: list[EquivalenceRow]
    verdict: str
    slope: float
    tol_eq: float = TOL_EQ
    tol_ne: float = TOL_NE
    window: int = WINDOW
    header: tuple = field(default=("t", "eps_zy", "eps_yz", "eps", "ratio", "bound", "empty_sphere_flag"),
                          repr=False)

    @property
    def ratios(self) -> np.ndarray:
        return np.array([r.ratio for r in self.rows])

    def to_csv(self) -> str:
        return to_csv(self.header, [
            (r.t, r.eps_zy, r.eps_yz, r.eps, r.ratio, r.bound, r.empty_sphere) for r in self.rows
        ])


def _verdict(rows, tol_eq, tol_ne, window) -> str:
    tail = rows[-window:]
    if all(r.ratio <= tol_eq and r.bound / r.t < tol_eq / 2 for r in tail):
        return "equivalent"
    if all(r.ratio - r.bound / r.t > tol_ne for r in tail):
        return "not-equivalent"
    return "inconclusive"


def _decay_slope(rows) -> float:
    pts = [(math.log(r.t), math.log(r.ratio)) for r in rows if r.eps > r.bound and r.ratio > 0]
    if len(pts) < 2:
        return math.nan
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


def strong_equiv_probe(Z: PlanarSet, Y: PlanarSet, a, ladder: ScaleLadder | None = None,
                       n: int = 1024, tol_eq: float = TOL_EQ, tol_ne: float = TOL_NE,
                       window: int = WINDOW) -> EquivalenceReport:
    """Tabulate ``eps_a(t)/t`` along ``ladder`` and classify the finest ``window`` rows.

    ``equivalent``: every tail ratio is at most ``tol_eq`` with relative error
    bound below ``tol_eq/2``.  ``not-equivalent``: every tail ratio exceeds
    ``tol_ne`` even after subtracting its bound.  Otherwise ``inconclusive``.
    The fitted log-log slope of the ratio is diagnostic only.
    """
    ladder = ladder or ScaleLadder()
    ladder.require(4)
    a = as_point(a)
    _check_members(Z, Y, a)
    rows = []
    for t in ladder.scales:
        t = float(t)
        zy = epsilon_one_sided(t, Z, Y, a, n)
        yz = epsilon_one_sided(t, Y, Z, a, n)
        eps = max(zy.value, yz.value)
        bound = max(zy.error_bound, yz.error_bound)
        rows.append(EquivalenceRow(t, zy.value, yz.value, eps, eps / t, bound,
                                   zy.empty_sphere or yz.empty_sphere))
    return EquivalenceReport(rows, _verdict(rows, tol_eq, tol_ne, window), _decay_slope(rows),
                             tol_eq, tol_ne, window)
