"""Closed subsets of the circle stored as normalized unions of closed arcs."""
from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .geometry import ANGLE_TOL, TWO_PI, normalize_angle

__all__ = ["AngularSet"]


def _merge(pieces: list[tuple[float, float]], tol: float) -> list[tuple[float, float]]:
    pieces.sort()
    out: list[list[float]] = []
    for lo, hi in pieces:
        if out and lo <= out[-1][1] + tol:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return [(lo, hi) for lo, hi in out]


class AngularSet:
    """A closed set of directions.

    Internally the set is a sorted tuple of disjoint *pieces* ``(lo, hi)`` with
    ``0 <= lo <= hi <= 2*pi``.  An arc that wraps through direction 0 is split
    into ``[lo, 2*pi]`` and ``[0, hi]``.  Pieces whose gap is below ``tol``
    are merged.

    Parameters
    ----------
    arcs : iterable of (lo, hi)
        Circular arcs running counter-clockwise from ``lo`` to ``hi``
        (``hi >= lo``; ``hi`` may exceed ``2*pi``).  An arc of length
        ``>= 2*pi - tol`` is the full circle.
    """

    __slots__ = ("_pieces", "_full", "tol")

    def __init__(self, arcs: Iterable[tuple[float, float]] = (), tol: float = ANGLE_TOL):
        self.tol = tol
        raw: list[tuple[float, float]] = []
        full = False
        for lo, hi in arcs:
            lo, hi = float(lo), float(hi)
            if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo - tol:
                raise ValueError(f"invalid arc ({lo}, {hi})")
            hi = max(hi, lo)
            if hi - lo >= TWO_PI - tol:
                full = True
                break
            if 0.0 <= lo < TWO_PI - tol and hi <= TWO_PI:
                # already canonical; keep the floats untouched
                raw.append((lo, hi))
                continue
            start = normalize_angle(lo)
            stop = start + (hi - lo)
            if stop > TWO_PI:
                raw.append((start, TWO_PI))
                raw.append((0.0, stop - TWO_PI))
            else:
                raw.append((start, stop))
        pieces = [] if full else _merge(raw, tol)
        if len(pieces) == 1 and pieces[0][0] <= tol and pieces[0][1] >= TWO_PI - tol:
            full = True
        if len(pieces) > 1 and pieces[0][0] <= tol and pieces[-1][1] >= TWO_PI - tol:
            if pieces[0][1] >= pieces[-1][0] - tol:
                full = True
        self._full = full
        self._pieces = ((0.0, TWO_PI),) if full else tuple(pieces)

    # -- constructors -------------------------------------------------------
    @classmethod
    def full(cls) -> "AngularSet":
        return cls([(0.0, TWO_PI)])

    @classmethod
    def empty(cls) -> "AngularSet":
        return cls()

    @classmethod
    def point(cls, theta: float) -> "AngularSet":
        return cls([(theta, theta)])

    @classmethod
    def from_angles(cls, angles, pad: float) -> "AngularSet":
        """Union of closed arcs ``[theta - pad, theta + pad]``."""
        angles = np.atleast_1d(np.asarray(angles, dtype=float))
        return cls([(t - pad, t + pad) for t in angles])

    # -- basic queries ------------------------------------------------------
    @property
    def pieces(self) -> tuple[tuple[float, float], ...]:
        return self._pieces

    @property
    def is_full(self) -> bool:
        return self._full

    @property
    def is_empty(self) -> bool:
        return not self._pieces

    def __bool__(self):
        return not self.is_empty

    def _wraps(self) -> bool:
        p = self._pieces
        return (
            not self._full
            and len(p) > 1
            and p[0][0] <= self.tol
            and p[-1][1] >= TWO_PI - self.tol
        )

    def circular_arcs(self) -> list[tuple[float, float]]:
        """Arcs ``(start, end)`` with ``start`` in ``[0, 2*pi)`` and ``end >= start``.

        A piece pair split at direction 0 is joined back, so ``end`` may
        exceed ``2*pi``.
        """
        if self._full:
            return [(0.0, TWO_PI)]
        p = list(self._pieces)
        if self._wraps():
            first, last = p[0], p[-1]
            return p[1:-1] + [(last[0], first[1] + TWO_PI)]
        return p

    def measure(self) -> float:
        return sum(hi - lo for lo, hi in self._pieces)

    def contains(self, theta):
        """Vectorized closed membership with tolerance ``tol``."""
        th = normalize_angle(np.asarray(theta, dtype=float))
        th = np.atleast_1d(th)
        hit = np.zeros(th.shape, dtype=bool)
        for lo, hi in self._pieces:
            hit |= (th >= lo - self.tol) & (th <= hi + self.tol)
            if hi >= TWO_PI - self.tol:
                hit |= th <= self.tol - (TWO_PI - hi)
            if lo <= self.tol:
                hit |= th >= TWO_PI - (self.tol - lo)
        if np.ndim(theta) == 0:
            return bool(hit[0])
        return hit

    # -- set algebra ----------------------------------------------------------
    def union(self, other: "AngularSet") -> "AngularSet":
        return AngularSet(list(self._pieces) + list(other._pieces), tol=self.tol)

    def _linear_pieces(self):
        out = list(self._pieces)
        for lo, hi in self._pieces:
            if hi >= TWO_PI - self.tol:
                out.append((0.0, 0.0))
            if lo <= self.tol:
                out.append((TWO_PI, TWO_PI))
        return sorted(out)

    def intersection(self, other: "AngularSet") -> "AngularSet":
        if self._full:
            return other
        if other._full:
            return self
        a, b = self._linear_pieces(), other._linear_pieces()
        out = []
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi + self.tol:
                out.append((min(lo, hi), hi) if hi >= lo else (hi, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return AngularSet(out, tol=self.tol)

    def intersects(self, other: "AngularSet") -> bool:
        return not self.intersection(other).is_empty

    def shifted(self, alpha: float) -> "AngularSet":
        """Rotate every direction by ``alpha``."""
        return AngularSet([(lo + alpha, hi + alpha) for lo, hi in self.circular_arcs()], tol=self.tol)

    def gaps(self) -> list[tuple[float, float]]:
        """Open complementary arcs as ``(start, end)`` with ``end >= start``."""
        if self._full or self.is_empty:
            return [] if self._full else [(0.0, TWO_PI)]
        arcs = self.circular_arcs()
        out = []
        for k, (_, end) in enumerate(arcs):
            nxt = arcs[(k + 1) % len(arcs)][0]
            if k + 1 == len(arcs):
                nxt += TWO_PI
            while nxt < end:
                nxt += TWO_PI
            out.append((end, nxt))
        return out

    def largest_gap(self) -> tuple[float, float] | None:
        gaps = self.gaps()
        if not gaps:
            return None
        return max(gaps, key=lambda g: g[1] - g[0])

    def endpoints(self) -> list[float]:
        """Genuine boundary directions (the split at direction 0 is not one)."""
        if self._full:
            return []
        out = []
        for lo, hi in self.circular_arcs():
            out.append(normalize_angle(lo))
            if hi - lo > self.tol:
                out.append(normalize_angle(hi))
        return out

    def sample(self, step: float) -> np.ndarray:
        """Angles covering the set with spacing at most ``step``; arc endpoints included."""
        if self._full:
            k = max(1, int(math.ceil(TWO_PI / step - 1e-9)))
            return np.arange(k) * (TWO_PI / k)
        chunks = []
        for lo, hi in self.circular_arcs():
            length = hi - lo
            if length <= self.tol:
                chunks.append(np.array([lo]))
                continue
            k = max(1, int(math.ceil(length / step - 1e-9)))
            chunks.append(lo + np.arange(k + 1) * (length / k))
        if not chunks:
            return np.empty(0)
        return np.concatenate(chunks)

    # -- comparison -----------------------------------------------------------
    def isclose(self, other: "AngularSet", atol: float = 1e-9) -> bool:
        if self._full or other._full:
            return self._full == other._full
        a, b = self._pieces, other._pieces
        if len(a) != len(b):
            return False
        return all(abs(x[0] - y[0]) <= atol and abs(x[1] - y[1]) <= atol for x, y in zip(a, b))

    def __eq__(self, other):
        if not isinstance(other, AngularSet):
            return NotImplemented
        return self._full == other._full and self._pieces == other._pieces

    def __hash__(self):
        return hash((self._full, self._pieces))

    def __repr__(self):
        if self._full:
            return "AngularSet(full)"
        body = ", ".join(f"[{lo:.12g}, {hi:.12g}]" for lo, hi in self.circular_arcs())
        return f"AngularSet({body})"
