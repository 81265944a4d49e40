"""Finite unions of closed intervals of the nonnegative half-line."""
from __future__ import annotations

import bisect
import math
from typing import Iterable

from .exceptions import InvariantError

__all__ = ["IntervalSet"]


class IntervalSet:
    """Sorted, disjoint closed intervals ``[lo, hi]`` with ``0 <= lo <= hi <= inf``.

    Intervals that overlap or share an endpoint are merged on construction,
    as are intervals closer than ``merge_tol``.
    """

    __slots__ = ("_intervals", "_los")

    def __init__(self, intervals: Iterable[tuple[float, float]] = (), merge_tol: float = 0.0):
        items = []
        for lo, hi in intervals:
            lo, hi = float(lo), float(hi)
            if math.isnan(lo) or math.isnan(hi) or lo > hi:
                raise InvariantError(f"malformed interval [{lo}, {hi}]")
            if lo < 0.0:
                raise InvariantError(f"negative radius in interval [{lo}, {hi}]")
            items.append((lo, hi))
        items.sort()
        merged: list[list[float]] = []
        for lo, hi in items:
            if merged and lo <= merged[-1][1] + merge_tol:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        self._intervals = tuple((lo, hi) for lo, hi in merged)
        self._los = [lo for lo, _ in self._intervals]

    @classmethod
    def point(cls, x: float = 0.0) -> "IntervalSet":
        return cls([(x, x)])

    @classmethod
    def half_line(cls) -> "IntervalSet":
        return cls([(0.0, math.inf)])

    @classmethod
    def from_values(cls, values, merge_tol: float) -> "IntervalSet":
        """Close a finite set of radii, bridging gaps no longer than ``merge_tol``."""
        return cls(((v, v) for v in values), merge_tol=merge_tol)

    @classmethod
    def geometric(cls, q: float, c: float, top: float = 1.0, floor: float = 1e-40,
                  include_zero: bool = True) -> "IntervalSet":
        """``{0} U union_k [c*top*q^k, top*q^k]`` truncated once ``top*q^k < floor``."""
        if not (0.0 < q < 1.0) or not (q < c <= 1.0):
            raise InvariantError("geometric radii need 0 < q < c <= 1")
        out = [(0.0, 0.0)] if include_zero else []
        hi = top
        while hi >= floor:
            out.append((c * hi, hi))
            hi *= q
        return cls(out)

    @property
    def intervals(self) -> tuple[tuple[float, float], ...]:
        return self._intervals

    def __iter__(self):
        return iter(self._intervals)

    def __len__(self):
        return len(self._intervals)

    @property
    def is_empty(self) -> bool:
        return not self._intervals

    def contains(self, x: float, tol: float = 0.0) -> bool:
        i = bisect.bisect_right(self._los, x + tol) - 1
        return i >= 0 and x <= self._intervals[i][1] + tol

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self._intervals + other._intervals)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        a, b = self._intervals, other._intervals
        out, i, j = [], 0, 0
        while i < len(a) and j < len(b):
            lo, hi = max(a[i][0], b[j][0]), min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    def clipped(self, lo: float, hi: float) -> list[tuple[float, float]]:
        """Pieces of the set inside ``[lo, hi]``, in order."""
        start = max(0, bisect.bisect_right(self._los, lo) - 1)
        out = []
        for a, b in self._intervals[start:]:
            if a > hi:
                break
            if b < lo:
                continue
            out.append((max(a, lo), min(b, hi)))
        return out

    def is_subset(self, other: "IntervalSet", tol: float = 0.0) -> bool:
        for lo, hi in self._intervals:
            i = bisect.bisect_right(other._los, lo + tol) - 1
            if i < 0 or other._intervals[i][1] + tol < hi:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._intervals == other._intervals

    def __hash__(self):
        return hash(self._intervals)

    def __repr__(self):
        body = ", ".join(f"[{lo:.12g}, {hi:.12g}]" for lo, hi in self._intervals)
        return f"IntervalSet({body})"
