"""Geometric scale ladders used to estimate limits as the scale goes to zero."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ShallowLadderError

__all__ = ["ScaleLadder", "beta_ladder"]


@dataclass(frozen=True)
class ScaleLadder:
    """Scales ``t0 * q**k`` for ``k = 0 .. depth - 1`` (strictly decreasing)."""

    t0: float = 1.0
    q: float = 0.5
    depth: int = 12

    def __post_init__(self):
        if not self.t0 > 0:
            raise ValueError("t0 must be positive")
        if not 0.0 < self.q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        if int(self.depth) != self.depth or self.depth < 1:
            raise ValueError("depth must be a positive integer")

    @property
    def scales(self) -> np.ndarray:
        return self.t0 * self.q ** np.arange(self.depth)

    def __len__(self):
        return self.depth

    def require(self, minimum: int) -> None:
        if self.depth < minimum:
            raise ShallowLadderError(f"ladder depth {self.depth} < required {minimum}")


def beta_ladder(depth: int = 10) -> list[float]:
    """Sector apertures ``2**-j``, ``j = 1 .. depth``."""
    if depth < 1:
        raise ShallowLadderError("beta ladder needs at least one value")
    return [2.0 ** -j for j in range(1, depth + 1)]
