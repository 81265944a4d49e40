"""Brute-force reference computations, deliberately independent of the library code paths.

They work from analytic membership predicates and dense point clouds, never
from the arc, interval or chord machinery under test.
"""
import math

import numpy as np
from scipy.spatial.distance import directed_hausdorff


def parabola_member(pts):
    """``{x >= 0, x**2 <= y <= 1}``."""
    pts = np.atleast_2d(pts)
    x, y = pts[:, 0], pts[:, 1]
    return (x >= 0) & (y >= x * x) & (y <= 1)


def parabola_boundary(n=200_001, top=1.0):
    """Dense samples of the lower curve, the left edge and the top of the parabola region."""
    x = np.linspace(0.0, 1.0, n)
    curve = np.column_stack((x, x * x))
    y = np.linspace(0.0, top, n)
    left = np.column_stack((np.zeros(n), y))
    cap = np.column_stack((x, np.ones(n)))
    return np.concatenate([curve, left, cap])


def direction_extent(points, a=(0.0, 0.0)):
    """Smallest and largest direction of the points seen from ``a`` (no wrap handling)."""
    rel = np.asarray(points) - np.asarray(a)
    rel = rel[np.hypot(rel[:, 0], rel[:, 1]) > 0]
    th = np.arctan2(rel[:, 1], rel[:, 0])
    return float(th.min()), float(th.max())


def parabola_directions():
    # the region is the union of the segments from 0 to its boundary, so the
    # boundary directions sweep out the cone; push the curve toward 0 geometrically
    x = np.logspace(-14, 0, 20_001)
    pts = np.concatenate([np.column_stack((x, x * x)), [[0.0, 1.0]]])
    return direction_extent(pts)


def min_dist(points, cloud, chunk=512):
    """For each point, the distance to the nearest cloud point (exhaustive)."""
    points = np.atleast_2d(points)
    out = np.empty(len(points))
    for s in range(0, len(points), chunk):
        blk = points[s:s + chunk]
        d = np.hypot(blk[:, None, 0] - cloud[None, :, 0], blk[:, None, 1] - cloud[None, :, 1])
        out[s:s + chunk] = d.min(axis=1)
    return out


def quarter_circle(t, n):
    th = np.linspace(0.0, math.pi / 2, n)
    return t * np.column_stack((np.cos(th), np.sin(th)))


def eps_cone_to_parabola(t, n_sphere=4001, n_cloud=400_001):
    """``sup over the quarter circle of radius t of dist(., parabola region)``."""
    z = quarter_circle(t, n_sphere)
    inside = parabola_member(z)
    x = np.linspace(0.0, 2 * t, n_cloud)
    curve = np.column_stack((x, x * x))
    d = min_dist(z[~inside], curve)
    return float(d.max()) if d.size else 0.0


def gap_scan(A, x, h, res=1e-6):
    """Longest run of non-members of the interval list ``A`` on a grid of pitch ``res`` in ``[x, x+h]``."""
    n = int(round(h / res)) + 1
    grid = x + np.arange(n) * (h / (n - 1))
    inside = np.zeros(n, dtype=bool)
    for lo, hi in A:
        inside |= (grid >= lo) & (grid <= hi)
    if not inside.any():
        return h
    idx = np.flatnonzero(inside)
    runs = np.diff(np.concatenate([[-1], idx, [n]])) - 1
    # a run of k missing grid points spans at most (k + 1) pitches of the true gap
    k = runs.max()
    return float((k + 1) * (h / (n - 1))) if k > 0 else 0.0


def porosity_scan(A, exps=(20, 26), per_octave=96, res_frac=2e-5):
    """Max of ``gap/h`` over a dense log grid of ``h`` (membership scan per ``h``)."""
    best = 0.0
    for s in range(exps[0] * per_octave, exps[1] * per_octave + 1):
        h = 2.0 ** (-s / per_octave)
        best = max(best, gap_scan(A, 0.0, h, h * res_frac) / h)
    return min(best, 1.0)


def sector_member(pts, a, direction, beta):
    """``dist(z, l) <= beta*|z - a|`` for the ray ``l`` from ``a``."""
    rel = np.atleast_2d(pts) - np.asarray(a)
    u = np.array([math.cos(direction), math.sin(direction)])
    s = rel @ u
    perp = np.abs(rel[:, 0] * u[1] - rel[:, 1] * u[0])
    dist = np.where(s > 0, perp, np.hypot(rel[:, 0], rel[:, 1]))
    return dist <= beta * np.hypot(rel[:, 0], rel[:, 1]) + 1e-15


def hausdorff(A, B):
    return max(directed_hausdorff(A, B)[0], directed_hausdorff(B, A)[0])


def cluster_separation(theta_odd, theta_even, n=40):
    """Distance between the two subsequence limits of ``z_n / r_n`` computed term by term."""
    r = 2.0 ** -np.arange(1, n + 1)
    z = [r[k] * complex(math.cos(theta_odd if (k + 1) % 2 else theta_even),
                        math.sin(theta_odd if (k + 1) % 2 else theta_even)) for k in range(n)]
    w = [z[k] / r[k] for k in range(n)]
    return abs(w[-1] - w[-2])
