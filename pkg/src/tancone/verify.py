"""Acceptance suites run by ``tancone verify``; each reports pass/fail, a detail line and CSV artifacts."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .blowup import cone_convergence_report, sequence_cluster_directions
from .cones import con_a, conv_a
from .equivalence import strong_equiv_probe
from .fixtures import (
    PROBE_RAYS,
    STARLIKE_FIXTURES,
    densified_sample,
    make_fixture,
    random_convex_polygon,
)
from .geometry import Ray
from .intervals import IntervalSet
from .ladder import ScaleLadder, beta_ladder
from .porosity import dichotomy_probe, porosity_estimate
from .reporting import to_csv

__all__ = ["CriterionResult", "SUITES", "run_verify"]


@dataclass
class CriterionResult:
    key: str
    name: str
    passed: bool
    detail: str
    artifacts: dict[str, str] = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.key} {self.name}: {self.detail}"


def _cone_correctness(seed):
    names = ("real-halfline", "full-plane", "sector", "square-at-corner", "parabola-star-region")
    rows, ok = [], True
    for name in names:
        fx = make_fixture(name)
        got = con_a(fx.X, fx.point).arcs
        good = got.isclose(fx.expect.cone, atol=1e-6)
        ok &= good
        for lo, hi in got.circular_arcs():
            rows.append((name, lo, hi, good))
    return ok, f"{len(names)} fixtures within 1e-6 rad", {"cone_arcs.csv": to_csv(("fixture", "lo", "hi", "match"), rows)}


def _convexity_collapse(seed):
    rows, bad = [], 0
    for k in range(50):
        poly = random_convex_polygon(seed + k)
        for i, v in enumerate(poly.vertices):
            con = con_a(poly, v).arcs
            conv = conv_a(poly, v).arcs
            same = conv == con
            bad += not same
            lo, hi = con.circular_arcs()[0]
            rows.append((seed + k, i, lo, hi, same))
    return bad == 0, f"{len(rows)} vertices on 50 polygons, {bad} mismatches", {
        "convexity.csv": to_csv(("seed", "vertex", "lo", "hi", "equal"), rows)}


def _blowup_suite(seed):
    ladder = ScaleLadder(1.0, 0.5, 12)
    out, rows, ok = {}, [], True
    for name in STARLIKE_FIXTURES + ("annulus",):
        fx = make_fixture(name)
        rep = cone_convergence_report(fx.X, fx.point, ladder, 1.0, 4096)
        want = fx.expect.blowup
        good = rep.verdict == want and (want != "converges" or rep.rows[-1].d_h <= 0.02)
        ok &= good
        rows.append((name, rep.verdict, rep.rows[-1].d_h, good))
        out[f"blowup_{name}.csv"] = rep.to_csv()
    out["blowup_summary.csv"] = to_csv(("fixture", "verdict", "final_d_h", "ok"), rows)
    failed = [r[0] for r in rows if not r[3]]
    return ok, f"{len(rows)} fixtures" + (f", failed: {failed}" if failed else ""), out


def _equiv_starlike(seed):
    rows, ok = [], True
    for name in STARLIKE_FIXTURES:
        fx = make_fixture(name)
        rep = strong_equiv_probe(fx.X, con_a(fx.X, fx.point).as_set(), fx.point)
        good = rep.verdict == "equivalent" and rep.rows[-1].ratio <= 0.05
        ok &= good
        rows.append((name, rep.verdict, rep.rows[-1].ratio, good))
    return ok, f"{len(rows)} starlike fixtures equivalent to their cones", {
        "equiv_starlike.csv": to_csv(("fixture", "verdict", "final_ratio", "ok"), rows)}


def _two_rays_report():
    fx = make_fixture("two-rays")
    return strong_equiv_probe(fx.X, fx.expect.partner, fx.point)


def _equiv_two_rays_verdict(seed):
    rep = _two_rays_report()
    return rep.verdict == "not-equivalent", f"verdict {rep.verdict}", {"equiv_two_rays.csv": rep.to_csv()}


def _equiv_two_rays_ratio(seed):
    rep = _two_rays_report()
    worst = float(np.max(np.abs(rep.ratios - math.sqrt(2))))
    return worst <= 0.01, f"max |ratio - sqrt(2)| = {worst:.6f} (measured ratio {rep.ratios[-1]:.6f})", {}


def _scan_porosity(A: IntervalSet, lo_exp: int, hi_exp: int, per_octave: int = 64, pts: int = 20001) -> float:
    # independent of the gap scanner: dense membership grid, longest run of misses
    los = np.array([iv[0] for iv in A])
    his = np.array([iv[1] for iv in A])
    best = 0.0
    for s in range(lo_exp * per_octave, hi_exp * per_octave + 1):
        h = 2.0 ** (-s / per_octave)
        x = np.linspace(0.0, h, pts)
        i = np.searchsorted(los, x, side="right") - 1
        inside = (i >= 0) & (x <= his[np.maximum(i, 0)])
        miss = np.flatnonzero(inside)
        run = np.max(np.diff(np.append(miss, pts - 1))) if miss.size else pts - 1
        best = max(best, (run - 1) * h / (pts - 1) / h if miss.size else 1.0)
    return best


def _porosity_oracle(seed):
    G = IntervalSet.geometric(0.25, 0.5)
    est = porosity_estimate(G).estimate
    scan = _scan_porosity(G, 26, 29)
    full = porosity_estimate(IntervalSet.half_line()).estimate
    point = porosity_estimate(IntervalSet.point(0.0)).estimate
    ok = abs(est - 0.5) <= 0.02 and abs(est - scan) <= 0.02 and full == 0.0 and point == 1.0
    rows = [("geometric", est, scan), ("half-line", full, ""), ("point", point, "")]
    return ok, f"geometric {est:.6f} (scan {scan:.6f}), half-line {full:g}, point {point:g}", {
        "porosity.csv": to_csv(("set", "estimate", "oracle"), rows)}


def _dichotomy_suite(seed):
    rows, bad = [], []
    for name in STARLIKE_FIXTURES:
        fx = make_fixture(name)
        for k, r in enumerate(PROBE_RAYS):
            v = dichotomy_probe(fx.X, fx.point, Ray(fx.point, r))
            rows.append((name, k, v.classification, v.estimates[-1].estimate))
            if v.is_violation:
                bad.append((name, k))
    fx = make_fixture("geometric-radial")
    v = dichotomy_probe(fx.X, fx.point, Ray(fx.point, 0.0))
    rows.append(("geometric-radial", 0, v.classification, v.value))
    ok = not bad and v.is_violation and abs(v.value - 0.5) <= 0.05
    return ok, f"{len(rows) - 1} starlike probes, {len(bad)} violations; geometric-radial {v}", {
        "dichotomy.csv": to_csv(("fixture", "ray_index", "classification", "final_estimate"), rows)}


def _closure_invariance(seed):
    ladder = ScaleLadder(1.0 / 16, 0.5, 4)
    betas = beta_ladder(3)
    rows, bad = [], 0
    for name in STARLIKE_FIXTURES + ("annulus", "geometric-radial"):
        fx = make_fixture(name)
        S = densified_sample(fx.X, fx.point, 1e-3, 1.0 / 16)
        for k, r in enumerate(PROBE_RAYS):
            ray = Ray(fx.point, r)
            v1 = dichotomy_probe(fx.X, fx.point, ray, betas, ladder)
            v2 = dichotomy_probe(S, fx.point, ray, betas, ladder)
            same = v1.classification == v2.classification
            bad += not same
            rows.append((name, k, v1.classification, v2.classification, same))
    return bad == 0, f"{len(rows)} fixture/ray pairs, {bad} disagreements", {
        "closure.csv": to_csv(("fixture", "ray_index", "set", "sample", "agree"), rows)}


def _cluster_lab(seed):
    rep = sequence_cluster_directions(0.3, 0.9)
    want = 2 * math.sin(0.3)
    ok = rep.n_clusters == 2 and abs(rep.separation - want) <= 1e-6
    return ok, f"{rep.n_clusters} clusters, separation {rep.separation:.12f}", {
        "clusters.csv": rep.to_csv(), "cluster_separation.csv": rep.separation_csv()}


def _rigid_motion(seed):
    rng = np.random.default_rng(seed)
    names = ("square-at-corner", "parabola-star-region", "convex-polygon-at-vertex", "sector")
    fixtures = [make_fixture(n) for n in names]
    base = [cone_convergence_report(fx.X, fx.point).distances for fx in fixtures]
    rows, worst = [], 0.0
    for k in range(20):
        angle = float(rng.uniform(0.0, 2 * math.pi))
        shift = rng.uniform(-10.0, 10.0, size=2)
        for name, fx, d0 in zip(names, fixtures, base):
            moved = fx.X.moved(angle, shift)
            a = np.array([math.cos(angle) * fx.point.x - math.sin(angle) * fx.point.y,
                          math.sin(angle) * fx.point.x + math.cos(angle) * fx.point.y]) + shift
            d = cone_convergence_report(moved, a).distances
            err = float(np.max(np.abs(d - d0)))
            worst = max(worst, err)
            rows.append((k, name, angle, shift[0], shift[1], err))
    return worst <= 1e-9, f"20 motions x {len(names)} fixtures, max row change {worst:.3e}", {
        "rigid_motion.csv": to_csv(("motion", "fixture", "angle", "dx", "dy", "max_change"), rows)}


Suite = Callable[[int], tuple]

SUITES: list[tuple[str, str, Suite]] = [
    ("1", "cone correctness", _cone_correctness),
    ("2", "convexity collapse", _convexity_collapse),
    ("3", "blow-up convergence", _blowup_suite),
    ("4a", "starlike sets equivalent to their cones", _equiv_starlike),
    ("4b", "two rays not equivalent", _equiv_two_rays_verdict),
    ("4c", "two rays ratio sqrt(2)", _equiv_two_rays_ratio),
    ("5", "porosity oracle", _porosity_oracle),
    ("6", "porosity dichotomy", _dichotomy_suite),
    ("7", "closure invariance", _closure_invariance),
    ("8", "cluster lab", _cluster_lab),
    ("9", "rigid-motion equivariance", _rigid_motion),
]


def _run(seed: int, keys=None) -> list[CriterionResult]:
    out = []
    for key, name, fn in SUITES:
        if keys is not None and key not in keys:
            continue
        passed, detail, artifacts = fn(seed)
        out.append(CriterionResult(key, name, bool(passed), detail, artifacts))
    return out


def run_verify(seed: int = 0, out_dir=None, keys=None, echo=None) -> list[CriterionResult]:
    """Run every suite (or those in ``keys``), then rerun them to check byte-identical artifacts.

    Artifacts are written to ``out_dir`` when given.  ``echo`` receives each
    result line as soon as it is known.
    """
    results = []
    for key, name, fn in SUITES:
        if keys is not None and key not in keys:
            continue
        passed, detail, artifacts = fn(seed)
        res = CriterionResult(key, name, bool(passed), detail, artifacts)
        results.append(res)
        if echo:
            echo(res.line())
    if keys is None or "10" in keys:
        first = {k: v for r in results for k, v in r.artifacts.items()}
        again = {k: v for r in _run(seed, [r.key for r in results]) for k, v in r.artifacts.items()}
        diff = sorted(k for k in first if again.get(k) != first[k])
        res = CriterionResult("10", "determinism", not diff and bool(first),
                              f"{len(first)} artifacts rerun, {len(diff)} differ" + (f": {diff}" if diff else ""))
        results.append(res)
        if echo:
            echo(res.line())
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for r in results:
            for fname, text in r.artifacts.items():
                (out / fname).write_text(text)
        summary = to_csv(("criterion", "name", "passed", "detail"),
                         ((r.key, r.name, r.passed, r.detail) for r in results))
        (out / "summary.csv").write_text(summary)
    return results
