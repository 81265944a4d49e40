"""Command-line front end.

Exit status: 0 on success, 1 when ``verify`` has a failing criterion,
2 on usage errors and 3 on set-spec or schema errors.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .blowup import cone_convergence_report, sequence_cluster_directions
from .cones import con_a, conv_a
from .equivalence import strong_equiv_probe
from .exceptions import (
    DegenerateInputError,
    InvariantError,
    SchemaError,
    ShallowLadderError,
    UnknownFixtureError,
    UnsupportedVariantError,
)
from .fixtures import fixture_names, make_fixture
from .geometry import Ray
from .intervals import IntervalSet
from .ladder import ScaleLadder, beta_ladder
from .porosity import dichotomy_probe, porosity_estimate
from .reporting import fmt
from .sets import RadialProduct, load_set_spec, parse_set_spec
from .validation import check_interval_set
from .verify import run_verify

__all__ = ["RunConfig", "build_parser", "main", "run"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SCHEMA = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec: str | None = None
    fixture: str | None = None
    t0: float = 1.0
    q: float = 0.5
    depth: int = 12
    beta_depth: int = 10
    samples: int = 1024
    radius: float = 1.0
    ray: float = 0.0
    out: str | None = None
    seed: int = 0

    def __post_init__(self):
        if not self.t0 > 0:
            raise UsageError("--t0 must be positive")
        if not 0 < self.q < 1:
            raise UsageError("--q must lie in (0, 1)")
        if self.depth < 4:
            raise UsageError("--depth must be at least 4")
        if self.samples < 64:
            raise UsageError("--samples must be at least 64")
        if not self.radius > 0:
            raise UsageError("--radius must be positive")
        if self.beta_depth < 3:
            raise UsageError("--beta-depth must be at least 3")
        if not math.isfinite(self.ray):
            raise UsageError("--ray must be finite")

    @property
    def ladder(self) -> ScaleLadder:
        return ScaleLadder(self.t0, self.q, self.depth)


def _common(p: argparse.ArgumentParser, depth: int, samples: int):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--spec", help="set-spec JSON file")
    src.add_argument("--fixture", help=f"built-in set: {', '.join(fixture_names())}")
    p.add_argument("--t0", type=float, default=1.0, help="largest scale")
    p.add_argument("--q", type=float, default=0.5, help="scale ratio")
    p.add_argument("--depth", type=int, default=depth, help="number of scales")
    p.add_argument("--samples", type=int, default=samples, help="points per sphere or blow-up")
    p.add_argument("--radius", type=float, default=1.0, help="blow-up window radius")
    p.add_argument("--beta-depth", type=int, default=10, help="number of sector apertures 2^-j")
    p.add_argument("--ray", type=float, default=0.0, help="ray direction in radians")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV output path ('-' for standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tancone", description="Tangent cones of planar sets.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext, depth, samples in (
        ("cone", "smallest closed cone at the marked point", 12, 1024),
        ("conv", "smallest closed convex cone at the marked point", 12, 1024),
        ("blowup", "convergence of blow-ups to the tangent cone", 12, 4096),
        ("equiv", "strong tangent equivalence of two sets", 12, 1024),
        ("porosity", "right-side porosity of a subset of the half-line", 30, 1024),
        ("dichotomy", "porosity of the sector radii sets as the aperture closes", 30, 1024),
        ("cluster", "cluster directions of an alternating sequence", 12, 1024),
        ("verify", "run every acceptance suite", 12, 1024),
    ):
        p = sub.add_parser(name, help=helptext)
        _common(p, depth, samples)
        if name == "equiv":
            p.add_argument("sets", nargs="*", metavar="Z Y",
                           help="two set-spec files or fixture names (Y defaults to the cone of Z)")
        if name == "cluster":
            p.add_argument("--theta-odd", type=float, default=0.3)
            p.add_argument("--theta-even", type=float, default=0.9)
    return parser


def _load(cfg: RunConfig, fixture_ok: bool = True):
    if cfg.spec:
        return load_set_spec(cfg.spec), None
    if cfg.fixture:
        params = {"seed": cfg.seed} if cfg.fixture == "convex-polygon-at-vertex" else {}
        fx = make_fixture(cfg.fixture, **params)
        return (fx.X, fx.point), fx
    raise UsageError("give --spec or --fixture")


def _resolve(token: str):
    path = Path(token)
    if path.exists():
        return load_set_spec(path)
    if token in fixture_names():
        fx = make_fixture(token)
        return fx.X, fx.point
    raise UsageError(f"{token!r} is neither a file nor a fixture")


def _emit(cfg: RunConfig, text: str):
    if cfg.out is None:
        return
    if cfg.out == "-":
        sys.stdout.write(text)
    else:
        Path(cfg.out).write_text(text)


def _arcs_text(arcs) -> str:
    if arcs.is_empty:
        return "[]"
    return " ".join(f"[{fmt(lo)}, {fmt(hi)}]" for lo, hi in arcs.circular_arcs())


def _cmd_cone(cfg, convex=False):
    (X, a), _ = _load(cfg)
    cone = (conv_a if convex else con_a)(X, a)
    print(f"vertex {fmt(a.x)} {fmt(a.y)}")
    print(f"class {cone.convex_class}")
    print(f"arcs {_arcs_text(cone.arcs)}")
    _emit(cfg, json.dumps(cone.to_dict()) + "\n")
    return EXIT_OK


def _cmd_blowup(cfg):
    (X, a), _ = _load(cfg)
    rep = cone_convergence_report(X, a, cfg.ladder, cfg.radius, cfg.samples)
    _emit(cfg, rep.to_csv())
    if cfg.out and cfg.out != "-":
        Path(cfg.out).with_suffix(".dat").write_text(rep.to_gnuplot())
    print(f"{rep.verdict} final_d_h {fmt(rep.rows[-1].d_h)}")
    return EXIT_OK


def _cmd_equiv(cfg, tokens):
    if len(tokens) > 2:
        raise UsageError("equiv takes at most two sets")
    if len(tokens) == 2:
        (Z, a), (Y, b) = _resolve(tokens[0]), _resolve(tokens[1])
        if a != b:
            raise DegenerateInputError("both sets must share the marked point")
    else:
        if tokens:
            Z, a = _resolve(tokens[0])
            fx = None
        else:
            (Z, a), fx = _load(cfg)
        partner = fx.expect.partner if fx is not None else None
        Y = partner if partner is not None else con_a(Z, a).as_set()
    rep = strong_equiv_probe(Z, Y, a, cfg.ladder, cfg.samples)
    _emit(cfg, rep.to_csv())
    print(f"{rep.verdict} final_ratio {fmt(rep.rows[-1].ratio)}")
    return EXIT_OK


def _interval_spec(cfg) -> tuple[IntervalSet, float]:
    if cfg.spec:
        try:
            doc = json.loads(Path(cfg.spec).read_text())
        except OSError as exc:
            raise SchemaError(f"cannot read {cfg.spec}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
        if isinstance(doc, dict) and "variant" in doc and doc["variant"] != "interval-set":
            X, _ = parse_set_spec(doc)
            if not isinstance(X, RadialProduct):
                raise SchemaError("porosity needs an interval-set or radial-product spec")
            return X.radii, 0.0
        x = float(doc.get("x", 0.0)) if isinstance(doc, dict) else 0.0
        return check_interval_set(doc), x
    (X, _), _ = _load(cfg)
    if not isinstance(X, RadialProduct):
        raise UsageError("porosity needs a radial-product fixture")
    return X.radii, 0.0


def _cmd_porosity(cfg):
    A, x = _interval_spec(cfg)
    est = porosity_estimate(A, x, cfg.ladder)
    _emit(cfg, est.to_csv())
    print(f"porosity {est.estimate:.6f}")
    return EXIT_OK


def _cmd_dichotomy(cfg):
    (X, a), _ = _load(cfg)
    verdict = dichotomy_probe(X, a, Ray(a, cfg.ray), beta_ladder(cfg.beta_depth), cfg.ladder)
    _emit(cfg, verdict.to_csv())
    print(verdict)
    return EXIT_OK


def _cmd_cluster(cfg, theta_odd, theta_even):
    rep = sequence_cluster_directions(theta_odd, theta_even, cfg.ladder)
    _emit(cfg, rep.to_csv())
    print(f"clusters {rep.n_clusters} separation {fmt(rep.separation)}")
    return EXIT_OK


def _cmd_verify(cfg):
    results = run_verify(cfg.seed, cfg.out, echo=print)
    failed = [r.key for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_FAIL if failed else EXIT_OK


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(args.command, args.spec, args.fixture, args.t0, args.q, args.depth,
                        args.beta_depth, args.samples, args.radius, args.ray, args.out, args.seed)
        if cfg.command == "cone":
            return _cmd_cone(cfg)
        if cfg.command == "conv":
            return _cmd_cone(cfg, convex=True)
        if cfg.command == "blowup":
            return _cmd_blowup(cfg)
        if cfg.command == "equiv":
            return _cmd_equiv(cfg, args.sets)
        if cfg.command == "porosity":
            return _cmd_porosity(cfg)
        if cfg.command == "dichotomy":
            return _cmd_dichotomy(cfg)
        if cfg.command == "cluster":
            return _cmd_cluster(cfg, args.theta_odd, args.theta_even)
        return _cmd_verify(cfg)
    except (UsageError, UnknownFixtureError, ShallowLadderError) as exc:
        print(f"tancone: error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, InvariantError, DegenerateInputError, UnsupportedVariantError) as exc:
        print(f"tancone: spec error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
