"""Command-line interface.

Commands:
    bounds   print the sharp and classical lower bounds for one R or a sweep
    verify   run a named verification suite and emit a JSON report
    evolve   tabulate mean radius against the speed bound along the radii
    profile  sample a radial mean profile with its derivatives
    check    gate one series file against the applicable bound
    sample   write a deterministic pseudo-random series to JSON

Exit codes: 0 pass, 1 usage error, 2 failed checks, 3 not applicable.
All floating-point output is written in round-trip precision, so re-reading
emitted JSON reproduces bit-identical values.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import sys
from pathlib import Path

from . import __version__
from .bounds import kalaj_bound, nitsche_bound, theorem_gate, weitsman_bound
from .errors import ToolkitError
from .means import initial_speed, quadratic_mean_profile, variance_profile
from .operators import lambda_from_speed
from .quadrature import QuadratureConfig
from .reports import DEFAULT_TOLERANCES, SUITES, run_suite
from .sampling import SamplerConfig, normalize_inner, random_series
from .series import extremal_map, load_series, save_series

EXIT_PASS = 0
EXIT_USAGE = 1
EXIT_FAIL = 2
EXIT_NOT_APPLICABLE = 3


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage failures exit with code 1."""

    def error(self, message: str):  # noqa: D102
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="annulus-harmonics",
                     description="Harmonic-annulus bounds and verification.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p: _Parser) -> None:
        p.add_argument("--out", type=Path, default=None,
                       help="write to this file instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    def add_quadrature(p: _Parser) -> None:
        p.add_argument("--angular-nodes", type=int, default=256)
        p.add_argument("--radial-nodes", type=int, default=64,
                       help="radial nodes per unit of log-radius")
        p.add_argument("--quad-config", type=Path, default=None,
                       help="JSON file with QuadratureConfig fields")

    p_bounds = sub.add_parser("bounds", help="lower bounds for one R or a sweep")
    p_bounds.add_argument("--R", type=float, default=None)
    p_bounds.add_argument("--R-min", type=float, default=None)
    p_bounds.add_argument("--R-max", type=float, default=None)
    p_bounds.add_argument("--steps", type=int, default=1)
    add_output(p_bounds)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=(*sorted(SUITES), "all"))
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trials", type=int, default=100)
    add_quadrature(p_verify)
    add_output(p_verify)
    for key in sorted(DEFAULT_TOLERANCES):
        p_verify.add_argument(
            f"--tol-{key.replace('_', '-')}", type=float, default=None,
            dest=f"tol_{key}", help=f"override tolerance {key!r}",
        )

    p_evolve = sub.add_parser("evolve",
                              help="mean radius vs. speed bound along radii")
    group = p_evolve.add_mutually_exclusive_group(required=True)
    group.add_argument("--series", type=Path, default=None)
    group.add_argument("--lambda", dest="lam", type=float, default=None)
    p_evolve.add_argument("--R", type=float, required=True)
    p_evolve.add_argument("--steps", type=int, default=50)
    p_evolve.add_argument("--out", type=Path, default=None,
                          help="write to this file instead of stdout")
    p_evolve.add_argument("--format", choices=("json", "csv"), default="csv")

    p_profile = sub.add_parser(
        "profile", help="sample a radial mean profile (value and derivatives)")
    pgroup = p_profile.add_mutually_exclusive_group(required=True)
    pgroup.add_argument("--series", type=Path, default=None)
    pgroup.add_argument("--lambda", dest="lam", type=float, default=None)
    p_profile.add_argument("--R", type=float, required=True)
    p_profile.add_argument("--steps", type=int, default=50)
    p_profile.add_argument("--variance", action="store_true",
                           help="sample the variance instead of the full mean")
    p_profile.add_argument("--out", type=Path, default=None,
                           help="write to this file instead of stdout")
    p_profile.add_argument("--format", choices=("json", "csv"), default="csv")

    p_check = sub.add_parser("check", help="gate a series file on A(1, R)")
    p_check.add_argument("--series", type=Path, required=True)
    p_check.add_argument("--R", type=float, required=True)
    p_check.add_argument("--out", type=Path, default=None,
                         help="write the JSON report here instead of stdout")

    p_sample = sub.add_parser("sample", help="write a pseudo-random series")
    p_sample.add_argument("--seed", type=int, required=True)
    p_sample.add_argument("--N", type=int, default=8)
    p_sample.add_argument("--decay", type=float, default=0.6)
    p_sample.add_argument("--out", type=Path, required=True)
    return parser


def _manifest(args: argparse.Namespace, tolerances: dict | None = None) -> dict:
    flags = {
        k: (str(v) if isinstance(v, Path) else v)
        for k, v in vars(args).items()
        if k != "command" and v is not None
    }
    return {
        "command": args.command,
        "flags": flags,
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "tolerances": tolerances or {},
    }


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _as_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def _as_csv(rows: list[dict], manifest: dict) -> str:
    lines = [f"# {k}: {json.dumps(v)}" for k, v in manifest.items()]
    if rows:
        cols = list(rows[0])
        lines.append(",".join(cols))
        for row in rows:
            lines.append(",".join(
                repr(v) if isinstance(v, float) else str(v) for v in
                (row[c] for c in cols)
            ))
    return "\n".join(lines) + "\n"


def _emit_rows(rows: list[dict], args: argparse.Namespace, manifest: dict,
               key: str = "rows") -> None:
    if args.format == "csv":
        _emit(_as_csv(rows, manifest), args.out)
    else:
        _emit(_as_json({"manifest": manifest, key: rows}), args.out)


def _quad_config(args: argparse.Namespace) -> QuadratureConfig:
    fields = {
        "angular_nodes": args.angular_nodes,
        "radial_nodes_per_unit": args.radial_nodes,
    }
    if args.quad_config is not None:
        fields.update(json.loads(args.quad_config.read_text(encoding="utf-8")))
    return QuadratureConfig(**fields)


def _cmd_bounds(args: argparse.Namespace) -> int:
    if args.R is not None:
        radii = [args.R]
    elif args.R_min is not None and args.R_max is not None:
        if args.steps < 1:
            print("error: --steps must be >= 1", file=sys.stderr)
            return EXIT_USAGE
        if args.steps == 1:
            radii = [args.R_min]
        else:
            span = (args.R_max - args.R_min) / (args.steps - 1)
            radii = [args.R_min + i * span for i in range(args.steps)]
    else:
        print("error: provide --R or both --R-min and --R-max", file=sys.stderr)
        return EXIT_USAGE
    if any(r <= 1.0 for r in radii):
        print("error: every R must exceed 1", file=sys.stderr)
        return EXIT_USAGE
    rows = [
        {
            "R": r,
            "modulus": math.log(r),
            "nitsche": nitsche_bound(r),
            "cosh_modulus": math.cosh(math.log(r)),
            "kalaj": kalaj_bound(r),
            "weitsman": weitsman_bound(r),
        }
        for r in radii
    ]
    _emit_rows(rows, args, _manifest(args))
    return EXIT_PASS


def _cmd_verify(args: argparse.Namespace) -> int:
    tolerances = dict(DEFAULT_TOLERANCES)
    for key in DEFAULT_TOLERANCES:
        override = getattr(args, f"tol_{key}", None)
        if override is not None:
            tolerances[key] = override
    cfg = _quad_config(args)
    checks = run_suite(args.suite, args.seed, args.trials, cfg, tolerances)
    payload = {
        "manifest": _manifest(args, tolerances),
        "suite": args.suite,
        "checks": [c.to_dict() for c in checks],
        "all_passed": all(c.passed for c in checks),
    }
    _emit(_as_json(payload), args.out)
    return EXIT_PASS if payload["all_passed"] else EXIT_FAIL


def _cmd_evolve(args: argparse.Namespace) -> int:
    if args.R <= 1.0:
        print("error: --R must exceed 1", file=sys.stderr)
        return EXIT_USAGE
    normalized = False
    if args.lam is not None:
        h = extremal_map(args.lam)
        lam = args.lam
    else:
        # the speed bound presumes the inner normalization, so series files
        # are normalized before tabulation (recorded in the manifest)
        h = normalize_inner(load_series(args.series))
        normalized = True
        speed = initial_speed(h)
        if speed < 0.0:
            print("not applicable: negative initial speed", file=sys.stderr)
            return EXIT_NOT_APPLICABLE
        lam = lambda_from_speed(speed)
    profile = quadratic_mean_profile(h)
    rows = []
    for i in range(1, args.steps + 1):
        rho = 1.0 + (args.R - 1.0) * i / args.steps
        measured = math.sqrt(float(profile.value(rho)))
        bound = (rho**2 + lam) / ((1.0 + lam) * rho)
        rows.append({
            "rho": rho,
            "mean_radius": measured,
            "bound": bound,
            "margin": measured - bound,
        })
    manifest = _manifest(args)
    manifest["lambda"] = lam
    manifest["normalized"] = normalized
    if args.format == "json":
        _emit_rows(rows, args, manifest)
    else:
        _emit(_as_csv(rows, manifest), args.out)
    return EXIT_PASS


def _cmd_profile(args: argparse.Namespace) -> int:
    if args.R <= 1.0:
        print("error: --R must exceed 1", file=sys.stderr)
        return EXIT_USAGE
    h = extremal_map(args.lam) if args.lam is not None else load_series(args.series)
    profile = variance_profile(h) if args.variance else quadratic_mean_profile(h)
    rows = []
    for i in range(args.steps + 1):
        rho = 1.0 + (args.R - 1.0) * i / args.steps
        rows.append({
            "rho": rho,
            "value": float(profile.value(rho)),
            "deriv1": float(profile.deriv1(rho)),
            "deriv2": float(profile.deriv2(rho)),
        })
    manifest = _manifest(args)
    manifest["profile"] = profile.label
    _emit_rows(rows, args, manifest)
    return EXIT_PASS


def _cmd_check(args: argparse.Namespace) -> int:
    report = theorem_gate(load_series(args.series), args.R)
    payload = {"manifest": _manifest(args), "report": report.to_dict()}
    _emit(_as_json(payload), args.out)
    if report.verdict == "pass":
        return EXIT_PASS
    if report.verdict == "fail":
        return EXIT_FAIL
    return EXIT_NOT_APPLICABLE


def _cmd_sample(args: argparse.Namespace) -> int:
    cfg = SamplerConfig(seed=args.seed, N=args.N, decay=args.decay)
    save_series(random_series(cfg), args.out)
    return EXIT_PASS


_COMMANDS = {
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
    "evolve": _cmd_evolve,
    "profile": _cmd_profile,
    "check": _cmd_check,
    "sample": _cmd_sample,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
