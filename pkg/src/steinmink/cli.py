"""Command line front end.

Four subcommands cover the pipelines: `coeffs` emits the full coefficient
table of one body, `zeros` runs the root-location experiment, `converge`
profiles the distance to the limiting entire function, and `mc-validate`
compares polynomial values against the Monte Carlo volume oracle.

Exit codes are fixed so scripts can branch: 0 success, 2 usage error,
3 quadrature failure, 4 root-finder non-convergence, 5 validation failure.

All numbers serialize as decimal strings with 17 significant digits, which
round-trip doubles exactly; JSON field order is stable, CSV follows RFC 4180.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .angles import QuadratureConfig, QuadratureError
from .families import FamilyInstance, FamilyKind, intrinsic_volumes
from .limits import convergence_profile, profile_to_csv, profile_to_json_dict
from .mc import McConfig, table_to_csv, table_to_json_dict, validate_family
from .polynomials import minkowski_polynomial, renormalized_polynomial
from .zeros import (RootConfig, RootFindingError, classify_zeros, find_roots,
                    rootset_to_json_dict)

__all__ = ["RunConfig", "main", "cmd_coeffs", "cmd_zeros", "cmd_converge",
           "cmd_mc_validate"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_QUADRATURE = 3
EXIT_ROOTS = 4
EXIT_VALIDATION = 5

_UNITS_EPILOG = (
    "Units: --rho is the size parameter of the body, a length; --t is in the "
    "same length units as rho; the renormalized variable tau = sigma*t is "
    "dimensionless, so root locations and convergence radii carry no unit."
)


@dataclass(frozen=True)
class RunConfig:
    """Validated flag set for one command invocation."""

    family: FamilyKind
    dims: tuple
    rho: float = 1.0
    fmt: str = "json"
    out: str | None = None
    quad_tol: float | None = None
    radius: float = 1.0
    grid_samples: int = 256
    residual_tol: float | None = None
    max_iter: int | None = None
    imag_tol: float = 1e-8
    t_grid: tuple = ()
    samples: int = 1_000_000
    seed: int = 0
    chunk_size: int = 131072
    threshold: float = 4.0


def _parse_dims(text: str):
    """Dimension lists: entries separated by commas, each an integer or an
    inclusive range a..b (so `2..50` or `10,100,1000`)."""
    dims = []
    for entry in text.split(","):
        entry = entry.strip()
        if ".." in entry:
            lo_s, hi_s = entry.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError(f"empty dimension range {entry!r}")
            dims.extend(range(lo, hi + 1))
        elif entry:
            dims.append(int(entry))
    if not dims:
        raise ValueError(f"no dimensions in {text!r}")
    return tuple(dims)


def _parse_float_list(text: str):
    values = tuple(float(v) for v in text.split(",") if v.strip())
    if not values:
        raise ValueError(f"no values in {text!r}")
    return values


def _quad_config(cfg: RunConfig) -> QuadratureConfig:
    if cfg.quad_tol is None:
        return QuadratureConfig()
    return QuadratureConfig(abs_tol=cfg.quad_tol)


def _root_config(cfg: RunConfig) -> RootConfig:
    kwargs = {}
    if cfg.residual_tol is not None:
        kwargs["residual_tol"] = cfg.residual_tol
    if cfg.max_iter is not None:
        kwargs["max_iter"] = cfg.max_iter
    return RootConfig(**kwargs)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_coeffs(cfg: RunConfig):
    """Coefficient table m_l, W_l, V_l, c_l, mu_l for one body."""
    quad = _quad_config(cfg)
    instance = FamilyInstance(kind=cfg.family, n=cfg.dims[0], rho=cfg.rho)
    qv = intrinsic_volumes(instance, quad)
    mink = minkowski_polynomial(instance, quad)
    renorm = renormalized_polynomial(instance, quad)
    columns = {
        "m": mink.m,
        "W": qv.W,
        "V": qv.V,
        "c": renorm.c,
        "mu": renorm.mu,
    }
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["l", "m", "W", "V", "c", "mu"])
        for l in range(instance.n + 1):
            writer.writerow([l] + [_fmt(col[l]) for col in columns.values()])
        return EXIT_OK, buf.getvalue()
    out = {
        "kind": instance.kind.value,
        "n": instance.n,
        "rho": _fmt(instance.rho),
    }
    for name, col in columns.items():
        out[name] = [_fmt(v) for v in col]
    return EXIT_OK, _dump_json(out)


def cmd_zeros(cfg: RunConfig):
    """Root sets and location summary over a dimension list."""
    quad = _quad_config(cfg)
    root_cfg = _root_config(cfg)
    summary = []
    per_n = []
    for n in cfg.dims:
        instance = FamilyInstance(kind=cfg.family, n=n, rho=cfg.rho)
        poly = renormalized_polynomial(instance, quad)
        rs = find_roots(poly, root_cfg)
        report = classify_zeros(rs, cfg.imag_tol)
        summary.append((n, report))
        per_n.append((n, rs, report))
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "max_real_part", "all_negative_real"])
        for n, report in summary:
            writer.writerow([n, _fmt(report.max_real_part),
                             str(report.all_negative_real).lower()])
        return EXIT_OK, buf.getvalue()
    out = {
        "kind": cfg.family.value,
        "rho": _fmt(cfg.rho),
        "summary": [
            {
                "n": n,
                "max_real_part": _fmt(report.max_real_part),
                "all_negative_real": report.all_negative_real,
                "all_left_half_plane": report.all_left_half_plane,
                "max_abs_imag_among_roots": _fmt(report.max_abs_imag_among_roots),
            }
            for n, report in summary
        ],
        "root_sets": [
            dict(n=n, **rootset_to_json_dict(rs, report))
            for n, rs, report in per_n
        ],
    }
    return EXIT_OK, _dump_json(out)


def cmd_converge(cfg: RunConfig):
    """Sup-distance profile d_n on the circle |tau| = radius."""
    profile = convergence_profile(cfg.family, cfg.dims, cfg.radius,
                                  cfg.grid_samples, _quad_config(cfg))
    if cfg.fmt == "csv":
        return EXIT_OK, profile_to_csv(profile)
    return EXIT_OK, _dump_json(profile_to_json_dict(profile))


def cmd_mc_validate(cfg: RunConfig):
    """Polynomial versus Monte Carlo oracle on a t grid; exit 5 when any
    cell misses by more than the z threshold."""
    instance = FamilyInstance(kind=cfg.family, n=cfg.dims[0], rho=cfg.rho)
    mc_cfg = McConfig(samples=cfg.samples, seed=cfg.seed,
                      chunk_size=cfg.chunk_size)
    table = validate_family(instance, cfg.t_grid, mc_cfg, cfg.threshold)
    if cfg.fmt == "csv":
        text = table_to_csv(table)
    else:
        text = _dump_json(table_to_json_dict(table))
    return (EXIT_OK if table.passed else EXIT_VALIDATION), text


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinmink",
        description="Tube-volume polynomials of balls, cubes, cross-polytopes "
                    "and regular simplexes: coefficients, zeros, limits, and "
                    "Monte Carlo validation.",
        epilog=_UNITS_EPILOG,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--family", required=True,
                       help="ball | cube | crosspolytope | simplex")
        p.add_argument("--rho", type=float, default=1.0,
                       help="size parameter of the body, a length (default 1)")
        p.add_argument("--format", choices=("json", "csv"), default="json",
                       dest="fmt", help="output format (default json)")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="write output to PATH instead of stdout")
        p.add_argument("--quad-tol", type=float, default=None,
                       help="absolute tolerance for external-angle quadrature")
        return p

    p = sub.add_parser("coeffs", epilog=_UNITS_EPILOG,
                       help="emit the coefficient table of one body")
    common(p)
    p.add_argument("--dim", required=True, metavar="N", help="dimension n >= 1")

    p = sub.add_parser("zeros", epilog=_UNITS_EPILOG,
                       help="locate polynomial zeros over a dimension list")
    common(p)
    p.add_argument("--dim", required=True, metavar="N|A..B",
                   help="dimension, range a..b, or comma list")
    p.add_argument("--residual-tol", type=float, default=None,
                   help="relative residual certificate tolerance")
    p.add_argument("--max-iter", type=int, default=None,
                   help="maximum simultaneous-iteration sweeps")
    p.add_argument("--imag-tol", type=float, default=1e-8,
                   help="imaginary-part tolerance for calling a root real "
                        "(scaled by 1 + |root|)")

    p = sub.add_parser("converge", epilog=_UNITS_EPILOG,
                       help="distance to the limiting entire function")
    common(p)
    p.add_argument("--dims", required=True, metavar="LIST",
                   help="strictly increasing dimensions, e.g. 10,100,1000")
    p.add_argument("--radius", type=float, required=True,
                   help="radius of the tau circle (dimensionless)")
    p.add_argument("--grid-samples", type=int, default=256,
                   help="points on the circle (default 256)")

    p = sub.add_parser("mc-validate", epilog=_UNITS_EPILOG,
                       help="compare the polynomial with the MC volume oracle")
    common(p)
    p.add_argument("--dim", required=True, metavar="N", help="dimension n <= 6")
    p.add_argument("--t", required=True, metavar="LIST",
                   help="comma-separated t grid, same length units as rho")
    p.add_argument("--samples", type=int, default=1_000_000,
                   help="Monte Carlo samples per t (default 1000000)")
    p.add_argument("--seed", type=int, default=0,
                   help="64-bit RNG seed (default 0)")
    p.add_argument("--chunk-size", type=int, default=131072,
                   help="samples per RNG substream chunk (default 131072)")
    p.add_argument("--threshold", type=float, default=4.0,
                   help="|z| acceptance threshold (default 4)")
    return parser


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    family = FamilyKind.parse(ns.family)
    kwargs = dict(family=family, rho=ns.rho, fmt=ns.fmt, out=ns.out,
                  quad_tol=ns.quad_tol)
    if ns.command == "coeffs":
        kwargs["dims"] = _parse_dims(ns.dim)
        if len(kwargs["dims"]) != 1:
            raise ValueError("coeffs takes a single dimension")
    elif ns.command == "zeros":
        kwargs["dims"] = _parse_dims(ns.dim)
        kwargs.update(residual_tol=ns.residual_tol, max_iter=ns.max_iter,
                      imag_tol=ns.imag_tol)
    elif ns.command == "converge":
        kwargs["dims"] = _parse_dims(ns.dims)
        kwargs.update(radius=ns.radius, grid_samples=ns.grid_samples)
    else:
        kwargs["dims"] = _parse_dims(ns.dim)
        if len(kwargs["dims"]) != 1:
            raise ValueError("mc-validate takes a single dimension")
        kwargs.update(t_grid=_parse_float_list(ns.t), samples=ns.samples,
                      seed=ns.seed, chunk_size=ns.chunk_size,
                      threshold=ns.threshold)
    return RunConfig(**kwargs)


_COMMANDS = {
    "coeffs": cmd_coeffs,
    "zeros": cmd_zeros,
    "converge": cmd_converge,
    "mc-validate": cmd_mc_validate,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        cfg = _config_from_args(ns)
        code, text = _COMMANDS[ns.command](cfg)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except RootFindingError as exc:
        print(f"root finding failure: {exc}", file=sys.stderr)
        return EXIT_ROOTS
    if cfg.out is not None:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
