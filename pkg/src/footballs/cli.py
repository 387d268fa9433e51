"""Command-line entry point: ``footballs {point,mesh,verify,preset}``.

Exit codes: 0 success, 1 failed verification, 2 usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import branched as br
from . import geometry as geo
from . import mesh as msh
from .geometry import DomainError, FootballParams
from .presets import PRESETS, get_preset
from .verification import GridSpec, verify_all

log = logging.getLogger("footballs")


def _add_football_args(p: argparse.ArgumentParser, preset=True, branched=False):
    p.add_argument("--B", type=float, help="profile amplitude in (0, 1)")
    p.add_argument("--lambda", dest="lam", type=int, help="integer winding number")
    p.add_argument("--alpha", type=float, help="cone angle / 2pi (alternative to --lambda)")
    if branched:
        p.add_argument("--branched", action="store_true", help="use the branched cover z**alpha + b")
        p.add_argument("--b", type=float, help="real translation of the branched cover")
    if preset:
        p.add_argument("--preset", choices=sorted(PRESETS), help="named parameter set")


def _resolve_params(parser, args, allow_branched=False):
    preset = getattr(args, "preset", None)
    is_branched = getattr(args, "branched", False)
    b = getattr(args, "b", None)
    if preset is not None:
        if any(x is not None for x in (args.B, args.lam, args.alpha, b)) or is_branched:
            parser.error("--preset cannot be combined with explicit parameters")
        return get_preset(preset).params
    try:
        if is_branched:
            if not allow_branched:
                parser.error("--branched is not supported here")
            if args.alpha is None or args.B is not None or args.lam is not None:
                parser.error("--branched takes --alpha (integer) and optionally --b")
            if not float(args.alpha).is_integer():
                parser.error(f"branched alpha must be an integer, got {args.alpha}")
            return br.BranchParams(int(args.alpha), 0.0 if b is None else b)
        if b is not None:
            parser.error("--b requires --branched")
        if args.B is None:
            parser.error("--B is required (or use --preset)")
        if args.lam is not None and args.alpha is not None:
            parser.error("give either --lambda or --alpha, not both")
        if args.lam is not None:
            return FootballParams(args.B, args.lam)
        if args.alpha is not None:
            return FootballParams.from_alpha(args.alpha, args.B)
        parser.error("--lambda or --alpha is required")
    except DomainError as exc:
        parser.error(str(exc))


def cmd_point(parser, args) -> int:
    p = _resolve_params(parser, args)
    if (args.u is None) == (args.r is None):
        parser.error("give exactly one of --u or --r")
    try:
        if args.u is not None:
            pt = geo.immerse_geodesic(p, geo.GeodesicCoord(args.u, args.theta))
        else:
            pt = geo.immerse(p, geo.ConformalCoord(args.r, args.theta))
    except DomainError as exc:
        parser.error(str(exc))
    sys.stdout.write(",".join(msh.format_float(c) for c in pt) + "\n")
    return 0


def cmd_mesh(parser, args) -> int:
    p = _resolve_params(parser, args, allow_branched=True)
    try:
        cfg = msh.MeshConfig(args.nu, args.ntheta, not args.open, args.r_max)
    except DomainError as exc:
        parser.error(str(exc))
    if isinstance(p, FootballParams):
        m = msh.tessellate(p, cfg)
    else:
        m = msh.tessellate_branched(p, cfg)
    msh.save_mesh(m, args.out, args.format)
    nv, ne, nf, chi = msh.mesh_stats(m)
    log.info("wrote %s: V=%d E=%d F=%d chi=%d", args.out, nv, ne, nf, chi)
    return 0


def cmd_verify(parser, args) -> int:
    p = _resolve_params(parser, args, allow_branched=True)
    try:
        grid = GridSpec(args.nu, args.ntheta, args.h)
    except DomainError as exc:
        parser.error(str(exc))
    report = verify_all(p, grid, eps=args.eps)
    for c in report.checks:
        status = "PASS" if c.pass_ else "FAIL"
        print(f"{status}  {c.name:34s} measured={c.measured:.6g} expected={c.expected:.6g} tol={c.tolerance:.3g}")
    print("all_pass:", report.all_pass)
    if args.json:
        with open(args.json, "w", encoding="ascii", newline="\n") as f:
            f.write(report.to_json())
    return 0 if report.all_pass else 1


def cmd_preset(parser, args) -> int:
    if not args.list:
        parser.error("preset requires --list")
    for pr in PRESETS.values():
        print(pr.describe())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="footballs",
        description="K=1 surfaces with two cone points: points, meshes and checks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="evaluate the immersion at one point")
    _add_football_args(p, preset=False)
    p.add_argument("--u", type=float, help="geodesic coordinate in [0, pi]")
    p.add_argument("--r", type=float, help="modulus of z")
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(func=cmd_point, subparser=p)

    p = sub.add_parser("mesh", help="write a triangle mesh")
    _add_football_args(p, branched=True)
    p.add_argument("--nu", type=int, default=64)
    p.add_argument("--ntheta", type=int, default=128)
    p.add_argument("--open", action="store_true", help="omit the pole caps")
    p.add_argument("--r-max", type=float, default=10.0, help="outer radius of the branched chart")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=sorted(msh.WRITERS), default="obj")
    p.set_defaults(func=cmd_mesh, subparser=p)

    p = sub.add_parser("verify", help="run the numerical checks")
    _add_football_args(p, branched=True)
    p.add_argument("--h", type=float, default=1e-5, help="finite-difference step")
    p.add_argument("--eps", type=float, default=1e-2, help="cone-angle circle radius")
    p.add_argument("--nu", type=int, default=64)
    p.add_argument("--ntheta", type=int, default=64)
    p.add_argument("--json", help="write the report as JSON")
    p.set_defaults(func=cmd_verify, subparser=p)

    p = sub.add_parser("preset", help="list the named parameter sets")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_preset, subparser=p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return args.func(args.subparser, args)


if __name__ == "__main__":
    sys.exit(main())
