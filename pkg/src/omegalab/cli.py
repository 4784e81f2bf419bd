"""Command-line front end.

Every subcommand builds a request model, runs the shared report builder and
prints the report as JSON (default) or CSV. Exit status: 0 when every check
passes, 1 when a check fails or a computation does not converge, 2 for usage
or domain errors.
"""

from __future__ import annotations

import argparse
import sys

from pydantic import ValidationError

from . import commands
from .errors import DomainError, OmegaLabError
from .models import (AsymptoticsRequest, DirichletRequest, EigenfunctionRequest, EvalOmegaRequest,
                     IntegralRequest, OneRadiusRequest, SweepRequest, TraceRequest, VerifyRequest)
from .report import emit_csv, emit_json

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

CSV_SCHEMAS = """\
CSV output (--csv):
  trace-curve    xi,zeta,W,I
  eigenfunction  r,phi_re,phi_im,error
  asymptotics    lambda,phi,leading,ratio,scaled_residual,error  (regime F_neg: s,ratio,error)
  dirichlet spectrum  j,lambda,b,eigenfunction
  sweep          index,value,status,error,<scalar outputs of the swept command>
  all others     name,passed,measured,tolerance  (one row per check)

Complex values are written like 0.8+0.4i. Values starting with '-' that are
not plain numbers need the --flag=value form, e.g. --mu=-1+2i.
"""


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("quadrature and reporting")
    g.add_argument("--rel-tol", type=float, help="relative quadrature tolerance (default 1e-12)")
    g.add_argument("--max-subdivisions", type=int, help="panel budget per integral (default 4000)")
    g.add_argument("--check-tol", type=float, help="override the tolerance of every check")
    g.add_argument("--csv", action="store_true", help="write CSV instead of JSON")
    g.add_argument("--timing", action="store_true",
                   help="report the measured wall time (otherwise 0, keeping output byte-stable)")


def _sphere(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--k", type=int, required=required, help="sphere dimension")
    p.add_argument("--R", type=float, required=required, metavar="RADIUS", help="sphere radius")
    p.add_argument("--r", type=float, required=required, metavar="DIST", help="distance of x from the origin")


def _hyperbolic(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, required=True, help="space dimension minus one")
    p.add_argument("--rho", type=float, help="curvature radius (default 1)")
    p.add_argument("--kappa", type=float, help="curvature -1/rho^2 (alternative to --rho)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omegalab",
        description="Numerical laboratory for the normalised Poisson kernel, its sphere integrals "
                    "and radial eigenfunctions of the hyperbolic Laplacian.",
        epilog=CSV_SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("eval-omega", help="kernel value, chords and Laplacian data")
    _sphere(p, required=False)
    p.add_argument("--theta", type=float, help="central angle in radians")
    p.add_argument("--psi", type=float, help="apex angle in radians (interior points)")
    p.add_argument("--x", type=float, nargs="+", help="evaluation point coordinates")
    p.add_argument("--y", type=float, nargs="+", help="pole coordinates")
    _common(p)

    p = sub.add_parser("integral", help="sphere integral of omega^alpha, optionally against a closed form")
    _sphere(p, required=False)
    p.add_argument("--alpha", default="0", help="complex exponent")
    p.add_argument("--derivative", action="store_true", help="integrate omega^alpha ln(omega) instead")
    p.add_argument("--closed-form", choices=["k2_oscillatory", "k2_log", "k1_ratio"])
    p.add_argument("--a", type=float, help="k1_ratio constant term")
    p.add_argument("--b", type=float, help="k2_oscillatory frequency or k1_ratio sine coefficient")
    p.add_argument("--p", help="k1_ratio exponent")
    _common(p)

    p = sub.add_parser("verify", help="identity suites on one sphere configuration")
    suites = p.add_subparsers(dest="suite", required=True, metavar="SUITE")
    for name, text in (("main-identity", "F(alpha) = F(k - alpha)"),
                       ("exchange", "swapping the roles of R and r"),
                       ("moments", "odd moments, imaginary parts, Taylor series, real-axis uniqueness"),
                       ("inequalities", "improved two-sided bounds for random alpha > k"),
                       ("potentials", "Newtonian and Poisson constants, mean value, ball solution")):
        s = suites.add_parser(name, help=text)
        _sphere(s)
        s.add_argument("--alphas", nargs="+", help="exponents for main-identity")
        s.add_argument("--m-max", type=int, help="highest moment order (default 7)")
        s.add_argument("--count", type=int, help="random draws for inequalities (default 20)")
        s.add_argument("--seed", type=int, help="random seed (default 0)")
        _common(s)

    p = sub.add_parser("eigenfunction", help="radial eigenfunction values, ODE residuals and zeros")
    _hyperbolic(p)
    p.add_argument("--lambda", dest="lam", help="eigenvalue (complex allowed)")
    p.add_argument("--alpha", help="exponent alpha")
    p.add_argument("--b", type=float, help="offset b with alpha = k/2 + i b")
    p.add_argument("--radii", type=float, nargs="+", help="hyperbolic radii (default 0.5 1 2)")
    p.add_argument("--rep", choices=["power", "cosine", "half_range", "explicit_k2"])
    p.add_argument("--compare", action="store_true", help="check agreement of all representations")
    p.add_argument("--zeros-r-max", type=float, help="scan zeros on (0, value]")
    p.add_argument("--zeros-step", type=float, help="scan step (default spacing/16)")
    _common(p)

    p = sub.add_parser("dirichlet", help="Dirichlet eigenvalues of geodesic disks")
    actions = p.add_subparsers(dest="action", required=True, metavar="ACTION")
    for name, text in (("bounds", "bounds for the smallest eigenvalue"),
                       ("spectrum", "exact spectrum for k = 2"),
                       ("lambda-min", "numerical smallest eigenvalue")):
        s = actions.add_parser(name, help=text)
        _hyperbolic(s)
        s.add_argument("--delta", type=float, help="disk radius")
        s.add_argument("--j-max", type=int, help="number of eigenvalues (spectrum)")
        s.add_argument("--tol", type=float, help="root tolerance (lambda-min)")
        s.add_argument("--n", type=int, help="space dimension for domain bounds")
        s.add_argument("--d1", type=float, help="inner disk diameter for domain bounds")
        s.add_argument("--d2", type=float, help="outer disk diameter for domain bounds")
        _common(s)

    p = sub.add_parser("one-radius", help="sampled gap between two radial eigenfunctions")
    _hyperbolic(p)
    p.add_argument("--mu", required=True, help="first eigenvalue")
    p.add_argument("--nu", required=True, help="second eigenvalue")
    p.add_argument("--samples", type=int, help="radii per interval (default 512)")
    _common(p)

    p = sub.add_parser("asymptotics", help="large-eigenvalue ratio scans")
    _hyperbolic(p)
    p.add_argument("--regime", required=True, choices=["lambda_neg", "lambda_pos", "F_neg"])
    p.add_argument("--grid", type=float, nargs="*", default=[], help="eigenvalues (or s for F_neg)")
    p.add_argument("--r", type=float, help="hyperbolic radius (default 1)")
    _common(p)

    p = sub.add_parser("trace-curve", help="trace a level curve of W")
    _sphere(p)
    p.add_argument("--seed", type=float, nargs=2, required=True, metavar=("XI", "ZETA"))
    p.add_argument("--p", type=float, help="strip half-width (default: largest allowed)")
    p.add_argument("--step", type=float, help="arc-length step (default p/16)")
    p.add_argument("--trace-tol", type=float, help="relative level tolerance (default 1e-10)")
    _common(p)

    p = sub.add_parser("sweep", help="run one command over a grid of values")
    p.add_argument("--op", required=True, choices=["integral", "eval-omega", "asymptotics", "lambda-min",
                                                   "one-radius"])
    p.add_argument("--param", required=True, help="field to vary (use lambda for asymptotics)")
    p.add_argument("--values", nargs="*", default=[], help="grid values")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="fixed field of the swept command (repeatable)")
    p.add_argument("--workers", type=int, help="threads (default 1)")
    p.add_argument("--csv", action="store_true", help="write CSV instead of JSON")
    p.add_argument("--timing", action="store_true", help="report the measured wall time")
    return parser


_SKIP = {"command", "suite", "action", "csv", "timing", "set"}


def _fields(args: argparse.Namespace) -> dict:
    return {k: v for k, v in vars(args).items() if k not in _SKIP and v is not None}


def _parse_set(items: list[str]) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise DomainError(f"--set expects KEY=VALUE, got {item!r}")
        out[key.replace("-", "_")] = value
    return out


def make_request(args: argparse.Namespace):
    """Translate parsed arguments into the matching request model."""
    f = _fields(args)
    cmd = args.command
    if cmd == "eval-omega":
        return EvalOmegaRequest(**{k: v for k, v in f.items() if k not in ("rel_tol", "max_subdivisions",
                                                                           "check_tol")})
    if cmd == "integral":
        return IntegralRequest(**f)
    if cmd == "verify":
        return VerifyRequest(suite=args.suite, **f)
    if cmd == "eigenfunction":
        return EigenfunctionRequest(**f)
    if cmd == "dirichlet":
        return DirichletRequest(action=args.action, **f)
    if cmd == "one-radius":
        return OneRadiusRequest(**f)
    if cmd == "asymptotics":
        return AsymptoticsRequest(**f)
    if cmd == "trace-curve":
        f["seed"] = tuple(f["seed"])
        return TraceRequest(**f)
    return SweepRequest(base=_parse_set(args.set), **f)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        req = make_request(args)
        report = commands.run(req)
    except ValidationError as exc:
        print(f"omegalab: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"omegalab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OmegaLabError as exc:
        print(f"omegalab: computation failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    sys.stdout.write(emit_csv(report) if args.csv else emit_json(report, timing=args.timing))
    return EXIT_OK if report.passed else EXIT_FAILED


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
