"""Command-line interface: ``stripbounds {bound,kernel,extremal,probe,verify,grid}``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import functools
import io
import json
import logging
import os
import sys

import numpy as np

from . import bounds, harness
from .config import DEFAULT_ORDER, Tolerances
from .errors import StripBoundsError
from .families import extremal_example
from .kernel import PairParams, StripParams, kernel_series

log = logging.getLogger("stripbounds")


def _common(p: argparse.ArgumentParser, *, delta=False, rho=False):
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=2.0)
    if delta:
        p.add_argument("--delta", type=float, default=0.0)
    if rho:
        p.add_argument("--rho", type=float, default=None)
    p.add_argument("--relaxed-domain", action="store_true", help="allow negative alpha/delta")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stripbounds", description=__doc__.splitlines()[0])
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser = functools.partial(sub.add_parser, parents=[shared])

    p = sub.add_parser("bound", help="table of coefficient bounds")
    _common(p, delta=True, rho=True)
    p.add_argument("--n", "--max-n", dest="max_n", type=int, default=10)

    for name, helptext in (("kernel", "strip kernel coefficients B_n"), ("extremal", "coefficients of the extremal example")):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        p.add_argument("--order", type=int, default=DEFAULT_ORDER)

    p = sub.add_parser("probe", help="randomized empirical test of the coefficient bounds")
    _common(p, delta=True, rho=True)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", "--max-n", dest="max_n", type=int, default=8)
    p.add_argument("--grid-radius", type=float, default=0.9)
    p.add_argument("--tol-margin", type=float, default=Tolerances.margin)
    p.add_argument("--tol-residual", type=float, default=Tolerances.residual)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("verify", help="run every invariant family")
    _common(p, delta=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200, help="random samples per family")
    p.add_argument("--tol-margin", type=float, default=Tolerances.margin)
    p.add_argument("--tol-residual", type=float, default=Tolerances.residual)

    p = sub.add_parser("grid", help="CSV image of a polar grid under the kernel")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--relaxed-domain", action="store_true")
    p.add_argument("--radii", type=int, default=20)
    p.add_argument("--rays", type=int, default=64)
    p.add_argument("--grid-radius", type=float, default=0.99)
    p.add_argument("--out", required=True)
    return parser


def _write(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows([[repr(v) if isinstance(v, float) else v for v in row] for row in rows])
    return buf.getvalue()


def _strip(args) -> StripParams:
    return StripParams(args.alpha, args.beta, relaxed=args.relaxed_domain)


def _pair(args) -> PairParams:
    rho = getattr(args, "rho", None)
    if rho is not None and rho < -1 + 1e-6:
        log.warning("rho=%g is close to -1; residual checks lose relative precision", rho)
    return PairParams(args.alpha, args.beta, args.delta, rho, relaxed=args.relaxed_domain)


def _tolerances(args) -> Tolerances:
    return Tolerances(margin=args.tol_margin, residual=args.tol_residual)


def cmd_bound(args) -> int:
    pp = _pair(args)
    rows = []
    for n in range(2, args.max_n + 1):
        row = {
            "n": n,
            "starlikeStrip": bounds.bound_starlike_strip(pp.delta, pp.beta, n),
            "sg": bounds.bound_sg(pp.alpha, pp.beta, pp.delta, n, relaxed=pp.relaxed),
        }
        if pp.rho is not None:
            row["bg"] = bounds.bound_bg(pp.alpha, pp.beta, pp.delta, pp.rho, n, relaxed=pp.relaxed)
        rows.append(row)
    if args.format == "csv":
        header = list(rows[0]) if rows else ["n"]
        _write(_csv(header, [[r[k] for k in header] for r in rows]), args.out)
    else:
        config = {"alpha": pp.alpha, "beta": pp.beta, "delta": pp.delta, "rho": pp.rho, "maxN": args.max_n}
        _write(_json({"schema": harness.SCHEMA_VERSION, "config": config, "bounds": rows}), args.out)
    return 0


def _dump_series(args, coeffs: np.ndarray, key: str) -> int:
    rows = [[n, float(c.real), float(c.imag), float(abs(c))] for n, c in enumerate(coeffs)]
    if args.format == "csv":
        _write(_csv(["n", "re", "im", "abs"], rows), args.out)
    else:
        config = {"alpha": args.alpha, "beta": args.beta, "order": args.order}
        body = [{"n": n, "re": re, "im": im, "abs": ab} for n, re, im, ab in rows]
        _write(_json({"schema": harness.SCHEMA_VERSION, "config": config, key: body}), args.out)
    return 0


def cmd_kernel(args) -> int:
    return _dump_series(args, kernel_series(_strip(args), args.order).coeffs, "coefficients")


def cmd_extremal(args) -> int:
    return _dump_series(args, extremal_example(_strip(args), args.order).series.coeffs, "coefficients")


def cmd_probe(args) -> int:
    cfg = harness.ProbeConfig(
        params=_pair(args),
        trials=args.trials,
        order=args.order,
        seed=args.seed,
        max_n=args.max_n,
        grid_radius=args.grid_radius,
        tolerances=_tolerances(args),
        threads=args.threads,
    )
    report = harness.probe_bounds(cfg)
    if args.format == "csv":
        header = ["family", "n", "empiricalMax", "theoreticalBound", "ratio", "argmaxTrial"]
        _write(_csv(header, [[r[k] for k in header] for r in report.per_n]), args.out)
    else:
        _write(_json(report.to_dict()), args.out)
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    cfg = harness.VerifyConfig(
        alpha=args.alpha,
        beta=args.beta,
        delta=args.delta,
        order=args.order,
        seed=args.seed,
        samples=args.trials,
        tolerances=_tolerances(args),
    )
    report = harness.verify_all(cfg)
    if args.format == "csv":
        header = ["name", "passed", "worst", "threshold"]
        _write(_csv(header, [[getattr(f, k) for k in header] for f in report.families]), args.out)
    else:
        _write(_json(report.to_dict()), args.out)
    for f in report.families:
        log.info("%-20s %s  worst=%.3g", f.name, "PASS" if f.passed else "FAIL", f.worst)
    return report.exit_code


def cmd_grid(args) -> int:
    n = harness.emit_grid(_strip(args), args.radii, args.rays, args.out, r_max=args.grid_radius)
    log.info("wrote %d rows to %s", n, args.out)
    return 0


COMMANDS = {
    "bound": cmd_bound,
    "kernel": cmd_kernel,
    "extremal": cmd_extremal,
    "probe": cmd_probe,
    "verify": cmd_verify,
    "grid": cmd_grid,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return 2
    except StripBoundsError as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
