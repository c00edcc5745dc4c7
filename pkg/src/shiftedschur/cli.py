"""Command-line entry point: ``shiftedschur <subcommand> [flags]``.

Exit status: 0 success, 1 malformed flags, 2 invalid input or parameters,
3 failed numerical self-check or acceptance criterion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return v


def _emit(args, header: list[str], rows: list[list]) -> None:
    if args.format == "json":
        text = json.dumps([dict(zip(header, r)) for r in rows], indent=1) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows([[_fmt(v) for v in r] for r in rows])
        text = buf.getvalue()
    _write(args, text)


def _write(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad number list {text!r}") from exc


def _int_list(text: str) -> list[int]:
    """``1,3,5`` or ``2..6`` (inclusive) or a mix of both."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc
    return out


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    if step <= 0 or hi < lo:
        raise UsageError("need step > 0 and max >= min")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return lo + step * np.arange(n + 1)


def _params(args):
    from .miwa import MiwaParams, solve_minimal_multicritical

    if (args.p is None) == (args.t_file is None):
        raise UsageError("give exactly one of --p and --t-file")
    if args.p is not None:
        return solve_minimal_multicritical(args.p)
    try:
        return MiwaParams.from_json(Path(args.t_file).read_text())
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _order(args) -> int:
    if args.p is None:
        raise UsageError("--p is required")
    if args.p < 2 or args.p % 2:
        raise ValueError("p must be an even integer >= 2")
    return args.p


def _validated(args):
    from .miwa import validate

    params = _params(args)
    report = validate(params, p_hint=args.p)
    if not report.ok:
        raise ValueError(f"parameters fail the conditions: {report}")
    return params


def cmd_multicritical(args):
    from .miwa import solve_minimal_multicritical

    _write(args, solve_minimal_multicritical(_order(args)).to_json() + "\n")


def cmd_weights(args):
    from .partitions import enumerate_strict
    from .schur_q import partition_function, q_coefficients, schur_Q, _needed

    params = _params(args)
    lams = list(enumerate_strict(args.max_size))
    qs = q_coefficients(params, max(_needed(lam) for lam in lams))
    Z = partition_function(params)
    rows = []
    for lam in lams:
        Q = schur_Q(lam, qs)
        w = 2.0 ** -lam.length * Q * Q
        rows.append([";".join(map(str, lam.parts)), lam.length, lam.size, Q, w, w / Z])
    _emit(args, ["partition", "length", "size", "Q", "weight", "probability"], rows)


def cmd_jtable(args):
    from .kernel import table_for

    params = _params(args)
    if args.epsilon:
        params = params.scaled(1.0 / args.epsilon)
    table = table_for(params)
    top = table.bandwidth if args.mmax is None else args.mmax
    rows = [[m, table(m)] for m in range(-top, top + 1)]
    _emit(args, ["m", "J"], rows)


def cmd_kernel(args):
    from .kernel import kernel_K, table_for

    table = table_for(_params(args))
    pts = _int_list(args.points)
    _emit(args, ["a", "b", "K"], [[a, b, kernel_K(table, a, b)] for a in pts for b in pts])


def cmd_correlation(args):
    from .skew import correlation

    pts = _int_list(args.points)
    _emit(args, ["sites", "rho"], [[";".join(map(str, pts)), correlation(pts, _params(args))]])


def cmd_gap(args):
    from .skew import gap_probability

    sites = _int_list(args.interval)
    value = gap_probability(sites, _params(args), method=args.method)
    _emit(args, ["interval", "probability"], [[";".join(map(str, sites)), value]])


def cmd_limit_shape(args):
    from .limit_shape import shape_curve

    params = _validated(args)
    curve = shape_curve(params, args.xmax, args.grid)
    rows = [[x, o, d] for x, o, d in zip(curve.grid, curve.omega, curve.density)]
    _emit(args, ["x", "omega", "density"], rows)


def cmd_profile(args):
    from .limit_shape import expected_profile, limit_shape

    params = _validated(args)
    xs = np.linspace(0.0, args.xmax, args.grid)
    tol = 1e-12 if args.tol is None else args.tol
    rows = [[x, expected_profile(params, args.epsilon, x, tol), limit_shape(params, x)] for x in xs]
    _emit(args, ["x", "expected_profile", "omega"], rows)


def cmd_airy(args):
    from .airy import airy_derivative, airy_p

    p = _order(args)
    rows = [[x, airy_p(p, x), airy_derivative(p, x, 1)] for x in _grid(args.xmin, args.xmax, args.step)]
    _emit(args, ["x", "Ai_p", "dAi_p"], rows)


def cmd_tw(args):
    from .tracy_widom import tw_cdf

    p = _order(args)
    _emit(args, ["s", "F_p"], [[s, tw_cdf(p, s)] for s in _grid(args.smin, args.smax, args.step)])


def cmd_edge_converge(args):
    from .scaling import converge

    p = _order(args)
    eps = _float_list(args.eps) if args.eps else None
    try:
        pts = [tuple(float(v) for v in a.split(":")) for a in args.args.split(",") if a.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --args {args.args!r}") from exc
    report = converge(p, args.target, eps, pts)
    rows = [[args.target, p, e, a, v, lim, err] for e, a, v, lim, err in report.rows]
    _emit(args, ["target", "p", "epsilon", "arg", "finite_value", "limit_value", "abs_error"], rows)


def cmd_sample(args):
    from .partitions import sample

    draws = sample(_params(args), args.max_size, args.count, args.seed)
    _emit(args, ["draw", "partition"], [[i, ";".join(map(str, lam.parts))] for i, lam in enumerate(draws)])


def cmd_verify(args):
    from .acceptance import run

    results = run(args.suite)
    _write(args, "".join(r.line() + "\n" for r in results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--p", type=int)
    common.add_argument("--t-file")
    common.add_argument("--out")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--tol", type=float)
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="shiftedschur", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(fn=fn)
        return sp

    add("multicritical", cmd_multicritical, help="minimal p-multicritical parameters as JSON")
    sp = add("weights", cmd_weights, help="measure weights of all strict partitions up to a size")
    sp.add_argument("--max-size", type=int, default=10)
    sp = add("jtable", cmd_jtable, help="Fourier coefficients J(m)")
    sp.add_argument("--epsilon", type=float)
    sp.add_argument("--mmax", type=int)
    sp = add("kernel", cmd_kernel, help="kernel K(a, b) over a point list")
    sp.add_argument("--points", required=True)
    sp = add("correlation", cmd_correlation, help="correlation function of a site set")
    sp.add_argument("--points", required=True)
    sp = add("gap", cmd_gap, help="probability that no part lies in a set")
    sp.add_argument("--interval", required=True)
    sp.add_argument("--method", choices=("pfaffian", "inclusion-exclusion"), default="pfaffian")
    sp = add("limit-shape", cmd_limit_shape, help="limit shape and density on a grid")
    sp.add_argument("--grid", type=int, default=101)
    sp.add_argument("--xmax", type=float, default=4.0)
    sp = add("profile", cmd_profile, help="expected finite-epsilon profile")
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--grid", type=int, default=21)
    sp.add_argument("--xmax", type=float, default=4.0)
    sp = add("airy", cmd_airy, help="higher-order Airy function and derivative")
    sp.add_argument("--xmin", type=float, default=-6.0)
    sp.add_argument("--xmax", type=float, default=4.0)
    sp.add_argument("--step", type=float, default=0.05)
    sp = add("tw", cmd_tw, help="degree-p Tracy-Widom distribution")
    sp.add_argument("--smin", type=float, default=-6.0)
    sp.add_argument("--smax", type=float, default=4.0)
    sp.add_argument("--step", type=float, default=0.1)
    sp = add("edge-converge", cmd_edge_converge, help="finite-epsilon edge quantities against their limits")
    sp.add_argument("--target", choices=("j", "kernel", "pfdet", "tw"), default="j")
    sp.add_argument("--eps")
    sp.add_argument("--args", default="0")
    sp = add("sample", cmd_sample, help="exact samples by inverse transform")
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--max-size", type=int, default=40)
    sp = add("verify", cmd_verify, help="run the acceptance checks")
    sp.add_argument("--suite", choices=("quick", "full"), default="quick")
    return parser


LIST_FLAGS = ("--args", "--eps", "--points", "--interval")


def _attach_lists(argv: list[str]) -> list[str]:
    # list values may start with a minus sign, which argparse reads as a flag
    out, i = [], 0
    while i < len(argv):
        if argv[i] in LIST_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    from .kernel import ConsistencyError

    argv = _attach_lists(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
        if args.tol is not None and args.tol <= 0:
            raise UsageError("--tol must be positive")
        status = args.fn(args)
        return EXIT_OK if status is None else status
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConsistencyError, ArithmeticError, RuntimeError) as exc:
        print(f"numerical check failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
