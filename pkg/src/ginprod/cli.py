"""Command-line interface: every command writes one or two CSV files.

Each file starts with ``#`` manifest lines (command, parameters, seed, tool
version, excluded samples), then a header row, then data.  Files are written
to a temporary name and renamed only after the whole command succeeded.

Exit codes: 0 success, 1 bad arguments, 2 numerical failure.
"""

import argparse
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .errors import NumericalError
from .exact import exact_report
from .ginibre import SimulationConfig, default_threads, run_simulation
from .stats import histogram_lambda, summarize_counts
from .theory import density_curve, theory_point

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _csv_text(command, params, seed, excluded, header, rows, notes=()):
    lines = [
        f"# command: {command}",
        "# parameters: " + " ".join(f"{k}={v}" for k, v in params.items()),
        f"# seed: {'' if seed is None else seed}",
        f"# tool_version: {__version__}",
        f"# excluded_samples: {excluded}",
    ]
    lines += [f"# {n}" for n in notes]
    lines.append(",".join(header))
    lines += [",".join(_fmt(v) if not isinstance(v, str) else v for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _write_all(outputs):
    # outputs: list of (path, text); all-or-nothing
    temps = []
    try:
        for path, text in outputs:
            folder = os.path.dirname(os.path.abspath(path))
            fd, tmp = tempfile.mkstemp(prefix=".ginprod-", suffix=".tmp", dir=folder)
            temps.append((tmp, path))
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        for tmp, path in temps:
            os.replace(tmp, path)
    except BaseException:
        for tmp, _ in temps:
            if os.path.exists(tmp):
                os.unlink(tmp)
        raise


def _positive(kind):
    def parse(text):
        try:
            value = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a valid {kind.__name__}: {text!r}")
        if not value > 0 or (kind is float and not math.isfinite(value)):
            raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
        return value
    return parse


def _nonnegative_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return value


def build_parser():
    p = _Parser(prog="ginprod", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"ginprod {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("theory", help="tabulate c, s, r on a log-spaced alpha grid")
    t.add_argument("--alpha-min", type=_positive(float), default=1e-2)
    t.add_argument("--alpha-max", type=_positive(float), default=1e2)
    t.add_argument("--steps", type=_positive(int), default=41)
    t.add_argument("--out", required=True)

    d = sub.add_parser("density", help="tabulate the limiting density of rescaled eigenvalues")
    d.add_argument("--alpha", type=_positive(float), required=True)
    d.add_argument("--grid-points", type=_positive(int), default=2001)
    d.add_argument("--out", required=True)

    e = sub.add_parser("exact", help="exact mean, variance and moments at finite N")
    e.add_argument("--n", type=_positive(int), required=True)
    e.add_argument("--m", type=_positive(int), required=True)
    e.add_argument("--max-moment", type=_nonnegative_int, default=0)
    e.add_argument("--out", required=True)

    for name, helptext in (("simulate", "Monte Carlo counts and lambda histogram"),
                           ("compare", "Monte Carlo against exact and limiting values")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--n", type=_positive(int), required=True)
        s.add_argument("--samples", type=_positive(int), default=200)
        s.add_argument("--seed", type=_nonnegative_int, default=0)
        s.add_argument("--threads", type=_positive(int), default=None)
        if name == "simulate":
            group = s.add_mutually_exclusive_group(required=True)
            group.add_argument("--alpha", type=_positive(float))
            group.add_argument("--m", type=_positive(int))
            s.add_argument("--bins", type=_positive(int), default=25)
            s.add_argument("--out-counts", required=True)
            s.add_argument("--out-hist", required=True)
        else:
            s.add_argument("--alpha", type=_positive(float), required=True)
            s.add_argument("--out", required=True)
    return p


def cmd_theory(args):
    if not args.alpha_min < args.alpha_max:
        raise UsageError("--alpha-min must be smaller than --alpha-max")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    grid = np.geomspace(args.alpha_min, args.alpha_max, args.steps)
    rows = []
    for a in grid:
        tp = theory_point(float(a))
        rows.append((tp.alpha, tp.c, tp.s, tp.r))
    params = {"alpha_min": args.alpha_min, "alpha_max": args.alpha_max, "steps": args.steps}
    text = _csv_text("theory", params, None, 0, ["alpha", "c", "s", "r"], rows)
    return [(args.out, text)]


def cmd_density(args):
    if args.grid_points < 3 or args.grid_points % 2 == 0:
        raise UsageError("--grid-points must be an odd integer >= 3")
    curve = density_curve(args.alpha, args.grid_points)
    rows = list(zip(curve.lambdas, curve.values))
    params = {"alpha": args.alpha, "grid_points": args.grid_points}
    notes = [f"trapezoid_mass: {curve.trapezoid_mass()!r}"]
    text = _csv_text("density", params, None, 0, ["lambda", "rho"], rows, notes)
    return [(args.out, text)]


def cmd_exact(args):
    if args.n % 2:
        raise UsageError("--n must be even")
    if args.max_moment % 2:
        raise UsageError("--max-moment must be even")
    rep = exact_report(args.n, args.m, args.max_moment)
    rows = [("E", rep.expected_count), ("V", rep.variance), ("V/E", rep.var_over_mean)]
    rows += [(f"M_{p}", v) for p, v in rep.moments]
    params = {"N": args.n, "m": args.m, "max_moment": args.max_moment}
    return [(args.out, _csv_text("exact", params, None, 0, ["quantity", "value"], rows))]


def _simulation(args, m):
    if args.n % 2:
        raise UsageError("--n must be even")
    config = SimulationConfig(N=args.n, m=m, samples=args.samples, seed=args.seed)
    threads = args.threads if args.threads is not None else default_threads()
    run = run_simulation(config, threads=threads)
    if run.excluded:
        first = run.failures[0]
        raise NumericalError(f"{run.excluded} sample(s) excluded after Schur failure: {first}")
    return config, run


def _realized_m(args):
    if getattr(args, "m", None) is not None:
        return args.m, {}
    m = max(1, int(round(args.alpha * args.n)))
    return m, {"alpha": args.alpha}


def cmd_simulate(args):
    m, extra = _realized_m(args)
    config, run = _simulation(args, m)
    params = {"N": config.N, **extra, "m": m, "samples": config.samples,
              "bins": args.bins, "method": config.resolved_method()}
    counts = _csv_text("simulate", params, config.seed, run.excluded, ["sample", "count"],
                       [(s.sample_index, s.count) for s in run],
                       ["variance convention: unbiased (divisor samples - 1)"])
    h = histogram_lambda(run, args.bins, -1.0, 1.0)
    hist_rows = [(lo, hi, int(c), d) for lo, hi, c, d in
                 zip(h.edges[:-1], h.edges[1:], h.counts, h.density)]
    hist = _csv_text("simulate", params, config.seed, run.excluded,
                     ["lambda_lo", "lambda_hi", "count", "density"], hist_rows,
                     [f"dropped_outside_range: {h.dropped}"])
    return [(args.out_counts, counts), (args.out_hist, hist)]


def cmd_compare(args):
    m, extra = _realized_m(args)
    config, run = _simulation(args, m)
    st = summarize_counts(run)
    rep = exact_report(config.N, m, 0)
    tp = theory_point(args.alpha)
    rows = [
        ("mc_mean", st.mean),
        ("mc_mean_se", st.std_error_mean),
        ("mc_var", st.variance),
        ("mc_var_over_mean", st.var_over_mean),
        ("mc_var_over_mean_se", st.var_over_mean_se),
        ("exact_E", rep.expected_count),
        ("exact_V", rep.variance),
        ("exact_V_over_E", rep.var_over_mean),
        ("theory_c", tp.c),
        ("theory_r", tp.r),
        ("z_mean", (st.mean - rep.expected_count) / st.std_error_mean),
        ("z_var_over_mean", (st.var_over_mean - rep.var_over_mean) / st.var_over_mean_se),
    ]
    params = {"N": config.N, **extra, "m": m, "samples": config.samples,
              "method": config.resolved_method()}
    text = _csv_text("compare", params, config.seed, run.excluded, ["quantity", "value"], rows,
                     ["variance convention: unbiased (divisor samples - 1)"])
    return [(args.out, text)]


COMMANDS = {
    "theory": cmd_theory,
    "density": cmd_density,
    "exact": cmd_exact,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        outputs = COMMANDS[args.command](args)
        _write_all(outputs)
    except (UsageError, ValueError) as exc:
        print(f"ginprod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"ginprod: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"ginprod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK
