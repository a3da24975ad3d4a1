"""Command-line front end.

Every subcommand parses its arguments, calls one library function and
formats the result. Exit codes: 0 success, 2 usage error, 3 numerical
failure, 4 golden-table mismatch (``tables --verify``).
"""
import argparse
from dataclasses import dataclass
import sys

import numpy as np

from . import _io, analysis, autocov, bilateral, gramians, onesided
from .exceptions import DomainError, FGNError

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_MISMATCH = 0, 2, 3, 4

HURST_HELP = (
    "Hurst index: a number, a comma list, or a grid 'a:b:h' meaning a, a+h, ... "
    "up to and including b when the last step lands within h/2 of b"
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    command: str
    hurst: tuple
    fmt: str
    raw: bool
    output: str


def parse_hurst(text):
    """Parse a Hurst specification into a tuple of floats."""
    vals = []
    try:
        for part in text.strip().split(","):
            if ":" not in part:
                vals.append(float(part))
                continue
            a, b, h = (float(p) for p in part.split(":"))
            if not h > 0 or b < a:
                raise UsageError(f"bad grid {part!r}: need step > 0 and stop >= start")
            count = int(np.floor((b - a) / h + 0.5)) + 1
            vals.extend(round(a + i * h, 12) for i in range(count))
    except ValueError:
        raise UsageError(f"cannot parse Hurst specification {text!r}") from None
    vals = tuple(vals)
    for v in vals:
        if not 0.0 < v < 1.0:
            raise UsageError(f"Hurst index {v} outside (0, 1)")
    return vals


class _Formatter:
    def __init__(self, raw):
        self.raw = raw

    def num(self, x):
        return _io.fmt_raw(float(x)) if self.raw else _io.fmt_short(float(x))

    def line(self, values):
        return ",".join(self.num(v) for v in values)


def _table(cfg, header, rows, meta=None):
    """Render rows in the configured format; plain mode drops the header."""
    if cfg.fmt == "json":
        return _io.format_json(meta or {"command": cfg.command},
                               [dict(zip(header, r)) for r in rows])
    f = _Formatter(cfg.raw)
    cells = [[c if isinstance(c, str) else (str(c) if isinstance(c, (int, np.integer)) else f.num(c))
              for c in r] for r in rows]
    if cfg.fmt == "csv":
        return _io.format_csv(header, cells)
    return "".join(",".join(c for c in r) + "\n" for r in cells)


def _with_hurst(cfg, header, per_h):
    """Prefix rows with H when several Hurst values were requested."""
    if len(cfg.hurst) == 1 and cfg.fmt == "plain":
        return _table(cfg, header, per_h[0][1])
    rows = [[h] + r for h, rs in per_h for r in rs]
    return _table(cfg, ["H"] + header, rows)


# ---------------------------------------------------------------- commands

def cmd_rho(cfg, args):
    per = [(h, [list(autocov.rho_prefix(h, args.max_lag).values)]) for h in cfg.hurst]
    return _with_hurst(cfg, [str(k) for k in range(args.max_lag + 1)], per)


def cmd_cholesky(cfg, args):
    (h,) = _single(cfg)
    tri = gramians.cholesky(gramians.build_gram(h, args.kind, args.n))
    if cfg.fmt == "json":
        rows = [list(tri.row(k)) for k in range(1, tri.size + 1)]
        return _io.format_json({"H": h, "kind": args.kind, "n": args.n}, rows)
    f = _Formatter(cfg.raw)
    return "".join(f.line(tri.row(k)) + "\n" for k in range(1, tri.size + 1))


def cmd_gamma(cfg, args):
    per = []
    for h in cfg.hurst:
        if args.method == "closed":
            if args.n != 4:
                raise UsageError("closed form exists only for n = 4 (middle coefficient)")
            per.append((h, [[onesided.gamma43_closed(h)]]))
            continue
        fn = onesided.gamma_recursive if args.method == "recursive" else onesided.gamma_solve
        per.append((h, [list(fn(h, args.n).gamma)]))
    header = ["3"] if args.method == "closed" else [str(k) for k in range(2, args.n + 1)]
    return _with_hurst(cfg, header, per)


def cmd_martingale(cfg, args):
    per = [(h, [list(onesided.martingale_coeffs(h, args.n, args.denominator).r)]) for h in cfg.hurst]
    return _with_hurst(cfg, [str(k) for k in range(2, args.n + 1)], per)


_Q_METHODS = {
    "solve": bilateral.q_solve,
    "recursive": bilateral.q_recursive,
    "closed": bilateral.q_closed_small,
    "cramer": bilateral.q_cramer,
}


def cmd_q(cfg, args):
    per = [(h, [list(_Q_METHODS[args.method](h, args.window).q)]) for h in cfg.hurst]
    return _with_hurst(cfg, [str(k) for k in range(1, args.window + 1)], per)


def cmd_norms(cfg, args):
    vals = [(h, onesided.norm_one_sided(h, args.n), bilateral.norm_bilateral(h, args.n))
            for h in cfg.hurst]
    if cfg.fmt == "plain" and len(vals) == 1:
        f = _Formatter(cfg.raw)
        return f"R1={f.num(vals[0][1])},R2={f.num(vals[0][2])}\n"
    return _table(cfg, ["H", "R1", "R2"], [list(v) for v in vals])


def cmd_determinants(cfg, args):
    if args.second_derivative_limit:
        f = _Formatter(cfg.raw)
        return f.num(bilateral.d32_second_derivative_limit()) + "\n"
    rows = []
    for h in cfg.hurst:
        d = bilateral.bilateral_determinants(h)
        rows.append([h, d.d3, d.d31, d.d32, d.d33])
    if cfg.fmt == "plain" and len(rows) == 1:
        f = _Formatter(cfg.raw)
        names = ("D3", "D31", "D32", "D33")
        return ",".join(f"{n}={f.num(v)}" for n, v in zip(names, rows[0][1:])) + "\n"
    return _table(cfg, ["H", "D3", "D31", "D32", "D33"], rows)


def cmd_conjectures(cfg, args):
    ids = tuple(args.ids.split(",")) if args.ids else analysis.CONJECTURE_IDS
    reports = analysis.check_conjectures(cfg.hurst, args.n, ids)
    header = ["id", "status", "checked", "min_margin", "violation_H", "violation_n",
              "violation_k", "violation_value", "failures", "observations"]
    rows = []
    for r in reports:
        v = r.first_violation
        rows.append([r.conjecture, r.status, r.checked, r.min_margin,
                     "" if v is None else v.hurst, "" if v is None else v.n,
                     "" if v is None else v.k, "" if v is None else v.value,
                     len(r.failures), len(r.observations)])
    if cfg.fmt == "plain":
        cfg = CliConfig(cfg.command, cfg.hurst, "csv", cfg.raw, cfg.output)
    return _table(cfg, header, rows)


def cmd_roots(cfg, args):
    windows = _int_list(args.window, analysis.ROOT_WINDOWS)
    res = [analysis.find_q2_root(j, args.tol) for j in windows]
    if cfg.fmt == "json":
        return _table(cfg, ["n", "root", "lo", "hi", "residual"],
                      [[r.window, r.root, r.lo, r.hi, r.residual] for r in res])
    fmt = _io.fmt_raw if cfg.raw else (lambda x: _io.fmt_fixed(x, 5))
    return _io.format_csv(["n", "root"], [[str(r.window), fmt(r.root)] for r in res])


def cmd_maxima(cfg, args):
    if args.window is None:
        pairs = [(2, 2), (3, 2), (3, 3)]
    else:
        if args.k is None:
            raise UsageError("--k is required with --window")
        pairs = [(int(args.window), args.k)]
    res = [analysis.find_max(j, k, args.tol) for j, k in pairs]
    rows = [[r.window, r.k, r.argmax, r.value] for r in res]
    if cfg.fmt == "plain":
        cfg = CliConfig(cfg.command, cfg.hurst, "csv", cfg.raw, cfg.output)
    return _table(cfg, ["j", "k", "argmax", "value"], rows)


def cmd_limits(cfg, args):
    windows = _int_list(args.window, (2, 3))
    res = [analysis.limit_at_one(j, args.k, args.order) for j in windows]
    rows = [[r.window, "sum" if r.k == 0 else str(r.k), r.value, r.uncertainty] for r in res]
    if cfg.fmt == "plain":
        cfg = CliConfig(cfg.command, cfg.hurst, "csv", True, cfg.output)
    return _table(cfg, ["j", "k", "limit", "uncertainty"], rows)


def cmd_tables(cfg, args):
    ids = [args.id] if args.id else list(analysis.TABLE_IDS)
    if args.verify:
        out, bad = [], 0
        for tid in ids:
            mism = analysis.verify_golden(tid)
            bad += len(mism)
            out.append(f"{tid}: {'ok' if not mism else f'{len(mism)} mismatches'}\n")
            for m in mism:
                out.append(f"  row {m.row} col {m.column}: golden {m.golden} computed {m.computed!r}\n")
        return "".join(out), (EXIT_MISMATCH if bad else EXIT_OK)
    fmt = "json" if cfg.fmt == "json" else "csv"
    return "".join(analysis.emit_tables(tid, fmt, cfg.raw) for tid in ids)


def cmd_figures(cfg, args):
    fmt = "json" if cfg.fmt == "json" else "csv"
    return analysis.emit_figure_data(args.id, fmt, args.points)


def cmd_mc_check(cfg, args):
    (h,) = _single(cfg)
    seeds = [int(s) for s in str(args.seed).split(",")]
    res = [analysis.mc_bilateral_check(h, args.n, args.count, s) for s in seeds]
    rows = [[r.seed, r.mean, r.expected, r.stderr, r.z, "pass" if r.passed else "fail"] for r in res]
    if cfg.fmt == "plain":
        cfg = CliConfig(cfg.command, cfg.hurst, "csv", cfg.raw, cfg.output)
    return _table(cfg, ["seed", "mean", "expected", "stderr", "z", "result"], rows)


def _single(cfg):
    if len(cfg.hurst) != 1:
        raise UsageError("this command takes a single Hurst index")
    return cfg.hurst


def _int_list(value, default):
    if value is None:
        return default
    try:
        return tuple(int(v) for v in str(value).split(","))
    except ValueError:
        raise UsageError(f"expected integers, got {value!r}") from None


COMMANDS = {
    "rho": cmd_rho, "cholesky": cmd_cholesky, "gamma": cmd_gamma, "martingale": cmd_martingale,
    "q": cmd_q, "norms": cmd_norms, "determinants": cmd_determinants,
    "conjectures": cmd_conjectures, "roots": cmd_roots, "maxima": cmd_maxima,
    "limits": cmd_limits, "tables": cmd_tables, "figures": cmd_figures, "mc-check": cmd_mc_check,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("plain", "csv", "json"), default="plain",
                        help="plain: bare comma-separated values (default); csv: with header row; json")
    common.add_argument("--raw", action="store_true", help="full precision instead of 6 decimals")
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")

    def hurst_opt(p, default=None):
        p.add_argument("--hurst", default=default, required=default is None, help=HURST_HELP)

    parser = argparse.ArgumentParser(prog="fgnproj", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rho", parents=[common], help="autocovariances rho_0..rho_m")
    hurst_opt(p)
    p.add_argument("--max-lag", type=int, required=True)

    p = sub.add_parser("cholesky", parents=[common], help="lower Cholesky triangle of a Gram matrix")
    hurst_opt(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("fbm", "fgn"), default="fgn")

    p = sub.add_parser("gamma", parents=[common], help="one-sided coefficients for k = 2..n")
    hurst_opt(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("solve", "recursive", "closed"), default="solve")

    p = sub.add_parser("martingale", parents=[common], help="coefficients on the innovations")
    hurst_opt(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--denominator", choices=("innovation", "shifted"), default="innovation")

    p = sub.add_parser("q", parents=[common], help="bilateral coefficients for k = 1..j")
    hurst_opt(p)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--method", choices=tuple(_Q_METHODS), default="solve")

    p = sub.add_parser("norms", parents=[common], help="projection norms R1(n), R2(n)")
    hurst_opt(p)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("determinants", parents=[common], help="window-3 determinant and numerators")
    hurst_opt(p, "0.9")
    p.add_argument("--second-derivative-limit", action="store_true",
                   help="print the limit of the second H-derivative of D32 at H = 1")

    p = sub.add_parser("conjectures", parents=[common], help="audit the conjectured inequalities")
    hurst_opt(p, "0.55:0.95:0.05,0.99")
    p.add_argument("--n", type=int, default=100, help="largest order examined")
    p.add_argument("--ids", default=None, help="comma list from " + ",".join(analysis.CONJECTURE_IDS))

    p = sub.add_parser("roots", parents=[common], help="zeros of H -> Q_j^2(H)")
    p.add_argument("--window", default=None, help="comma list of windows (default 3..10)")
    p.add_argument("--tol", type=float, default=1e-7)

    p = sub.add_parser("maxima", parents=[common], help="maximum of H -> Q_j^k(H)")
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("limits", parents=[common], help="extrapolated values at H = 1")
    p.add_argument("--window", default=None, help="comma list of windows (default 2,3)")
    p.add_argument("--k", type=int, default=None, help="coefficient index; omit for the row sum")
    p.add_argument("--order", type=int, default=6)

    p = sub.add_parser("tables", parents=[common], help="reproduce or verify the coefficient tables")
    p.add_argument("--id", choices=analysis.TABLE_IDS, default=None)
    p.add_argument("--verify", action="store_true", help="compare with bundled golden files")

    p = sub.add_parser("figures", parents=[common], help="series behind the figures")
    p.add_argument("--id", choices=analysis.FIGURE_IDS, required=True)
    p.add_argument("--points", type=int, default=analysis.GRID_POINTS)

    p = sub.add_parser("mc-check", parents=[common], help="Monte Carlo check of the bilateral norm")
    hurst_opt(p, "0.7")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--count", type=int, default=200_000)
    p.add_argument("--seed", default="20240611", help="seed or comma list of seeds")
    return parser


def run(argv=None, stdout=None, stderr=None):
    """Execute one command; returns the exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        hurst = parse_hurst(args.hurst) if getattr(args, "hurst", None) is not None else ()
        cfg = CliConfig(args.command, hurst, args.fmt, args.raw, args.output)
        result = COMMANDS[args.command](cfg, args)
    except (UsageError, DomainError) as exc:
        print(f"fgnproj {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    except (FGNError, np.linalg.LinAlgError) as exc:
        print(f"fgnproj {args.command}: numerical failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    if cfg.output:
        with open(cfg.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None):
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
