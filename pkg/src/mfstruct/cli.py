"""Command-line interface: ``mfstruct <subcommand> [options]``.

Exit status is 0 on success, 1 when a verification fails (or the function
is outside the class under test) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import io
from .analytic import SeriesEvaluationConfig, eval_L_derivatives, scan_zeros
from .catalog import default_catalog, describe, parse, register
from .config import RunConfig, merge, parse_config
from .core import (
    check_class_membership,
    generalized_von_mangoldt,
    generalized_von_mangoldt_recurrence,
    partial_sums,
)
from .errors import CatalogError, ClassViolationError, ConfigError, MFStructError
from .lattice import ANQuery, a_n_report
from .perron import PerronConfig, perron_check
from .pipeline import GammaMultiset, analyze, load_table, resolve_weight
from .verify import brun_titchmarsh_check, mean_value_G

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9.-]+", "_", text).strip("_")


def _int(text: str) -> int:
    v = float(text)
    if v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text}")
    return int(v)


def _gammas(text: str) -> GammaMultiset | None:
    """Parse ``"0:1,2:1"`` (ordinate:multiplicity) or ``none``."""
    if text.strip().lower() in ("", "none"):
        return None
    pairs = []
    for part in text.split(","):
        g, _, m = part.partition(":")
        pairs.append((float(g), int(m or 1)))
    return GammaMultiset.of(pairs, sum(m for _, m in pairs))


def _run_options(p: argparse.ArgumentParser, with_N: bool = True) -> None:
    g = p.add_argument_group("run configuration")
    g.add_argument("--config", help="key=value configuration file")
    if with_N:
        g.add_argument("--N", type=_int, help="sieve bound")
    g.add_argument("--T", type=float, help="zero-scan half-width")
    g.add_argument("--A", type=float, help="partial-sum exponent")
    g.add_argument("--K", type=float, help="partial-sum constant")
    g.add_argument("--checkpoints", help="comma-separated x values")
    g.add_argument("--grid-step", dest="grid_step", type=float)
    g.add_argument("--out", dest="output_dir", help="output directory")
    g.add_argument("--cache-dir", dest="cache_dir")
    g.add_argument("--workers", type=int)
    g.add_argument("--weight", choices=["sharp", "riesz", "auto"])
    g.add_argument("--no-cache", action="store_true", help="do not read or write the sieve cache")


def _config(args) -> RunConfig:
    base = parse_config(args.config) if getattr(args, "config", None) else RunConfig()
    keys = ("N", "T", "A", "K", "grid_step", "output_dir", "cache_dir", "workers", "weight")
    over = {k: getattr(args, k, None) for k in keys}
    if getattr(args, "checkpoints", None):
        over["checkpoints"] = [_int(v) for v in args.checkpoints.split(",")]
    return merge(base, over)


def _table(args, cfg: RunConfig, N: int | None = None):
    entry = parse(args.fn)
    return entry, load_table(entry, N or cfg.N, cfg.cache_dir, not args.no_cache)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mfstruct", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list catalog functions")
    p.add_argument("--check", action="store_true", help="confirm declared D at N = 10^5")

    p = sub.add_parser("sieve", help="sieve a function and summarize it")
    p.add_argument("--fn", required=True)
    p.add_argument("--csv", action="store_true", help="write n,re,im values")
    _run_options(p)

    p = sub.add_parser("eval", help="evaluate L^(j)(s, f)")
    p.add_argument("--fn", required=True)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--j", type=int, nargs="+", default=[0])
    p.add_argument("--truncation", type=_int)
    _run_options(p)

    p = sub.add_parser("find-zeros", help="scan the 1-line for zeros")
    p.add_argument("--fn", required=True)
    p.add_argument("--D", type=int)
    _run_options(p)

    p = sub.add_parser("verify", help="run the structure-theorem check")
    p.add_argument("--fn", required=True)
    p.add_argument("--D", type=int)
    p.add_argument("--gamma-source", choices=["auto", "scan"], default="auto")
    _run_options(p)

    p = sub.add_parser("an", help="lattice weight A_N(x)")
    p.add_argument("--gammas", required=True, help="comma-separated ordinates")
    p.add_argument("--N", type=int, required=True, help="power parameter")
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("lambda-j", help="generalized von Mangoldt values")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--N", type=_int, default=10**4)
    p.add_argument("--n", type=_int, nargs="*", help="print these values")
    p.add_argument("--check", action="store_true", help="compare with the recurrence")
    p.add_argument("--out", dest="output_dir", default=None)

    p = sub.add_parser("perron", help="smoothed Perron identity")
    p.add_argument("--fn", required=True)
    p.add_argument("--x", type=float, default=1e3)
    p.add_argument("--perron-T", dest="perron_T", type=float, default=1e3)
    p.add_argument("--gamma-tilde", default="none", help="e.g. 0:1,2:1")
    p.add_argument("--step", type=float)
    _run_options(p)

    p = sub.add_parser("bt-check", help="Lambda_j in short intervals")
    p.add_argument("--j", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--samples", default="100000:1000,1000000:10000,10000000:100000")
    p.add_argument("--limit", type=float, default=100.0)
    p.add_argument("--out", dest="output_dir", default=None)

    p = sub.add_parser("mean-value", help="mean square of G_j on a vertical line")
    p.add_argument("--fn", required=True)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--sigma", type=float, default=1.1)
    p.add_argument("--X", type=float, default=100.0)
    p.add_argument("--step", type=float, default=0.5)
    p.add_argument("--truncation", type=_int, default=10**4)
    p.add_argument("--tail-correction", choices=["none", "mean"], default=None)
    p.add_argument("--limit", type=float, default=100.0)
    _run_options(p)
    ap.set_defaults(subparsers=sub.choices)
    return ap


# --------------------------------------------------------------------------


def cmd_catalog(args) -> int:
    for entry in default_catalog():
        line = describe(entry)
        if args.check:
            register(entry.name)
            line += "  [D confirmed]"
        print(line)
    return OK


def cmd_sieve(args) -> int:
    cfg = _config(args)
    entry, table = _table(args, cfg)
    rep = check_class_membership(table, D=entry.D)
    S = partial_sums(table, [table.N])[0].S
    print(f"{entry.name}: N={table.N} D={entry.D} S(N)={S.real:.12g}{S.imag:+.12g}j")
    print(f"  max |Lambda_f|/log p = {rep.lambda_ratio:.6g} at {rep.lambda_argmax}")
    print(f"  max |f|/tau_D = {rep.tau_ratio:.6g} at {rep.tau_argmax}; member={rep.member}")
    if args.csv:
        path = Path(cfg.output_dir) / f"{_slug(entry.name)}_values.csv"
        v = table.values
        io.write_csv(path, ["n", "re", "im"], ((n, float(v[n].real), float(v[n].imag)) for n in range(1, table.N + 1)))
        print(f"  wrote {path}")
    return OK if rep.member else FAIL


def cmd_eval(args) -> int:
    cfg = _config(args)
    entry, table = _table(args, cfg)
    A = cfg.A or entry.A or entry.D + 3
    scfg = SeriesEvaluationConfig(
        A=A, K=cfg.K, truncation=args.truncation or table.N, weight=resolve_weight(cfg.weight, entry.D)
    )
    s = complex(args.sigma, args.t)
    for ev in eval_L_derivatives(table, args.j, s, scfg):
        print(
            f"L^({ev.j})({s.real:g}{s.imag:+g}i) = {ev.value.real:.12g}{ev.value.imag:+.12g}i"
            f"  tail_estimate={ev.tail_estimate:.3g} observed_tail={ev.observed_tail:.3g}"
            f" N={ev.truncation} K={ev.K:.4g} c_tail={ev.c_tail:g}"
        )
    return OK


def cmd_find_zeros(args) -> int:
    cfg = _config(args)
    entry, table = _table(args, cfg)
    D = args.D or entry.D
    A = cfg.A or entry.A or D + 3
    scfg = SeriesEvaluationConfig(A=A, K=cfg.K, truncation=table.N, weight=resolve_weight(cfg.weight, D))
    rep = scan_zeros(table, D, cfg.T, scfg, cfg.grid_step)
    out = Path(cfg.output_dir)
    slug = _slug(entry.name)
    io.write_csv(out / f"{slug}_scan.csv", ["gamma", "absL", "tail"], io.scan_grid_rows(rep))
    io.write_csv(out / f"{slug}_zeros.csv", io.zero_header(D), io.zero_rows(rep))
    for z in rep.zeros:
        print(f"zero gamma={z.gamma:.12g} mult={z.multiplicity} |L^(j)|={[f'{d:.3g}' for d in z.derivatives]}")
    for z in rep.unresolved:
        print(f"unresolved gamma={z.gamma:.12g} (no derivative up to order {D} above noise)")
    if not rep.zeros:
        print(f"no zeros on [-{cfg.T:g}, {cfg.T:g}]; min |L| = {rep.absL.min():.4g}")
    for note in rep.notes:
        print("note:", note)
    return OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    entry = parse(args.fn)
    an = analyze(
        entry,
        N=cfg.N,
        T=cfg.T,
        D=args.D,
        A=cfg.A,
        K=cfg.K,
        checkpoints=cfg.checkpoints or None,
        grid_step=cfg.grid_step,
        weight=cfg.weight,
        gamma_source=args.gamma_source,
        cache_dir=cfg.cache_dir,
        use_cache=not args.no_cache,
    )
    rep = an.report
    gamma = "{" + ", ".join(f"{g:.6g}:{m}" for g, m in an.used.entries) + "}"
    print(f"{entry.name}: D={an.D} A={an.A:g} N={an.table.N} T={cfg.T:g}")
    print(f"  Gamma = {gamma} (source: {an.gamma_source}; scan found {len(an.found.entries)} ordinate(s))")
    print(f"  K (max |S(x)|(log x)^A/x at checkpoints) = {rep.K:.4g}; envelope C = {rep.envelope_C:.4g}")
    for x, re_, im_, z in rep.rows():
        print(f"  x={x:<10d} psi={re_:+.6e}{im_:+.6e}i  normalized={z:.4e}")
    if rep.psi_zero:
        print("  psi == 0 at every checkpoint (to 1e-10 x)")
    for note in rep.notes + an.notes:
        print("  note:", note)
    for name, ok in rep.criteria.items():
        print(f"  {name}: {'PASS' if ok else 'FAIL'}")
    out = Path(cfg.output_dir)
    slug = _slug(entry.name)
    io.write_csv(out / f"{slug}_verify.csv", ["x", "psi_re", "psi_im", "normalized"], rep.rows())
    io.write_svg_plot(
        out / f"{slug}_verify.svg",
        {entry.name: (rep.checkpoints, list(rep.normalized))},
        f"compensated prime sum: {entry.name}",
        "x",
        "|psi(x)| sqrt(log x) / x",
    )
    print("VERIFY", "PASS" if rep.passed else "FAIL")
    return OK if rep.passed else FAIL


def cmd_an(args) -> int:
    gammas = tuple(float(v) for v in args.gammas.split(","))
    rep = a_n_report(ANQuery(gammas, args.N, args.x, args.tol))
    print(rep.value)
    print(f"A_N(0) = {rep.at_zero}; A_N(gamma_j) = {rep.at_gammas}")
    print(f"A_N(0) / ((k+1)^(2N) N^(-k/2)) = {rep.growth_ratio:.6g}")
    print(f"min_j A_N(gamma_j) / A_N(0) = {rep.min_gamma_ratio:.6g}")
    return OK


def cmd_lambda_j(args) -> int:
    vals = generalized_von_mangoldt(args.j, args.N)
    status = OK
    if args.n:
        for n in args.n:
            if not 1 <= n <= args.N:
                raise UsageError(f"n = {n} outside [1, {args.N}]")
            print(f"Lambda_{args.j}({n}) = {vals[n]:.15g}")
    if args.check:
        rec = generalized_von_mangoldt_recurrence(args.j, args.N)
        scale = np.maximum(np.abs(rec), 1.0)
        err = float(np.max(np.abs(vals - rec) / scale))
        neg = float(vals.min())
        print(f"max relative difference vs recurrence: {err:.3e}; min value {neg:.3e}")
        status = OK if err < 1e-6 and neg >= -1e-9 else FAIL
    if args.output_dir:
        path = Path(args.output_dir) / f"lambda_{args.j}.csv"
        io.write_csv(path, ["n", "lambda_j"], ((n, float(vals[n])) for n in range(1, args.N + 1)))
    return status


def cmd_perron(args) -> int:
    cfg = _config(args)
    entry = parse(args.fn)
    pc = PerronConfig(args.x, args.perron_T, step=args.step)
    table = load_table(entry, max(cfg.N if args.N else 0, pc.support_end), cfg.cache_dir, not args.no_cache)
    rec = perron_check(table, _gammas(args.gamma_tilde), pc)
    fields = [
        ("lhs", rec.lhs),
        ("rhs", rec.rhs),
        ("smoothing", rec.smoothing),
        ("prime_sum", rec.prime_sum),
        ("prime_power_part", rec.prime_power_part),
    ]
    for name, v in fields:
        print(f"{name:>17} = {v.real:+.10e}{v.imag:+.10e}i")
    print(f"|lhs - rhs| = {rec.identity_gap:.6g}; budget = {rec.budget:.6g}")
    print(f"|lhs - (rhs + smoothing)| = {rec.discrepancy:.3g}; step-halving shift = {rec.halving_shift:.3g}")
    print(f"T0 = {rec.T0:.6g}, c = {rec.c:.6g}, step = {rec.step:.4g}, t_max = {rec.t_max:.4g}")
    io.write_csv(
        Path(cfg.output_dir) / f"{_slug(entry.name)}_perron.csv",
        ["x", "T", "T0", "c", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "smoothing_re", "smoothing_im",
         "discrepancy", "budget", "halving_shift", "step", "t_max"],
        [[rec.x, rec.T, rec.T0, rec.c, rec.lhs.real, rec.lhs.imag, rec.rhs.real, rec.rhs.imag,
          rec.smoothing.real, rec.smoothing.imag, rec.discrepancy, rec.budget, rec.halving_shift,
          rec.step, rec.t_max]],
    )
    print("PERRON", "PASS" if rec.passed else "FAIL")
    return OK if rec.passed else FAIL


def cmd_bt_check(args) -> int:
    samples = []
    for part in args.samples.split(","):
        x, _, y = part.partition(":")
        samples.append((_int(x), _int(y)))
    rows, worst = [], 0.0
    for j in args.j:
        rec = brun_titchmarsh_check(j, samples)
        for (x, y), total, r in zip(rec.samples, rec.sums, rec.ratios):
            print(f"j={j} x={x} y={y} sum={total:.6g} ratio={r:.6g}")
            rows.append((j, x, y, total, r))
        worst = max(worst, rec.max_ratio)
    print(f"max ratio {worst:.6g} (limit {args.limit:g})")
    if args.output_dir:
        io.write_csv(Path(args.output_dir) / "bt_check.csv", ["j", "x", "y", "sum", "ratio"], rows)
    return OK if math.isfinite(worst) and worst < args.limit else FAIL


def cmd_mean_value(args) -> int:
    cfg = _config(args)
    entry, table = _table(args, cfg, max(args.truncation, 100))
    tc = args.tail_correction or ("mean" if entry.has_pole else "none")
    scfg = SeriesEvaluationConfig(A=cfg.A or entry.A or entry.D + 3, truncation=table.N, tail_correction=tc)
    rec = mean_value_G(table, args.j, args.sigma, args.X, args.step, scfg)
    print(f"integral = {rec.integral:.10g} (quadrature error ~ {rec.quadrature_error:.2g})")
    print(f"bound shape X (log X)^(2j) + (sigma-1)^-(2j-1) = {rec.bound_shape:.6g}; ratio = {rec.ratio:.6g}")
    for X, v in rec.probes:
        print(f"  X={X:g}: {v:.10g}")
    print(f"monotone in X: {rec.monotone}")
    io.write_csv(
        Path(cfg.output_dir) / f"{_slug(entry.name)}_mean_value_j{args.j}.csv",
        ["j", "sigma", "X", "integral", "bound_shape", "ratio", "quadrature_error"],
        [[rec.j, rec.sigma, X, v, rec.bound_shape, v / rec.bound_shape, rec.quadrature_error] for X, v in rec.probes],
    )
    return OK if rec.ratio < args.limit and rec.monotone else FAIL


COMMANDS = {
    "catalog": cmd_catalog,
    "sieve": cmd_sieve,
    "eval": cmd_eval,
    "find-zeros": cmd_find_zeros,
    "verify": cmd_verify,
    "an": cmd_an,
    "lambda-j": cmd_lambda_j,
    "perron": cmd_perron,
    "bt-check": cmd_bt_check,
    "mean-value": cmd_mean_value,
}


def run(argv: list[str] | None = None) -> int:
    """Parse ``argv`` and dispatch; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError, CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        args.subparsers[args.command].print_usage(sys.stderr)
        return USAGE
    except ClassViolationError as exc:
        print(f"FAIL [{exc.code}]: {exc}")
        return FAIL
    except MFStructError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
