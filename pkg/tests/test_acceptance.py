"""Acceptance suite: twelve end-to-end checks at their stated tolerances.

Each ``check_*`` function returns ``(ok, detail)``; the pytest wrappers
record one line per criterion (printed in the terminal summary) and assert.
Running this file directly prints the same lines.
"""

import contextlib
import io
import math
import tempfile
import time
from functools import lru_cache

import numpy as np
import pytest

from mfstruct import cli
from mfstruct.catalog import DEFAULT_NAMES, parse
from mfstruct.core import (
    check_class_membership,
    dirichlet_convolve,
    dirichlet_inverse,
    generalized_von_mangoldt,
    generalized_von_mangoldt_recurrence,
    tau_table,
)
from mfstruct.analytic import SeriesEvaluationConfig
from mfstruct.errors import MembershipError, MultiplicityOverflowError
from mfstruct.lattice import ANQuery, a_n_closed_form_k1, a_n_value
from mfstruct.perron import PerronConfig, perron_check
from mfstruct.pipeline import analyze
from mfstruct.primes import factor_segment
from mfstruct.verify import (
    PSI_ZERO_TOL,
    brun_titchmarsh_check,
    coefficient_bound_check,
    hyperbola_f_gamma_sums,
    mean_value_G,
)

N_MAIN = 10**6
GAMMA_TOL = 1e-3


@lru_cache(maxsize=None)
def _analysis(expr, **kw):
    return analyze(expr, N=N_MAIN, T=5.0, use_cache=False, **kw)


def _psi_zero(report):
    xs = np.asarray(report.checkpoints, dtype=float)
    worst = float(np.max(np.abs(report.psi) / xs))
    return worst <= PSI_ZERO_TOL, worst


def check_1():
    t0 = time.perf_counter()
    an = analyze("moebius", N=N_MAIN, T=5.0, A=4.0, use_cache=False)
    elapsed = time.perf_counter() - t0
    (g, m), = an.found.entries or [(math.nan, 0)]
    zero, worst = _psi_zero(an.report)
    ok = len(an.found.entries) == 1 and m == 1 and abs(g) < GAMMA_TOL and zero and elapsed < 60
    return ok, f"moebius: Gamma={an.found.entries}, max|psi|/x={worst:.2e}, {elapsed:.1f}s"


def check_2():
    an = _analysis("twist(2)")
    entries = an.found.entries
    zero, worst = _psi_zero(an.report)
    ok = len(entries) == 1 and entries[0][1] == 1 and abs(entries[0][0] - 2) < GAMMA_TOL and zero
    return ok, f"moebius twisted by n^2i: Gamma={entries}, max|psi|/x={worst:.2e}"


def check_3():
    an = _analysis("moebius * twist(2)")
    entries = an.found.entries
    shape = (
        len(entries) == 2
        and [m for _, m in entries] == [1, 1]
        and abs(entries[0][0]) < GAMMA_TOL
        and abs(entries[1][0] - 2) < GAMMA_TOL
        and an.found.total == an.D == 2
    )
    worst = 0.0
    rng = np.random.default_rng(3)
    for x in (10, 97, 1000, 4321, 10**4, 65536, 10**5):
        for z in (2.0, math.sqrt(x), float(rng.uniform(2, math.sqrt(x)))):
            rec = hyperbola_f_gamma_sums(an.table, an.used, x, z)
            worst = max(worst, abs(rec.hyperbola - 1), abs(rec.direct - 1))
    ok = shape and worst <= 1e-9
    return ok, f"D=2 product: Gamma={entries}, total={an.found.total}, hyperbola max|sum-1|={worst:.1e}"


def check_4():
    try:
        analyze("tau(3)", N=10**5, T=5.0, D=2, use_cache=False)
    except (MembershipError, MultiplicityOverflowError) as exc:
        return True, f"tau_3 with D=2 rejected: {exc.code}"
    return False, "tau_3 with D=2 was accepted"


def check_5():
    cases = bad = 0
    for N in range(1, 7):
        for m in range(-N, N + 1):
            got = a_n_value(ANQuery((1.0,), N, float(m)))
            cases += 1
            bad += not (isinstance(got, int) and got == math.comb(2 * N, N - m) == a_n_closed_form_k1(N, m))
    return bad == 0, f"A_N for k=1, N<=6: {cases - bad}/{cases} exact"


def check_6():
    N = 10**4
    seg = factor_segment(1, N + 1)
    omega = np.concatenate([[0], seg.omega])
    worst, neg, support = 0.0, 0, 0
    for j in range(1, 5):
        a = generalized_von_mangoldt(j, N)
        b = generalized_von_mangoldt_recurrence(j, N)
        nz = b != 0
        worst = max(worst, float(np.max(np.abs(a[nz] - b[nz]) / np.abs(b[nz]))), float(np.max(np.abs(a[~nz]))))
        neg += int(np.sum(a < 0))
        support += int(np.sum(a[omega > j] != 0))
    ok = worst < 1e-6 and neg == 0 and support == 0
    return ok, f"Lambda_j routes: max rel err {worst:.1e}, negatives {neg}, off-support {support}"


def check_7():
    N = 10**5
    worst_e, worst_tau, failures = 0.0, 0.0, []
    for name in DEFAULT_NAMES:
        entry = parse(name)
        f = entry.table(N)
        e = dirichlet_convolve(f, dirichlet_inverse(f)).values
        err = max(abs(e[1] - 1), float(np.max(np.abs(e[2:]))))
        tau = tau_table(entry.D, N)
        excess = float(np.max(np.abs(f.values[1:]) / tau[1:]))
        worst_e, worst_tau = max(worst_e, err), max(worst_tau, excess)
        if err > 1e-9 or excess > 1 + 1e-12:
            failures.append(name)
    ok = not failures
    return ok, (
        f"{len(DEFAULT_NAMES)} entries: max|a*inv(a)-e|={worst_e:.1e}, max|f|/tau_D={worst_tau:.12g}"
        + (f", failing {failures}" if failures else "")
    )


def check_8():
    t0 = time.perf_counter()
    cfg = PerronConfig(x=1e3, T=1e3)
    table = parse("twist(2)").table(cfg.support_end)
    rec = perron_check(table, None, cfg)
    elapsed = time.perf_counter() - t0
    allowed = 10 * cfg.x * math.log(cfg.x) / cfg.T0 + rec.quadrature_error + rec.tail_bound
    ok = rec.identity_gap <= allowed and rec.halving_shift < 0.1 * allowed and elapsed < 300
    return ok, (
        f"Perron: |lhs-rhs|={rec.identity_gap:.1f} <= {allowed:.1f}, "
        f"halving shift {rec.halving_shift:.1e}, {elapsed:.1f}s"
    )


def check_9():
    samples = [(10**5, 10**3), (10**6, 10**4), (10**7, 10**5)]
    ratios = {j: brun_titchmarsh_check(j, samples).max_ratio for j in (1, 2, 3)}
    worst = max(ratios.values())
    ok = math.isfinite(worst) and worst < 100
    return ok, "short-interval ratios " + ", ".join(f"j={j}: {r:.3f}" for j, r in ratios.items())


def check_10():
    entry = parse("one")
    table = entry.table(10**4)
    cfg = SeriesEvaluationConfig(A=entry.D + 3, truncation=table.N, tail_correction="mean")
    parts, ok = [], True
    for j in (1, 2):
        for sigma in (1.01, 1.1):
            rec = mean_value_G(table, j, sigma, 100.0, cfg=cfg)
            ok &= rec.ratio < 100 and rec.monotone
            parts.append(f"j={j} s={sigma}: {rec.ratio:.3g}{'' if rec.monotone else ' (not monotone)'}")
    return ok, "mean-square ratios " + ", ".join(parts)


def check_11():
    parts, ok = [], True
    for name in ("moebius", "liouville", "tau(2)"):
        entry = parse(name)
        table = entry.table(10**4)
        worst = 0.0
        for j in (1, 2, 3):
            rec = coefficient_bound_check(table, entry.D, j, 10**4, rel=1e-9)
            ok &= rec.passed
            worst = max(worst, rec.max_ratio)
        parts.append(f"{name} {worst:.12g}")
    return ok, "max |g_j|/(D^j Lambda_j): " + ", ".join(parts)


def check_12():
    out = io.StringIO()
    with tempfile.TemporaryDirectory() as tmp, contextlib.redirect_stdout(out):
        rc = cli.run(["verify", "--fn", "one", "--D", "1", "--N", "100000", "--out", tmp, "--no-cache"])
    text = out.getvalue()
    diag = "hypothesis violation" in text
    return rc == 1 and diag, f"f=1: exit code {rc}, diagnostic {'present' if diag else 'missing'}"


CHECKS = {i: globals()[f"check_{i}"] for i in range(1, 13)}


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_acceptance(number, record_acceptance):
    ok, detail = CHECKS[number]()
    record_acceptance(number, ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


if __name__ == "__main__":
    for number, check in CHECKS.items():
        ok, detail = check()
        print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
