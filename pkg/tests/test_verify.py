import math

import numpy as np
import pytest

from conftest import catalog_table
from mfstruct.analytic import GammaMultiset, SeriesEvaluationConfig
from mfstruct.catalog import DEFAULT_NAMES, parse
from mfstruct.core import MultFnTable, RealMultiset, generalized_von_mangoldt
from mfstruct.errors import CheckpointRangeError, RangeError
from mfstruct.lattice import ANQuery, a_n_value
from mfstruct.pipeline import analyze
from mfstruct.verify import (
    brun_titchmarsh_check,
    coefficient_bound_check,
    compensated_prime_sum,
    compensated_prime_sums,
    default_checkpoints,
    hyperbola_f_gamma_sums,
    mean_value_G,
    multiplicity_inequality_check,
    primes_count,
    special_case_check,
    theorem_report,
)

XS = [10**3, 10**4, 10**5, 10**6]


def G(pairs, D=None):
    return GammaMultiset.of(pairs, D if D is not None else max(1, sum(m for _, m in pairs)))


# ---------------------------------------------------------------- compensated sums


def test_moebius_compensated_sum_vanishes():
    mu = catalog_table("moebius", 10**6)
    for x in (2, 97, 10**6):
        assert compensated_prime_sum(mu, G([(0.0, 1)]), 5.0, x) == 0


@pytest.mark.parametrize("g0", [-3.0, -1.0, 0.0, 1.5, 2.0])
def test_exact_cancellation_family(g0):
    table = catalog_table(f"twist({g0})", 10**6)
    psi = compensated_prime_sums(table, G([(g0, 1)]), 5.0, XS)
    assert np.all(np.abs(psi) <= 1e-10 * np.array(XS))


def test_ordinates_beyond_T_are_ignored():
    table = catalog_table("twist(2)", 10**4)
    assert compensated_prime_sum(table, G([(2.0, 1)]), 1.0, 10**4) == compensated_prime_sum(table, None, 1.0, 10**4)


def test_compensated_sum_matches_direct_prime_loop():
    chi = catalog_table("kronecker(-4)", 10**4)
    ref = sum(chi[p] * math.log(p) for p in range(2, 10**4 + 1) if all(p % d for d in range(2, int(p**0.5) + 1)))
    assert compensated_prime_sum(chi, None, 5.0, 10**4) == pytest.approx(ref, rel=1e-12)
    assert primes_count(10**4) == 1229


def test_character_sum_envelope_shrinks():
    chi = catalog_table("kronecker(-4)", 10**6)
    psi = np.abs(compensated_prime_sums(chi, None, 5.0, XS)) / np.array(XS)
    assert psi[-1] < psi[0]
    assert psi[-1] < 1e-2


# ---------------------------------------------------------------- theorem report


def test_report_examples():
    mu = catalog_table("moebius", 10**6)
    good = theorem_report(mu, 1, 4, G([(0.0, 1)]), 5.0, XS)
    assert good.passed and good.psi_zero
    bad = theorem_report(mu, 1, 4, None, 5.0, XS)
    assert not bad.passed and not bad.criteria["psi_decay"]
    # psi(x) ~ -x when the zero is left out
    assert bad.psi[-1].real / XS[-1] == pytest.approx(-1, abs=0.01)
    one = theorem_report(catalog_table("one", 10**6), 1, 4, None, 5.0, XS)
    assert not one.passed
    assert not one.criteria["small_partial_sums"]
    assert any(n.startswith("hypothesis violation") for n in one.notes)


def test_report_rows_and_checkpoint_errors():
    mu = catalog_table("moebius", 10**4)
    rep = theorem_report(mu, 1, 4, G([(0.0, 1)]), 5.0, [10**3, 10**4])
    assert [r[0] for r in rep.rows()] == [10**3, 10**4]
    with pytest.raises(CheckpointRangeError):
        theorem_report(mu, 1, 4, None, 5.0, [10**4, 10**3])
    with pytest.raises(CheckpointRangeError):
        theorem_report(mu, 1, 4, None, 5.0, [10**3])
    assert default_checkpoints(10**6) == XS
    assert default_checkpoints(5 * 10**5) == [10**3, 10**4, 10**5, 5 * 10**5]


@pytest.mark.slow
@pytest.mark.parametrize(
    "expr", ["moebius", "liouville", "twist(2)", "kronecker(-4)", "kronecker(5)", "moebius * twist(2)"]
)
def test_monotone_envelope_to_ten_million(expr):
    entry = parse(expr)
    big = catalog_table(expr, 10**7)
    head = MultFnTable(big.values[: 10**6 + 1].copy(), big.D, big.label)
    # the zero scan runs at 10^6; closed-form ordinates replace the scanned
    # ones when they agree to 1e-3 (scan error would otherwise leak into psi)
    gamma = analyze(entry, table=head).used
    xs = [10**k for k in range(3, 8)]
    rep = theorem_report(big, entry.D, entry.D + 3, gamma, 5.0, xs)
    z = rep.normalized
    assert rep.psi_zero or max(z[3:]) <= max(z[:2])


# ---------------------------------------------------------------- multiplicity inequality


def test_multiplicity_inequality_moebius():
    mu = catalog_table("moebius", 10**6)
    rec = multiplicity_inequality_check(mu, [(0.0, 1)], 1, 2, 10**6)
    assert rec.D_times_A0 == 16 == rec.weighted_sum
    assert rec.inequality_holds
    # lambda = -16 * sum 1/p / loglog x exactly for f = mu
    assert rec.lam == pytest.approx(-16 * rec.mertens_ratio, rel=1e-12)
    assert rec.lam >= rec.lower_bound and rec.lower_bound_holds
    assert rec.mertens_ratio == pytest.approx(1.0996, abs=1e-3)


@pytest.mark.parametrize("expr", ["moebius", "liouville", "twist(2)", "kronecker(-4)", "moebius * twist(2)", "moebius * moebius"])
def test_lambda_lower_bound_across_catalog(expr):
    entry = parse(expr)
    table = catalog_table(expr, 10**6)
    pairs = list(entry.known_gamma.entries) or [(0.0, 1)]
    rec = multiplicity_inequality_check(table, pairs, entry.D, 2, 10**6)
    assert rec.lower_bound_holds


def test_weighted_sum_matches_lattice_values():
    table = catalog_table("moebius * twist(2)", 10**5)
    rec = multiplicity_inequality_check(table, [(0.0, 1), (2.0, 1)], 2, 2, 10**5)
    a0 = a_n_value(ANQuery((0.0, 2.0), 2, 0.0))
    assert rec.D_times_A0 == 2 * a0
    assert rec.weighted_sum == a0 + a_n_value(ANQuery((0.0, 2.0), 2, 2.0))
    assert rec.inequality_holds


def test_empty_gamma_and_range_errors():
    mu = catalog_table("moebius", 10**4)
    rec = multiplicity_inequality_check(mu, [], 1, 2, 10**4)
    assert rec.weighted_sum == 0
    with pytest.raises(RangeError):
        multiplicity_inequality_check(mu, [], 1, 2, 10)
    with pytest.raises(RangeError):
        multiplicity_inequality_check(mu, [], 1, 2, 10**5)


# ---------------------------------------------------------------- hyperbola


def test_hyperbola_examples():
    mu = catalog_table("moebius", 10**5)
    for x in (4, 10, 999, 10**5):
        rec = hyperbola_f_gamma_sums(mu, G([(0.0, 1)]), x, math.sqrt(x))
        assert abs(rec.direct - 1) < 1e-12 and abs(rec.hyperbola - 1) < 1e-12
    m10 = hyperbola_f_gamma_sums(mu, None, 10, 2.0)
    assert m10.direct == -1 and m10.hyperbola == -1
    prod = catalog_table("moebius * twist(2)", 10**5)
    rec = hyperbola_f_gamma_sums(prod, G([(0.0, 1), (2.0, 1)]), 10**5, 100.0)
    assert abs(rec.direct - 1) < 1e-9 and abs(rec.hyperbola - 1) < 1e-9


@pytest.mark.parametrize("expr", DEFAULT_NAMES)
def test_hyperbola_equivalence(expr):
    entry = parse(expr)
    table = catalog_table(expr, 10**5)
    gt = entry.known_gamma
    gamma = G(gt.entries, entry.D) if gt is not None and gt.entries else None
    for x in (10**3, 10**4, 10**5):
        for z in (10.0, math.sqrt(x)):
            assert hyperbola_f_gamma_sums(table, gamma, x, z).agrees(1e-8)


def test_hyperbola_range_errors():
    mu = catalog_table("moebius", 10**4)
    with pytest.raises(RangeError):
        hyperbola_f_gamma_sums(mu, None, 10**4, 1.5)
    with pytest.raises(RangeError):
        hyperbola_f_gamma_sums(mu, None, 10**4, 101.0)
    with pytest.raises(RangeError):
        hyperbola_f_gamma_sums(mu, None, 10**5, 10.0)


# ---------------------------------------------------------------- special case


def test_special_case_examples():
    mu = special_case_check(catalog_table("moebius", 10**6), 0.0, 1, 10**6)
    assert mu.deviation == 0 and mu.lambda_nonnegative and mu.gg_nonnegative
    mm = special_case_check(catalog_table("moebius * moebius", 10**6), 0.0, 2, 10**6)
    assert mm.deviation == 0
    one = catalog_table("one", 10**6)
    small, big = special_case_check(one, 0.0, 1, 10**4), special_case_check(one, 0.0, 1, 10**6)
    assert big.deviation / 10**6 == pytest.approx(2, abs=0.01)
    assert big.deviation_normalized > small.deviation_normalized


@pytest.mark.parametrize("expr", DEFAULT_NAMES)
def test_special_case_nonnegativity(expr):
    entry = parse(expr)
    table = catalog_table(expr, 10**5)
    for gamma in (0.0, 1.0, 2.0, -0.5):
        rec = special_case_check(table, gamma, entry.D, 10**5)
        assert rec.lambda_real and rec.lambda_nonnegative and rec.gg_nonnegative


# ---------------------------------------------------------------- short intervals


def test_brun_titchmarsh_examples():
    assert brun_titchmarsh_check(1, [(10**6, 10**4)]).ratios[0] == pytest.approx(1.0, abs=0.2)
    r2 = brun_titchmarsh_check(2, [(10**5, 10**3)]).max_ratio
    assert math.isfinite(r2) and r2 < 100
    full = brun_titchmarsh_check(1, [(10**5, 10**5)]).ratios[0]
    assert full == pytest.approx(1.0, abs=0.05)


def test_brun_titchmarsh_sum_matches_table():
    lam = generalized_von_mangoldt(2, 2000)
    rec = brun_titchmarsh_check(2, [(1000, 500)])
    assert rec.sums[0] == pytest.approx(float(np.sum(lam[1001:1501])), rel=1e-12)
    with pytest.raises(RangeError):
        brun_titchmarsh_check(5, [(1000, 10)])
    with pytest.raises(RangeError):
        brun_titchmarsh_check(1, [(1000, 2000)])


# ---------------------------------------------------------------- mean values


def test_mean_value_identity_is_zero():
    rec = mean_value_G(catalog_table("identity", 1000), 1, 1.1, 10.0, cfg=SeriesEvaluationConfig(truncation=1000))
    assert rec.integral == 0


def test_mean_value_constant_one():
    one = catalog_table("one", 10**4)
    cfg = SeriesEvaluationConfig(truncation=10**4, tail_correction="mean")
    rec = mean_value_G(one, 1, 1.1, 100.0, cfg=cfg)
    assert rec.ratio < 100 and rec.monotone
    assert rec.quadrature_error < 1e-6 * rec.integral


def test_mean_value_short_range_against_scipy():
    from scipy.integrate import quad

    from mfstruct.analytic import eval_G_line

    one = catalog_table("one", 10**4)
    cfg = SeriesEvaluationConfig(truncation=10**4, tail_correction="mean")
    rec = mean_value_G(one, 1, 1.5, 3.0, cfg=cfg)
    f = lambda t: abs(eval_G_line(one, 1, 1.5, np.array([t]), cfg)[0]) ** 2
    ref = 2 * quad(f, 0, 3, epsabs=1e-11, limit=200)[0]
    assert rec.integral == pytest.approx(ref, rel=1e-8)


# ---------------------------------------------------------------- G_j coefficients


@pytest.mark.parametrize("expr", ["moebius", "liouville", "tau(2)", "moebius * moebius", "twist(2)", "kronecker(-3)"])
def test_coefficient_bound(expr):
    entry = parse(expr)
    table = catalog_table(expr, 10**4)
    for j in (1, 2, 3):
        rec = coefficient_bound_check(table, entry.D, j)
        assert rec.passed and rec.max_ratio <= 1 + 1e-9


def test_coefficient_bound_detects_class_violation():
    tau3 = catalog_table("tau(3)", 10**4)
    assert not coefficient_bound_check(tau3, 2, 1).passed


def test_real_multiset_input_is_accepted():
    mu = catalog_table("moebius", 10**4)
    assert compensated_prime_sum(mu, RealMultiset(((0.0, 1),)), 5.0, 10**4) == 0
