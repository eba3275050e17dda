"""Numerical harness for the structure of multiplicative functions in F(D; A).

The central quantity is the compensated prime sum

    psi(x) = sum_{p <= x} (f(p) + sum_{gamma in Gamma} p^{i gamma}) log p,

which is o(x) when Gamma is the multiset of 1-line zeros of L(s, f).  The
remaining checks probe the intermediate statements: lattice weights and the
multiplicity inequality, the hyperbola decomposition of f * tau_Gamma, the
nonnegativity behind the extremal case, Brun-Titchmarsh for Lambda_j, the
mean value of G_j and the coefficient bound for G_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .analytic import (
    GammaMultiset,
    SeriesEvaluationConfig,
    dirichlet_coefficients_G,
    eval_G_line,
)
from .core import (
    MultFnTable,
    RealMultiset,
    dirichlet_convolve,
    generalized_von_mangoldt,
    generalized_von_mangoldt_window,
    lambda_from_f,
    partial_sums,
    primes_upto,
    tau_multiset,
)
from .errors import CheckpointRangeError, RangeError
from .lattice import ANQuery, a_n_value

PSI_ZERO_TOL = 1e-10


def _gamma_pairs(gamma: GammaMultiset | RealMultiset | None, T: float) -> list[tuple[float, int]]:
    if gamma is None:
        return []
    return [(g, m) for g, m in gamma.entries if abs(g) <= T]


def compensated_prime_sums(
    table: MultFnTable,
    gamma: GammaMultiset | RealMultiset | None,
    T: float,
    checkpoints: Sequence[int],
) -> np.ndarray:
    """psi(x) at each checkpoint, using the zeros with |gamma| <= T."""
    xs = [int(x) for x in checkpoints]
    if any(x > table.N or x < 1 for x in xs):
        raise CheckpointRangeError(f"checkpoints must lie in [1, {table.N}]")
    ps, fp = table.prime_values(max(xs))
    logp = np.log(ps)
    terms = fp.astype(np.complex128)
    for g, m in _gamma_pairs(gamma, T):
        terms = terms + m * np.exp(1j * g * logp)
    cum = np.cumsum(terms * logp)
    pos = np.searchsorted(ps, xs, side="right")
    return np.array([cum[i - 1] if i else 0.0 for i in pos], dtype=np.complex128)


def compensated_prime_sum(table, gamma, T: float, x: int) -> complex:
    """psi(x) for a single x <= N."""
    return complex(compensated_prime_sums(table, gamma, T, [x])[0])


def _halves(values: np.ndarray) -> tuple[float, float]:
    h = len(values) // 2
    return float(np.max(values[:h])), float(np.max(values[-h:]))


def _decays(ratios: np.ndarray) -> bool:
    lo, hi = _halves(ratios)
    return bool(hi < lo or hi <= 1e-12)


def partial_sums_small(table: MultFnTable, checkpoints: Sequence[int]) -> bool:
    """Whether |S(x)|/x peaks lower over the top half of the checkpoints."""
    sums = partial_sums(table, checkpoints)
    return _decays(np.array([abs(p.S) / p.x for p in sums]))


def default_checkpoints(N: int, start: int = 1000) -> list[int]:
    """Powers of ten from ``start`` up to N, with N itself appended."""
    out = []
    x = start
    while x <= N:
        out.append(x)
        x *= 10
    if out and out[-1] != N:
        out.append(N)
    return out


@dataclass
class VerificationReport:
    """Outcome of the structure-theorem check for one function.

    ``criteria`` maps each named check to pass/fail; ``passed`` is their
    conjunction.
    """

    label: str
    D: int
    A: float
    K: float
    gamma: GammaMultiset | RealMultiset | None
    T: float
    checkpoints: list[int]
    psi: np.ndarray
    normalized: np.ndarray
    partial_sum_ratio: np.ndarray
    K_ratio: np.ndarray
    envelope_C: float
    criteria: dict[str, bool]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.criteria.values())

    @property
    def psi_zero(self) -> bool:
        return bool(np.all(np.abs(self.psi) <= PSI_ZERO_TOL * np.asarray(self.checkpoints)))

    def rows(self):
        for x, p, z in zip(self.checkpoints, self.psi, self.normalized):
            yield x, p.real, p.imag, z


def theorem_report(
    table: MultFnTable,
    D: int,
    A: float,
    gamma: GammaMultiset | RealMultiset | None,
    T: float,
    checkpoints: Sequence[int],
) -> VerificationReport:
    """Evaluate psi at the checkpoints and judge decay.

    The psi criterion passes when psi vanishes to 1e-10 x everywhere, or
    when the normalized values |psi(x)| sqrt(log x)/x peak lower over the top
    half of the checkpoints than over the bottom half.  A second criterion
    tests the hypothesis that partial sums of f are small, using the same
    half-against-half comparison on |S(x)|/x; failing it marks the function
    as outside the scope of the theorem.
    """
    xs = [int(x) for x in checkpoints]
    if len(xs) < 2:
        raise CheckpointRangeError("need at least two checkpoints")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise CheckpointRangeError("checkpoints must be strictly increasing")
    psi = compensated_prime_sums(table, gamma, T, xs)
    if not np.all(np.isfinite(psi)):
        raise ValueError("non-finite compensated sum")
    xa = np.asarray(xs, dtype=float)
    normalized = np.abs(psi) * np.sqrt(np.log(xa)) / xa
    sums = partial_sums(table, xs, A)
    S = np.array([abs(ps.S) for ps in sums])
    s_ratio = S / xa
    k_ratio = np.array([ps.normalized for ps in sums])

    u = xa / np.sqrt(np.log(xa))
    envelope = float(np.dot(np.abs(psi), u) / np.dot(u, u))

    notes = []
    zero = bool(np.all(np.abs(psi) <= PSI_ZERO_TOL * xa))
    lo, hi = _halves(normalized)
    decay = zero or hi < lo
    if zero:
        notes.append("psi vanishes identically at the checkpoints")
    else:
        notes.append(f"normalized psi: max bottom half {lo:.4g}, max top half {hi:.4g}")
    s_lo, s_hi = _halves(s_ratio)
    small_sums = _decays(s_ratio)
    if not small_sums:
        notes.append(
            "hypothesis violation: partial sums of f are not small "
            f"(|S(x)|/x max {s_lo:.4g} over the bottom half, {s_hi:.4g} over the top half)"
        )
    return VerificationReport(
        table.label,
        D,
        A,
        float(np.max(k_ratio)),
        gamma,
        T,
        xs,
        psi,
        normalized,
        s_ratio,
        k_ratio,
        envelope,
        {"small_partial_sums": small_sums, "psi_decay": decay},
        notes,
    )


# --------------------------------------------------------------------------
# multiplicity inequality


@dataclass
class MultiplicityRecord:
    lam: float
    lower_bound: float
    asymptotic_bound: float
    mertens_ratio: float
    weighted_sum: int
    D_times_A0: int
    inequality_holds: bool
    lower_bound_holds: bool


def multiplicity_inequality_check(
    table: MultFnTable,
    gamma: Sequence[tuple[float, int]],
    D: int,
    N: int,
    x: int,
    tol: float = 1e-9,
) -> MultiplicityRecord:
    """Compare lambda_N(x) with its lower bound and sum m_l A_N(gamma_l) with D A_N(0).

    lambda_N(x) = Re sum_{p <= x} f(p)/p |1 + sum_l p^{i gamma_l}|^{2N} / log log x.
    Since the finite prime sum of 1/p exceeds log log x by Mertens' constant,
    the lower bound -D A_N(0) is scaled by sum_{p<=x} 1/p / log log x and
    allowed 5% slack.
    """
    if x < 16:
        raise RangeError("x must be >= 16")
    if x > table.N:
        raise RangeError(f"x = {x} exceeds table range {table.N}")
    ps, fp = table.prime_values(x)
    logp = np.log(ps)
    ords = [float(g) for g, _ in gamma]
    w = np.ones(ps.size, dtype=np.complex128)
    for g in ords:
        w = w + np.exp(1j * g * logp)
    weight = np.abs(w) ** (2 * N)
    llx = math.log(math.log(x))
    lam = float(np.sum(fp * weight / ps).real) / llx
    if ords:
        A0 = a_n_value(ANQuery(tuple(ords), N, 0.0, tol))
        weighted = sum(m * a_n_value(ANQuery(tuple(ords), N, g, tol)) for g, m in gamma)
    else:
        A0, weighted = 1, 0
    mertens = float(np.sum(1.0 / ps)) / llx
    lower = -D * A0 * mertens * 1.05
    return MultiplicityRecord(
        lam, lower, -D * A0, mertens, weighted, D * A0, weighted <= D * A0, lam >= lower
    )


# --------------------------------------------------------------------------
# hyperbola method


@dataclass
class HyperbolaRecord:
    x: int
    z: float
    direct: complex
    hyperbola: complex

    @property
    def difference(self) -> float:
        return abs(self.direct - self.hyperbola)

    def agrees(self, rel: float = 1e-8) -> bool:
        return self.difference <= rel * max(abs(self.direct), 1.0)


def _fsum(values: np.ndarray) -> complex:
    # long sums of O(1) terms with heavy cancellation; keep them exact-ish
    return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))


def hyperbola_f_gamma_sums(
    table: MultFnTable, gamma_tilde: GammaMultiset | RealMultiset | None, x: int, z: float
) -> HyperbolaRecord:
    """sum_{n <= x} (f * tau_Gamma)(n) by direct sieving and by the hyperbola split.

    Raises:
        RangeError: z outside [2, sqrt(x)] or x beyond the table.
    """
    if x > table.N:
        raise RangeError(f"x = {x} exceeds table range {table.N}")
    if not 2 <= z <= math.sqrt(x):
        raise RangeError(f"z = {z} outside [2, sqrt(x)]")
    f = MultFnTable(table.values[: x + 1].copy(), table.D, table.label, table.source)
    pairs = [] if gamma_tilde is None else list(gamma_tilde.entries)
    if pairs:
        tau = tau_multiset(RealMultiset(tuple(pairs)), x)
    else:
        unit = np.zeros(x + 1, dtype=np.complex128)
        unit[1] = 1.0
        tau = MultFnTable(unit, 0, "identity")
    direct = _fsum(dirichlet_convolve(f, tau).values[1:])
    # prefix sums of tau_Gamma grow like x log x; extended precision keeps
    # their rounding below the cancellation in the split
    Sf = np.cumsum(f.values.astype(np.clongdouble))
    St = np.cumsum(tau.values.astype(np.clongdouble))
    zi = int(math.floor(z))
    a_max = x // zi if zi == z else int(math.floor(x / z))
    a = np.arange(1, a_max + 1)
    b = np.arange(1, zi + 1)
    terms = np.concatenate(
        [
            f.values[a] * St[x // a],
            tau.values[b] * (Sf[x // b] - Sf[int(math.floor(x / z))]),
        ]
    )
    return HyperbolaRecord(x, z, direct, _fsum(terms))


# --------------------------------------------------------------------------
# the extremal case G = tau_D * g


@dataclass
class SpecialCaseRecord:
    gamma: float
    D: int
    x: int
    min_lambda: float
    lambda_real: bool
    lambda_nonnegative: bool
    gg_sum: float
    gg_nonnegative: bool
    deviation: float
    deviation_normalized: float


def special_case_check(
    table: MultFnTable, gamma: float, D: int, x: int, A: float | None = None
) -> SpecialCaseRecord:
    """Quantities attached to G = tau_D * g with g(n) = f(n) n^{-i gamma}.

    On [1, min(x, 10^5)], Lambda of G * conj(G) is assembled factor by
    factor as 2 D Lambda + Lambda_g + Lambda_conj(g), each extracted from
    its own table (extracting it from the product table instead would cancel
    coefficients of size 10^9 at high powers of 2).  For f in F(D) it is real
    and non-negative, and then so are the coefficients of G * conj(G), whose
    partial sum is taken from the convolved table itself.  The
    deviation sum_{p <= x} |f(p) + D p^{i gamma}| log p is small exactly when
    f(p) sits near -D p^{i gamma}.
    """
    if x > table.N:
        raise RangeError(f"x = {x} exceeds table range {table.N}")
    A = float(D + 3) if A is None else A
    M = min(x, 10**5)
    n = np.arange(M + 1, dtype=float)
    n[0] = 1.0
    g = MultFnTable(table.values[: M + 1] * np.exp(-1j * gamma * np.log(n)), table.D, "g")
    G = dirichlet_convolve(tau_multiset(RealMultiset(((0.0, D),)), M), g)
    Gbar = MultFnTable(np.conj(G.values), G.D, "conj(G)")
    GG = dirichlet_convolve(G, Gbar)
    lam_g = lambda_from_f(g)
    idx = lam_g.index
    lam = 2 * D * np.log(idx.p) + lam_g.values + lambda_from_f(MultFnTable(np.conj(g.values), g.D, "conj(g)")).values
    real = lam.real
    scale = max(1.0, float(np.max(np.abs(real), initial=1.0)))
    imag = float(np.max(np.abs(lam.imag), initial=0.0))
    min_lam = float(np.min(real, initial=0.0))
    gg_sum = float(np.sum(GG.values[1:]).real)

    ps, fp = table.prime_values(x)
    lp = np.log(ps)
    dev = float(np.sum(np.abs(fp + D * np.exp(1j * gamma * lp)) * lp))
    norm = dev * math.log(x) ** ((A - 1 - D) / 2) / x
    return SpecialCaseRecord(
        gamma,
        D,
        x,
        min_lam,
        imag <= 1e-9 * scale,
        min_lam >= -1e-9 * scale,
        gg_sum,
        gg_sum >= -1e-9,
        dev,
        norm,
    )


# --------------------------------------------------------------------------
# Lambda_j in short intervals


@dataclass
class BrunTitchmarshRecord:
    j: int
    samples: list[tuple[int, int]]
    sums: list[float]
    ratios: list[float]

    @property
    def max_ratio(self) -> float:
        return max(self.ratios)


def brun_titchmarsh_check(j: int, samples: Sequence[tuple[int, int]]) -> BrunTitchmarshRecord:
    """sum_{x < n <= x + y} Lambda_j(n) / (y (log x)^(j-1)) for each (x, y).

    Raises:
        RangeError: j outside 1..4 or a sample with y outside [1, x].
    """
    if not 1 <= j <= 4:
        raise RangeError("j must lie in 1..4")
    sums, ratios = [], []
    for x, y in samples:
        if not 1 <= y <= x:
            raise RangeError(f"sample (x={x}, y={y}) needs 1 <= y <= x")
        total = float(np.sum(generalized_von_mangoldt_window(j, x + 1, x + y + 1)))
        sums.append(total)
        ratios.append(total / (y * math.log(x) ** (j - 1)))
    return BrunTitchmarshRecord(j, [tuple(s) for s in samples], sums, ratios)


# --------------------------------------------------------------------------
# mean value of G_j on vertical lines


@dataclass
class MeanValueRecord:
    j: int
    sigma: float
    X: float
    integral: float
    bound_shape: float
    quadrature_error: float
    probes: list[tuple[float, float]]

    @property
    def ratio(self) -> float:
        return self.integral / self.bound_shape

    @property
    def monotone(self) -> bool:
        vals = [v for _, v in self.probes]
        return all(b >= a for a, b in zip(vals, vals[1:]))


def _panel_edges(X: float, step: float, width0: float, centers: Sequence[float]) -> np.ndarray:
    """Edges on [0, X], geometrically graded towards the given centers."""
    edges = {0.0, X}
    for c in centers:
        if not 0 <= c <= X:
            continue
        for sign in (1, -1):
            t, w = c, width0
            while 0 <= t <= X and w < step:
                edges.add(t)
                t += sign * w
                w *= 1.5
    edges.update(np.arange(0.0, X, step).tolist())
    return np.array(sorted(edges))


def _gauss_integral(fun, edges: np.ndarray, order: int) -> np.ndarray:
    """Cumulative integrals of ``fun`` up to each edge (first entry 0)."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    a, b = edges[:-1], edges[1:]
    mid, half = (a + b) / 2, (b - a) / 2
    t = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    vals = fun(t).reshape(len(a), order)
    panel = half * (vals @ weights)
    return np.concatenate([[0.0], np.cumsum(panel)])


def mean_value_G(
    table: MultFnTable,
    j: int,
    sigma: float,
    X: float,
    step: float = 0.5,
    cfg: SeriesEvaluationConfig | None = None,
    probes: Sequence[float] | None = None,
    centers: Sequence[float] = (0.0,),
) -> MeanValueRecord:
    """int_{-X}^{X} |G_j(sigma + it)|^2 dt by panelled Gauss-Legendre quadrature.

    Panels have width at most ``step`` and shrink geometrically to
    (sigma - 1)/4 around each point in ``centers`` (the expected spikes of
    G_j).  The quadrature error is estimated by comparing 8- and 12-point
    rules on the same panels.  The integral is also recorded at the probe
    half-widths (default X/4, X/2, X) to expose monotonicity.
    """
    if not sigma - 1 >= 1e-3:
        raise ValueError("sigma - 1 must be >= 1e-3")
    if j < 1:
        raise ValueError("j must be >= 1")
    cfg = cfg or SeriesEvaluationConfig(truncation=min(table.N, 10**4))
    probes = sorted(probes) if probes is not None else [X / 4, X / 2, X]
    if probes[-1] != X:
        probes.append(X)
    width0 = (sigma - 1) / 4
    allc = sorted({abs(c) for c in centers} | set(centers))
    edges = np.array(sorted(set(_panel_edges(X, step, width0, [c for c in allc if c >= 0]).tolist()) | set(probes)))

    def integrand_pos(t):
        return np.abs(eval_G_line(table, j, sigma, t, cfg)) ** 2

    def integrand_neg(t):
        return np.abs(eval_G_line(table, j, sigma, -t, cfg)) ** 2

    def both(order):
        pos = _gauss_integral(integrand_pos, edges, order)
        if table.is_real():
            neg = pos
        else:
            negc = [-c for c in allc if c <= 0]
            e2 = np.array(sorted(set(_panel_edges(X, step, width0, negc).tolist()) | set(probes)))
            neg_full = _gauss_integral(integrand_neg, e2, order)
            neg = np.interp(edges, e2, neg_full)
        return pos + neg

    cum8 = both(8)
    cum12 = both(12)
    at = lambda cum, v: float(cum[int(np.searchsorted(edges, v))])
    integral = at(cum12, X)
    err = abs(integral - at(cum8, X))
    bound = X * math.log(X) ** (2 * j) + (1 / (sigma - 1)) ** (2 * j - 1)
    return MeanValueRecord(j, sigma, X, integral, bound, err, [(p, at(cum12, p)) for p in probes])


# --------------------------------------------------------------------------
# coefficients of G_j


@dataclass
class CoefficientBoundRecord:
    label: str
    D: int
    j: int
    N: int
    max_ratio: float
    argmax: int
    violations: list[int]

    @property
    def passed(self) -> bool:
        return not self.violations


def coefficient_bound_check(
    table: MultFnTable, D: int, j: int, N: int = 10**4, rel: float = 1e-9, floor: float = 1e-9
) -> CoefficientBoundRecord:
    """Test |g_j(n)| <= D^j Lambda_j(n) (1 + rel) + floor for n <= N.

    The absolute ``floor`` covers n with more than j distinct prime factors,
    where both sides vanish and the computed g_j(n) is rounding noise.
    """
    N = min(N, table.N)
    g = dirichlet_coefficients_G(table, j, N)
    bound = D**j * generalized_von_mangoldt(j, N)
    lhs = np.abs(g[1:])
    rhs = bound[1:] * (1 + rel) + floor
    viol = (np.flatnonzero(lhs > rhs) + 1).tolist()
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(bound[1:] > floor, lhs / bound[1:], 0.0)
    i = int(np.argmax(ratio))
    return CoefficientBoundRecord(table.label, D, j, N, float(ratio[i]), i + 1, viol)


def primes_count(x: int) -> int:
    return int(primes_upto(x).size)
