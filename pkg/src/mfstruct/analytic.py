"""L(s, f) and its derivatives on Re(s) >= 1, and zeros on the 1-line.

Series are truncated Dirichlet sums

    L^(j)(s, f) ~ sum_{n <= N} f(n) (-log n)^j n^(-s) w(n/N),

with ``w = 1`` (sharp cutoff) or ``w(u) = (1 - u)^k`` (Riesz means).  Both
converge to the same limit on Re(s) >= 1 for functions with small partial
sums; the Riesz form converges much faster for functions whose Dirichlet
series continue a little past the line.

Every evaluation reports two error measures:

* ``tail_estimate``: c_tail K (1 + |s|) / (log N)^(A - j - 1), the shape of
  the partial-summation bound, with K the partial-sum constant of f;
* ``observed_tail``: |L_N - L_{N/10}|, the change over the last decade of
  terms.

Zero detection compares values against the observed tail, which tracks the
real truncation error; the bound-shaped estimate is reported alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .core import MultFnTable, RealMultiset, check_class_membership, primes_upto
from .errors import (
    DenominatorSmallError,
    DerivativeOrderError,
    InfeasibleError,
    MembershipError,
    MultiplicityOverflowError,
    NonzeroNotFoundError,
    TruncationExceedsTableError,
)

GOLDEN = (math.sqrt(5) - 1) / 2
ZERO_FACTOR = 5.0
ZERO_MEDIAN_FRACTION = 1e-3
DERIV_MEDIAN_FRACTION = 1e-2
ORDINATE_TOL = 1e-6


@dataclass(frozen=True)
class SeriesEvaluationConfig:
    """How to truncate and weight the Dirichlet series.

    ``K=None`` means: estimate from the table (:func:`estimate_K`).
    ``c_tail=None`` means the default 4 (A + D).
    ``tail_correction="mean"`` adds the contribution of n > N under the
    assumption that f has a constant mean value S(N)/N; it suits controls
    such as f = 1 away from s = 1 and is wrong for functions of mean zero.
    """

    A: float = 4.0
    K: float | None = None
    truncation: int = 10**6
    tail_mode: str = "FIXED_N"
    target_error: float | None = None
    c_tail: float | None = None
    weight: str = "sharp"
    riesz_order: int = 3
    tail_correction: str = "none"
    hard_cap: int = 10**8

    def __post_init__(self):
        if not self.A > 1:
            raise ValueError("A must exceed 1")
        if self.K is not None and not self.K > 0:
            raise ValueError("K must be positive")
        if self.truncation < 100:
            raise ValueError("truncation must be >= 100")
        if self.tail_mode not in ("FIXED_N", "TARGET_ERROR"):
            raise ValueError(f"unknown tail_mode {self.tail_mode!r}")
        if self.weight not in ("sharp", "riesz"):
            raise ValueError(f"unknown weight {self.weight!r}")
        if self.tail_correction not in ("none", "mean"):
            raise ValueError(f"unknown tail_correction {self.tail_correction!r}")
        if self.tail_correction == "mean" and self.weight != "sharp":
            raise ValueError("mean tail correction applies to sharp truncation only")

    def c_tail_for(self, D: int) -> float:
        return 4.0 * (self.A + D) if self.c_tail is None else self.c_tail


@dataclass(frozen=True)
class LEvaluation:
    s: complex
    j: int
    value: complex
    tail_estimate: float
    observed_tail: float
    truncation: int
    c_tail: float
    K: float


def estimate_K(table: MultFnTable, A: float, x_min: int = 3) -> float:
    """max_{x_min <= x <= N} |S(x)| (log x)^A / x over the sieved range."""
    if table.N < x_min:
        return 1.0
    S = np.abs(np.cumsum(table.values[1:]))[x_min - 1 :]
    x = np.arange(x_min, table.N + 1, dtype=float)
    return max(float(np.max(S * np.log(x) ** A / x)), 1e-12)


def resolve(cfg: SeriesEvaluationConfig, table: MultFnTable) -> SeriesEvaluationConfig:
    """Fill in K from the table when the caller left it open."""
    if cfg.K is None:
        cfg = replace(cfg, K=estimate_K(table, cfg.A))
    return cfg


def tail_estimate(cfg: SeriesEvaluationConfig, D: int, j: int, s: complex, N: int) -> float:
    K = cfg.K if cfg.K is not None else 1.0
    return cfg.c_tail_for(D) * K * (1 + abs(s)) / math.log(N) ** (cfg.A - j - 1)


def _check_order(cfg: SeriesEvaluationConfig, j: int) -> None:
    if j < 0 or j >= cfg.A - 1:
        raise DerivativeOrderError(f"derivative order {j} requires j < A - 1 = {cfg.A - 1:g}")


def _weights(M: int, cfg: SeriesEvaluationConfig) -> np.ndarray | None:
    if cfg.weight == "sharp":
        return None
    return (1.0 - np.arange(1, M + 1) / M) ** cfg.riesz_order


def _mean_tail(table: MultFnTable, j: int, s: complex, M: int) -> complex:
    """Tail of the series for f with constant mean value m = S(M)/M.

    Euler-Maclaurin to first order: m * int_M^inf (-log u)^j u^(-s) du minus
    half the last term m (-log M)^j M^(-s).
    """
    mean = complex(np.sum(table.values[1 : M + 1])) / M
    logm = math.log(M)
    z = (s - 1) * logm
    inc = sum(z**k / math.factorial(k) for k in range(j + 1)) * math.factorial(j)
    integral = (-1) ** j * np.exp(-z) * inc / (s - 1) ** (j + 1)
    return mean * (integral - 0.5 * (-logm) ** j * np.exp(-s * logm))


def _series(table: MultFnTable, js: Sequence[int], s: complex, M: int, cfg) -> np.ndarray:
    n = np.arange(1, M + 1, dtype=float)
    logn = np.log(n)
    base = table.values[1 : M + 1] * np.exp(-s * logn)
    w = _weights(M, cfg)
    if w is not None:
        base = base * w
    out = np.empty(len(js), dtype=np.complex128)
    for i, j in enumerate(js):
        out[i] = np.sum(base * (-logn) ** j) if j else np.sum(base)
        if cfg.tail_correction == "mean":
            out[i] += _mean_tail(table, j, s, M)
    return out


def eval_L_derivatives(
    table: MultFnTable, js: Sequence[int], s: complex, cfg: SeriesEvaluationConfig
) -> list[LEvaluation]:
    """Several derivative orders at one point, sharing the exponentials."""
    for j in js:
        _check_order(cfg, j)
    M = cfg.truncation
    if cfg.tail_mode == "TARGET_ERROR":
        if cfg.target_error is None:
            raise ValueError("TARGET_ERROR mode needs target_error")
        cfg = resolve(cfg, table)
        M = max(choose_truncation(cfg, j, s.imag, cfg.target_error, D=table.D) for j in js)
    if M > table.N:
        raise TruncationExceedsTableError(f"truncation {M} exceeds table range {table.N}")
    if s.real < 1:
        raise ValueError("evaluation requires Re(s) >= 1")
    cfg = resolve(cfg, table)
    vals = _series(table, js, s, M, cfg)
    small = _series(table, js, s, max(M // 10, 1), cfg)
    return [
        LEvaluation(
            s,
            j,
            complex(v),
            tail_estimate(cfg, table.D, j, s, M),
            float(abs(v - w)),
            M,
            cfg.c_tail_for(table.D),
            float(cfg.K),
        )
        for j, v, w in zip(js, vals, small)
    ]


def eval_L_derivative(
    table: MultFnTable, j: int, s: complex, cfg: SeriesEvaluationConfig
) -> LEvaluation:
    """L^(j)(s, f) by a truncated Dirichlet sum, with error diagnostics.

    Raises:
        DerivativeOrderError: j >= A - 1, where convergence on the line fails.
        TruncationExceedsTableError: the truncation point exceeds the table.
    """
    return eval_L_derivatives(table, [j], complex(s), cfg)[0]


def choose_truncation(
    cfg: SeriesEvaluationConfig, j: int, t: float, target_error: float, D: int = 1
) -> int:
    """Smallest power of ten N >= 100 whose bound-shaped tail is <= target_error.

    The tail uses ``1 + |t|`` for the size of s.
    """
    _check_order(cfg, j)
    if not target_error > 0:
        raise ValueError("target_error must be positive")
    K = cfg.K if cfg.K is not None else 1.0
    num = cfg.c_tail_for(D) * K * (1 + abs(t))
    if math.isinf(target_error) or num <= target_error:
        return 100
    # (log N)^(A - j - 1) >= num / target
    log_n = (num / target_error) ** (1.0 / (cfg.A - j - 1))
    exp10 = max(2, math.ceil(log_n / math.log(10) - 1e-12))
    N = 10**exp10
    if N > cfg.hard_cap:
        raise InfeasibleError(
            f"target {target_error:g} needs N = 10^{exp10} beyond cap {cfg.hard_cap:g}"
        )
    return N


# --------------------------------------------------------------------------
# grid evaluation along the 1-line


def _grid_sums(
    table: MultFnTable,
    js: Sequence[int],
    sigma: float,
    gammas: np.ndarray,
    M: int,
    cfg: SeriesEvaluationConfig,
    chunk: int = 1 << 15,
    block: int = 64,
) -> np.ndarray:
    """sum_{n<=M} f(n) w(n/M) (-log n)^j n^(-sigma - i gamma) on a uniform gamma grid.

    Phases advance by repeated multiplication within blocks of ``block`` grid
    points and are recomputed exactly at the start of each block.
    """
    G = len(gammas)
    out = np.zeros((G, len(js)), dtype=np.complex128)
    if G == 0:
        return out
    step = gammas[1] - gammas[0] if G > 1 else 0.0
    w_all = _weights(M, cfg)
    for lo in range(1, M + 1, chunk):
        hi = min(lo + chunk, M + 1)
        logn = np.log(np.arange(lo, hi, dtype=float))
        a = table.values[lo:hi] * np.exp(-sigma * logn)
        if w_all is not None:
            a = a * w_all[lo - 1 : hi - 1]
        W = np.stack([a * (-logn) ** j if j else a for j in js], axis=1)
        stepper = np.exp(-1j * step * logn)
        P = np.empty((block, hi - lo), dtype=np.complex128)
        for g0 in range(0, G, block):
            b = min(block, G - g0)
            P[0] = np.exp(-1j * gammas[g0] * logn)
            for r in range(1, b):
                np.multiply(P[r - 1], stepper, out=P[r])
            out[g0 : g0 + b] += P[:b] @ W
    if cfg.tail_correction == "mean":
        for gi, g in enumerate(gammas):
            for ji, j in enumerate(js):
                out[gi, ji] += _mean_tail(table, j, complex(sigma, g), M)
    return out


# --------------------------------------------------------------------------
# zeros on the 1-line


@dataclass(frozen=True)
class GammaMultiset:
    """Ordinates of zeros of L(s, f) on Re(s) = 1 with multiplicities."""

    entries: tuple[tuple[float, int], ...]
    D: int
    T: float
    scan: "ZeroScanReport | None" = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if any(m < 1 for _, m in self.entries):
            raise ValueError("multiplicities must be positive")
        if self.total > self.D:
            raise MultiplicityOverflowError(f"total multiplicity {self.total} exceeds D = {self.D}")

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def ordinates(self) -> list[float]:
        return [g for g, _ in self.entries]

    def as_multiset(self, T: float | None = None) -> RealMultiset:
        """The ordinates with |gamma| <= T (default: all) as a RealMultiset."""
        keep = [(g, m) for g, m in self.entries if T is None or abs(g) <= T]
        return RealMultiset(tuple(keep))

    @classmethod
    def of(cls, pairs, D: int, T: float = math.inf) -> "GammaMultiset":
        return cls(tuple(sorted((float(g), int(m)) for g, m in pairs)), D, T)


@dataclass(frozen=True)
class RefinedZero:
    gamma: float
    multiplicity: int
    derivatives: tuple[float, ...]
    thresholds: tuple[float, ...]
    candidate: float
    merged: bool = False


@dataclass
class ZeroScanReport:
    gammas: np.ndarray
    absL: np.ndarray
    tail: np.ndarray
    observed_tail: np.ndarray
    zero_threshold: np.ndarray
    candidates: list[float]
    refined: list[RefinedZero]
    medians: tuple[float, ...]
    config: SeriesEvaluationConfig
    D: int
    notes: list[str] = field(default_factory=list)

    @property
    def zeros(self) -> list[RefinedZero]:
        return [z for z in self.refined if z.multiplicity >= 1]

    @property
    def unresolved(self) -> list[RefinedZero]:
        """Candidates where no derivative up to order D rises above the noise.

        For f in F(D; A) this signals a zero of order > D; for functions whose
        series does not converge on the line it only reflects the noise.
        """
        return [z for z in self.refined if z.multiplicity < 0]


def _abs_L_line(table, gamma, cfg) -> float:
    return abs(_series(table, [0], complex(1.0, gamma), cfg.truncation, cfg)[0])


def golden_section_min(func, a: float, b: float, tol: float = ORDINATE_TOL) -> float:
    """Minimizer of a unimodal ``func`` on [a, b] to within ``tol``."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = func(c), func(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = func(d)
    return 0.5 * (a + b)


def _newton_polish(table, gamma, lo, hi, cfg, iters: int = 8) -> float:
    """Solve d|L(1+i gamma)|^2 / d gamma = 0 by Newton steps inside [lo, hi]."""
    for _ in range(iters):
        L0, L1, L2 = _series(table, [0, 1, 2], complex(1.0, gamma), cfg.truncation, cfg)
        # d/dgamma L(1 + i gamma) = i L'(s)
        h1 = 2 * (np.conj(L0) * 1j * L1).real
        h2 = 2 * (abs(L1) ** 2 - (np.conj(L0) * L2).real)
        if h2 <= 0:
            break
        step = h1 / h2
        new = gamma - step
        if not lo <= new <= hi:
            break
        if abs(L0) < _abs_L_line(table, new, cfg):
            break
        gamma = new
        if abs(step) <= 4e-16 * max(1.0, abs(gamma)):
            break
    return gamma


def _multiplicity(derivs, observed, medians, D) -> tuple[int, tuple[float, ...]]:
    thresholds = tuple(
        max(ZERO_FACTOR * o, DERIV_MEDIAN_FRACTION * med) for o, med in zip(observed, medians)
    )
    for j in range(D + 1):
        if derivs[j] > thresholds[j]:
            return j, thresholds
    return -1, thresholds


def _grid(T: float, step: float, center: float = 0.0) -> np.ndarray:
    count = int(round(2 * T / step))
    return center + np.linspace(-T, T, count + 1)


def _local_medians(table, gamma, D, cfg) -> tuple[float, ...]:
    grid = _grid(5.0, 0.05, gamma)
    vals = _grid_sums(table, list(range(D + 1)), 1.0, grid, cfg.truncation, cfg)
    return tuple(float(np.median(np.abs(vals[:, j]))) for j in range(D + 1))


def _derivs_at(table, gamma, D, cfg):
    M = cfg.truncation
    s = complex(1.0, gamma)
    big = _series(table, list(range(D + 1)), s, M, cfg)
    small = _series(table, list(range(D + 1)), s, max(M // 10, 1), cfg)
    return np.abs(big), np.abs(big - small)


def multiplicity_at(
    table: MultFnTable,
    gamma: float,
    D: int,
    cfg: SeriesEvaluationConfig,
    medians: Sequence[float] | None = None,
) -> int:
    """Order of vanishing of L(s, f) at 1 + i gamma, in [0, D].

    L^(j) counts as zero when below max(5 * observed tail, 1e-2 * median of
    |L^(j)| along the line); ``medians`` defaults to a grid of half-width 5
    around gamma.

    Raises:
        DerivativeOrderError: some order j <= D has j >= A - 1.
        NonzeroNotFoundError: L, L', ..., L^(D) all count as zero.
    """
    for j in range(D + 1):
        _check_order(cfg, j)
    cfg = resolve(cfg, table)
    if cfg.truncation > table.N:
        raise TruncationExceedsTableError(f"truncation {cfg.truncation} exceeds {table.N}")
    if medians is None:
        medians = _local_medians(table, gamma, D, cfg)
    derivs, observed = _derivs_at(table, gamma, D, cfg)
    m, thr = _multiplicity(derivs, observed, medians, D)
    if m < 0:
        raise NonzeroNotFoundError(
            f"L^(0..{D}) all below threshold at gamma={gamma:.9g}: |L^(j)|={list(np.round(derivs, 8))},"
            f" thresholds={list(np.round(thr, 8))}"
        )
    return m


def scan_zeros(
    table: MultFnTable,
    D: int,
    T: float,
    cfg: SeriesEvaluationConfig,
    grid_step: float = 1e-2,
    tol: float = ORDINATE_TOL,
) -> ZeroScanReport:
    """Locate zeros of L(s, f) on the segment [1 - iT, 1 + iT].

    |L(1 + i gamma)| is tabulated on a uniform grid; local minima below
    max(5 * observed tail, 1e-3 * median |L|) are refined by golden-section
    search on the two adjacent grid cells, polished by Newton's method on the
    stationarity condition of |L|^2, and assigned a multiplicity.  Refined
    points closer than 10 * tol are merged and the merge is noted.
    """
    if not grid_step > 0 or T < grid_step:
        raise ValueError("need grid_step > 0 and T >= grid_step")
    for j in range(D + 1):
        _check_order(cfg, j)
    cfg = resolve(cfg, table)
    M = cfg.truncation
    if M > table.N:
        raise TruncationExceedsTableError(f"truncation {M} exceeds table range {table.N}")
    gammas = _grid(T, grid_step)
    js = list(range(D + 1))
    big = _grid_sums(table, js, 1.0, gammas, M, cfg)
    small = _grid_sums(table, [0], 1.0, gammas, max(M // 10, 1), cfg)
    absL = np.abs(big[:, 0])
    observed = np.abs(big[:, 0] - small[:, 0])
    tails = np.array([tail_estimate(cfg, table.D, 0, complex(1, g), M) for g in gammas])
    medians = tuple(float(np.median(np.abs(big[:, j]))) for j in js)
    zero_thr = np.maximum(ZERO_FACTOR * observed, ZERO_MEDIAN_FRACTION * medians[0])

    left = np.r_[np.inf, absL[:-1]]
    right = np.r_[absL[1:], np.inf]
    is_min = (absL <= left) & (absL <= right) & (absL < zero_thr)
    cand_idx = np.flatnonzero(is_min)
    notes: list[str] = []

    polished = []
    for i in cand_idx:
        lo = gammas[max(i - 1, 0)]
        hi = gammas[min(i + 1, len(gammas) - 1)]
        g = golden_section_min(lambda x: _abs_L_line(table, x, cfg), lo, hi, tol)
        g = _newton_polish(table, g, lo, hi, cfg)
        polished.append((g, float(gammas[i])))

    polished.sort()
    merged: list[tuple[float, float, bool]] = []
    for g, c in polished:
        if merged and abs(g - merged[-1][0]) < 10 * tol:
            pg, pc, _ = merged[-1]
            keep = g if _abs_L_line(table, g, cfg) < _abs_L_line(table, pg, cfg) else pg
            merged[-1] = (keep, pc, True)
            notes.append(f"merged refined zeros at {pg:.9g} and {g:.9g}")
        else:
            merged.append((g, c, False))

    refined = []
    for g, c, was_merged in merged:
        derivs, obs = _derivs_at(table, g, D, cfg)
        m, thr = _multiplicity(derivs, obs, medians, D)
        if m < 0:
            notes.append(
                f"unresolved point gamma={g:.9g}: L^(0..{D}) all within truncation noise"
            )
        refined.append(RefinedZero(float(g), m, tuple(map(float, derivs)), thr, c, was_merged))

    return ZeroScanReport(
        gammas,
        absL,
        tails,
        observed,
        zero_thr,
        [float(gammas[i]) for i in cand_idx],
        refined,
        medians,
        cfg,
        D,
        notes,
    )


def build_gamma_multiset(
    table: MultFnTable,
    D: int,
    T: float,
    cfg: SeriesEvaluationConfig,
    grid_step: float = 1e-2,
    check_membership: bool = True,
    allow_unresolved: bool = False,
) -> GammaMultiset:
    """The multiset of 1-line zero ordinates in [-T, T], counted with multiplicity.

    With ``allow_unresolved`` the scan's unresolved points are left out of the
    multiset (they stay in ``scan``) instead of raising.

    Raises:
        MembershipError: f is not in F(D) on the sieved range.
        MultiplicityOverflowError: the zeros found have total multiplicity
            above D, or some point has undetermined order (> D).
    """
    if check_membership:
        rep = check_class_membership(table, D=D)
        if not rep.member:
            raise MembershipError(f"{table.label} is not in F({D}): " + "; ".join(rep.notes))
    report = scan_zeros(table, D, T, cfg, grid_step)
    if report.unresolved and not allow_unresolved:
        bad = ", ".join(f"{z.gamma:.9g}" for z in report.unresolved)
        raise MultiplicityOverflowError(f"order above D = {D} at gamma = {bad}")
    entries = tuple((z.gamma, z.multiplicity) for z in report.zeros)
    total = sum(m for _, m in entries)
    if total > D:
        raise MultiplicityOverflowError(
            f"total multiplicity {total} exceeds D = {D}: {entries}"
        )
    return GammaMultiset(entries, D, T, report)


# --------------------------------------------------------------------------
# prime sums and logarithmic derivatives


def log_density_sum(table: MultFnTable, gamma: float, m: int, x: int) -> float:
    """sum_{p <= x} (m + Re(f(p) p^(-i gamma))) / p."""
    ps, fp = table.prime_values(x)
    logp = np.log(ps)
    terms = (m + (fp * np.exp(-1j * gamma * logp)).real) / ps
    return float(np.sum(terms))


def eval_G(
    table: MultFnTable,
    j: int,
    s: complex,
    cfg: SeriesEvaluationConfig,
    min_denominator: float = 1e-8,
) -> complex:
    """G_j(s) = (-1)^j L^(j)(s, f) / L(s, f) for Re(s) > 1.

    Raises:
        DenominatorSmallError: |L(s)| < min_denominator.
    """
    s = complex(s)
    if s.real <= 1:
        raise ValueError("G_j needs Re(s) > 1")
    if j < 1:
        raise ValueError("j must be >= 1")
    cfg = resolve(cfg, table)
    if cfg.truncation > table.N:
        raise TruncationExceedsTableError(f"truncation {cfg.truncation} exceeds {table.N}")
    L0, Lj = _series(table, [0, j], s, cfg.truncation, cfg)
    if abs(L0) < min_denominator:
        raise DenominatorSmallError(f"|L({s})| = {abs(L0):.3g}")
    return complex((-1) ** j * Lj / L0)


def eval_G_line(
    table: MultFnTable, j: int, sigma: float, ts: np.ndarray, cfg: SeriesEvaluationConfig
) -> np.ndarray:
    """G_j(sigma + i t) for an array of t (no grid regularity needed)."""
    cfg = resolve(cfg, table)
    M = cfg.truncation
    logn = np.log(np.arange(1, M + 1, dtype=float))
    a = table.values[1 : M + 1] * np.exp(-sigma * logn)
    w = _weights(M, cfg)
    if w is not None:
        a = a * w
    W = np.stack([a, a * (-logn) ** j], axis=1)
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    out = np.empty(ts.size, dtype=np.complex128)
    for lo in range(0, ts.size, 256):
        tt = ts[lo : lo + 256]
        P = np.exp(-1j * np.outer(tt, logn))
        S = P @ W
        if cfg.tail_correction == "mean":
            for i, t in enumerate(tt):
                s = complex(sigma, t)
                S[i, 0] += _mean_tail(table, 0, s, M)
                S[i, 1] += _mean_tail(table, j, s, M)
        out[lo : lo + tt.size] = (-1) ** j * S[:, 1] / S[:, 0]
    return out


def dirichlet_coefficients_G(table: MultFnTable, j: int, N: int | None = None) -> np.ndarray:
    """Coefficients g_j(n), n <= N, of G_j = (-1)^j L^(j)/L.

    Computed as the Dirichlet product of f(n) log^j n with the inverse of f,
    i.e. power-series division of Dirichlet series on tables.
    """
    from .core import convolve_dense, dirichlet_inverse

    N = table.N if N is None else N
    sub = MultFnTable(table.values[: N + 1].copy(), table.D, table.label, table.source)
    logn = np.zeros(N + 1)
    logn[1:] = np.log(np.arange(1, N + 1))
    return convolve_dense(sub.values * logn**j, dirichlet_inverse(sub).values)


def mertens_prime_harmonic(x: int) -> float:
    """sum_{p <= x} 1/p."""
    return float(np.sum(1.0 / primes_upto(x)))
