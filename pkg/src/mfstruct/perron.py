"""A numerical check of the smoothed Perron identity.

With T0 = sqrt(T), c = 1 + 1/log x and the kernel K(s) = (e^{s/T0} - 1)/(s/T0),

    (1/2 pi i) int_{(c)} F(s) x^s / s K(s)^10 ds = sum_n a_n W(n),

for any Dirichlet series F(s) = sum a_n n^{-s} absolutely convergent on
Re(s) = c.  Writing K(s)^10 x^s as an average of (x e^u)^s over u, a sum of
ten independent uniforms on [0, 1/T0], gives the weight

    W(n) = P(x e^u >= n) = 1 - IrwinHall_10(T0 log(n/x)),

equal to 1 for n <= x and to 0 for n >= x e^{10/T0}.  The check uses
F(s) = sum Lambda_g(n) log n n^{-s} = (L'/L)'(s, g) for g = f * tau_Gamma,
so the right side is a finite sum and the left side an oscillatory integral
evaluated by composite Simpson quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.stats import irwinhall

from .analytic import GammaMultiset
from .core import LambdaTable, MultFnTable, lambda_from_f
from .errors import QuadratureBudgetError, RangeError

KERNEL_POWER = 10


@dataclass(frozen=True)
class PerronConfig:
    """Parameters of the smoothed line integral.

    ``step`` and ``t_max`` default to values derived from x and T; the step
    is refined automatically until successive halvings agree.
    """

    x: float
    T: float
    step: float | None = None
    t_max: float | None = None
    tail_target: float = 1e-6
    max_halvings: int = 8

    def __post_init__(self):
        if self.x < 2 or self.T < 2:
            raise ValueError("need x >= 2 and T >= 2")

    @property
    def T0(self) -> float:
        return math.sqrt(self.T)

    @property
    def c(self) -> float:
        return 1.0 + 1.0 / math.log(self.x)

    @property
    def support_end(self) -> int:
        """Largest n with a non-zero smoothing weight."""
        return int(math.floor(self.x * math.exp(KERNEL_POWER / self.T0)))


@dataclass
class PerronRecord:
    x: float
    T: float
    T0: float
    c: float
    lhs: complex
    rhs: complex
    smoothing: complex
    prime_sum: complex
    prime_power_part: complex
    discrepancy: float
    smoothing_budget: float
    quadrature_error: float
    tail_bound: float
    halving_shift: float
    step: float
    t_max: float
    nodes: int

    @property
    def budget(self) -> float:
        return self.smoothing_budget + self.quadrature_error + self.tail_bound

    @property
    def identity_gap(self) -> float:
        """|lhs - rhs|, the quantity bounded by the budget."""
        return abs(self.lhs - self.rhs)

    @property
    def passed(self) -> bool:
        return self.identity_gap <= self.budget and self.halving_shift < 0.1 * self.budget


def smoothing_weights(n: np.ndarray, x: float, T0: float) -> np.ndarray:
    u = T0 * np.log(np.asarray(n, dtype=float) / x)
    w = irwinhall(KERNEL_POWER).sf(np.clip(u, 0.0, None))
    return np.where(u <= 0, 1.0, w)


def kernel(s: np.ndarray, T0: float) -> np.ndarray:
    z = s / T0
    return np.expm1(z) / z


def compensated_lambda(table: MultFnTable, gamma: GammaMultiset | None, M: int) -> LambdaTable:
    """Lambda of f * tau_Gamma on prime powers <= M.

    Each ordinate gamma contributes n^{i gamma} Lambda(n), the coefficients
    of -zeta'/zeta(s - i gamma).
    """
    sub = MultFnTable(table.values[: M + 1].copy(), table.D, table.label, table.source)
    lam = lambda_from_f(sub)
    vals = lam.values.copy()
    idx = lam.index
    total = 0
    if gamma is not None:
        logp = np.log(idx.p)
        for g, m in gamma.entries:
            vals = vals + m * logp * np.exp(1j * g * idx.k * logp)
            total += m
    return LambdaTable(M, vals, table.D + total, f"{table.label}*tau")


def _integral(coef_n, coef_a, cfg: PerronConfig, h: float, t_max: float) -> complex:
    count = 2 * int(math.ceil(t_max / h))
    t = np.linspace(-t_max, t_max, count + 1)
    s = cfg.c + 1j * t
    logn = np.log(coef_n)
    vals = np.empty(t.size, dtype=np.complex128)
    for lo in range(0, t.size, 2048):
        ss = s[lo : lo + 2048]
        F = np.exp(-np.outer(ss, logn)) @ coef_a
        vals[lo : lo + 2048] = F * np.exp(ss * math.log(cfg.x)) / ss * kernel(ss, cfg.T0) ** KERNEL_POWER
    return complex(simpson(vals, x=t)) / (2 * math.pi)


def _tail_bound(abs_sum: float, cfg: PerronConfig, t_max: float) -> float:
    c, T0 = cfg.c, cfg.T0
    kb = (math.exp(c / T0) + 1) * T0
    return abs_sum * cfg.x**c * kb**KERNEL_POWER / (10 * math.pi * t_max**KERNEL_POWER)


def perron_check(
    table: MultFnTable, gamma_tilde: GammaMultiset | None, cfg: PerronConfig
) -> PerronRecord:
    """Compare the smoothed line integral with the exact coefficient sums.

    Raises:
        RangeError: the table does not reach x e^{10/T0}.
        QuadratureBudgetError: step refinement fails to converge.
    """
    M = cfg.support_end
    if M > table.N:
        raise RangeError(f"smoothing support reaches {M} > table range {table.N}")
    lam = compensated_lambda(table, gamma_tilde, M)
    n = lam.index.q.astype(float)
    a = lam.values * np.log(n)
    keep = a != 0
    n, a = n[keep], a[keep]

    W = smoothing_weights(n, cfg.x, cfg.T0)
    inside = n <= cfg.x
    rhs = complex(np.sum(a[inside]))
    smoothing = complex(np.sum((a * W)[~inside]))

    kk = lam.index.k[keep]
    primes = (kk == 1) & inside
    prime_sum = complex(np.sum(a[primes]))
    prime_power_part = rhs - prime_sum

    abs_sum = float(np.sum(np.abs(a) * n ** (-cfg.c)))
    t_max = cfg.t_max
    if t_max is None:
        need = (
            abs_sum
            * cfg.x**cfg.c
            * ((math.exp(cfg.c / cfg.T0) + 1) * cfg.T0) ** KERNEL_POWER
            / (10 * math.pi * cfg.tail_target * cfg.x)
        ) ** (1 / KERNEL_POWER)
        t_max = max(4 * cfg.T0, 200.0, need)
    tail = _tail_bound(abs_sum, cfg, t_max)

    smoothing_budget = 10 * cfg.x * math.log(cfg.x) / cfg.T0
    h = cfg.step if cfg.step is not None else min(0.1, 0.5 / math.log(M))
    target = 1e-3 * smoothing_budget
    coarse = _integral(n, a, cfg, h, t_max)
    for _ in range(cfg.max_halvings):
        fine = _integral(n, a, cfg, h / 2, t_max)
        shift = abs(fine - coarse)
        if shift <= target:
            break
        h, coarse = h / 2, fine
    else:
        raise QuadratureBudgetError(
            f"Simpson refinement did not settle: last shift {shift:.3g} > target {target:.3g}"
        )
    quad_err = shift / 15 + 1e-14 * abs_sum * cfg.x**cfg.c * t_max
    lhs = fine
    return PerronRecord(
        cfg.x,
        cfg.T,
        cfg.T0,
        cfg.c,
        lhs,
        rhs,
        smoothing,
        prime_sum,
        prime_power_part,
        abs(lhs - (rhs + smoothing)),
        smoothing_budget,
        quad_err,
        tail,
        shift,
        h / 2,
        t_max,
        2 * int(math.ceil(t_max / (h / 2))) + 1,
    )
