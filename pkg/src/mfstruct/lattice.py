"""The lattice weight A_N(x) attached to a finite set of ordinates.

For ordinates gamma_1..gamma_k (and the implicit gamma_0 = 0),

    A_N(x) = lim (1/2T) int_{-T}^{T} |1 + e^{it gamma_1} + ... + e^{it gamma_k}|^{2N} e^{itx} dt.

Expanding the power with the multinomial theorem, |...|^{2N} is a double sum
over exponent vectors j, j' in the compositions of N into k + 1 parts, with
weight multinomial(N; j) * multinomial(N; j') and phase sum_i (j_i - j'_i)
gamma_i.  A_N(x) collects the weights whose phase equals x.  All weights are
integers, so the result is exact once each phase comparison is decided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import AmbiguousRelationError, EnumerationCapError

ENUMERATION_CAP = 10**8
EXACT_ULPS = 16


@dataclass(frozen=True)
class ANQuery:
    """A request for A_N(x).

    Args:
        gammas: Distinct real ordinates gamma_1..gamma_k.
        N: The power parameter, N >= 1.
        x: The frequency at which the mean value is taken.
        tol: Phases within ``tol`` of x but not equal to it up to rounding
            raise :class:`AmbiguousRelationError`.
    """

    gammas: tuple[float, ...]
    N: int
    x: float = 0.0
    tol: float = 1e-9

    def __post_init__(self):
        g = tuple(float(v) for v in self.gammas)
        object.__setattr__(self, "gammas", g)
        if len(g) < 1:
            raise ValueError("need at least one ordinate")
        if len(set(g)) != len(g):
            raise ValueError("ordinates must be pairwise distinct")
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if not self.tol >= 0:
            raise ValueError("tol must be non-negative")


def compositions(N: int, parts: int):
    """All tuples of ``parts`` non-negative integers summing to N (stars and bars)."""
    for bars in combinations(range(N + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(N + parts - 1 - prev - 1)
        yield tuple(out)


def multinomial(N: int, parts: Sequence[int]) -> int:
    out = math.factorial(N)
    for p in parts:
        out //= math.factorial(p)
    return out


@dataclass(frozen=True)
class _Phases:
    phases: np.ndarray
    weights: list[int]
    scale: float


def _phases(gammas: Sequence[float], N: int) -> _Phases:
    k = len(gammas)
    if (k + 1) ** (2 * N) > ENUMERATION_CAP:
        raise EnumerationCapError(
            f"(k+1)^(2N) = {k + 1}^{2 * N} exceeds the enumeration cap {ENUMERATION_CAP:.0e}"
        )
    comps = list(compositions(N, k + 1))
    g = np.array([0.0, *gammas])
    phases = np.array([float(np.dot(c, g)) for c in comps])
    weights = [multinomial(N, c) for c in comps]
    scale = N * float(np.sum(np.abs(g)))
    return _Phases(phases, weights, scale)


def _collect(ph: _Phases, x: float, tol: float) -> int:
    diff = ph.phases[:, None] - ph.phases[None, :] - x
    exact_tol = EXACT_ULPS * np.finfo(float).eps * max(ph.scale + abs(x), 1.0)
    exact = np.abs(diff) <= exact_tol
    near = (np.abs(diff) <= tol) & ~exact
    if near.any():
        a, b = (int(v) for v in np.argwhere(near)[0])
        raise AmbiguousRelationError(
            f"phase difference {ph.phases[a] - ph.phases[b]!r} lies within {tol:g} of x={x!r}"
            " without matching it exactly"
        )
    total = 0
    w = ph.weights
    for a, b in np.argwhere(exact):
        total += w[int(a)] * w[int(b)]
    return total


def a_n_value(q: ANQuery) -> int:
    """A_N(x) by exact enumeration over compositions.

    Raises:
        EnumerationCapError: (k + 1)^(2N) exceeds 10^8.
        AmbiguousRelationError: some phase is near x but not equal to it.
    """
    return _collect(_phases(q.gammas, q.N), q.x, q.tol)


@dataclass
class ANReport:
    query: ANQuery
    value: int
    at_zero: int
    at_gammas: list[int]
    growth_ratio: float
    min_gamma_ratio: float
    notes: list[str] = field(default_factory=list)


def a_n_report(q: ANQuery) -> ANReport:
    """A_N(x) together with the size diagnostics of the weight.

    ``growth_ratio`` is A_N(0) / ((k+1)^(2N) N^(-k/2)), bounded below for
    fixed k; ``min_gamma_ratio`` is min_j A_N(gamma_j) / A_N(0), which tends
    to 1 as N grows.
    """
    ph = _phases(q.gammas, q.N)
    k = len(q.gammas)
    value = _collect(ph, q.x, q.tol)
    at_zero = _collect(ph, 0.0, q.tol)
    at_g = [_collect(ph, g, q.tol) for g in q.gammas]
    growth = at_zero / ((k + 1) ** (2 * q.N) * q.N ** (-k / 2))
    return ANReport(q, value, at_zero, at_g, growth, min(at_g) / at_zero)


def a_n_closed_form_k1(N: int, m: int) -> int:
    """A_N(m gamma_1) for a single generic ordinate: C(2N, N - m)."""
    if abs(m) > N:
        return 0
    return math.comb(2 * N, N - m)
