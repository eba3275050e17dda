"""Multiplicative functions as sieved tables.

A multiplicative function is fixed by its values on prime powers.  Tables are
built by evaluating those values once per prime power and multiplying them
along the factorization skeleton of [1, N] (see :mod:`mfstruct.primes`).

The coefficients of -L'/L(s, f) are kept in a :class:`LambdaTable`; the two
descriptions are related on each prime p by

    k log p * f(p^k) = sum_{j=1..k} Lambda_f(p^j) f(p^(k-j)),

which is the coefficient identity behind L' = L * (L'/L).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    BoundViolationError,
    CheckpointRangeError,
    EvaluatorDomainError,
    RangeMismatchError,
)
from .primes import (
    PrimePowerIndex,
    factor_segment,
    iter_segments,
    prime_power_index,
    primes_upto,
    skeleton,
)

MEMBERSHIP_SLACK = 1e-9


class Mode(enum.Enum):
    F_VALUES = "f"
    LAMBDA_VALUES = "lambda"


@dataclass(frozen=True)
class PrimePowerSpec:
    """A multiplicative function given on prime powers.

    ``evaluator(p, k)`` returns f(p^k) or Lambda_f(p^k) according to ``mode``.
    With ``vectorized=True`` it receives int64 arrays and must return an
    array; otherwise it is called once per prime power with Python ints.
    """

    label: str
    D: int
    mode: Mode
    evaluator: Callable
    vectorized: bool = False

    def evaluate(self, p: np.ndarray, k: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=np.int64)
        k = np.asarray(k, dtype=np.int64)
        try:
            if self.vectorized:
                out = np.asarray(self.evaluator(p, k), dtype=np.complex128)
                out = np.broadcast_to(out, p.shape).copy()
            else:
                out = np.fromiter(
                    (complex(self.evaluator(int(a), int(b))) for a, b in zip(p, k)),
                    dtype=np.complex128,
                    count=p.size,
                )
        except EvaluatorDomainError:
            raise
        except Exception as exc:  # evaluator bugs surface as a domain error
            raise EvaluatorDomainError(f"{self.label}: evaluator failed: {exc}") from exc
        bad = ~np.isfinite(out)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise EvaluatorDomainError(
                f"{self.label}: non-finite value at p={p[i]}, k={k[i]}"
            )
        return out


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class MultFnTable:
    """Values f(1..N) of a multiplicative function.

    ``values`` has length N + 1 so that ``values[n] == f(n)``; ``values[0]``
    is 0 and carries no meaning.
    """

    values: np.ndarray
    D: int
    label: str
    source: str = "sieved"

    def __post_init__(self):
        if self.values.dtype != np.complex128:
            object.__setattr__(self, "values", self.values.astype(np.complex128))
        if self.values.flags.writeable:
            _readonly(self.values)

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self) -> int:
        return self.N

    def is_real(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.values.imag) <= tol))

    def prime_values(self, x: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Primes p <= x (default N) and f(p)."""
        ps = primes_upto(self.N if x is None else min(x, self.N))
        return ps, self.values[ps]

    def prime_power_values(self) -> np.ndarray:
        """f(p^k), aligned with ``prime_power_index(N)``."""
        return self.values[prime_power_index(self.N).q]


@dataclass(frozen=True, eq=False)
class LambdaTable:
    """Lambda_f(p^k) for every prime power p^k <= N.

    Stored flat in :class:`PrimePowerIndex` order; integers that are not
    prime powers (including 1) read as 0.
    """

    N: int
    values: np.ndarray
    D: int
    label: str = ""

    def __post_init__(self):
        if self.values.flags.writeable:
            _readonly(self.values)

    @property
    def index(self) -> PrimePowerIndex:
        return prime_power_index(self.N)

    def __getitem__(self, n: int) -> complex:
        idx = self.index
        hit = np.flatnonzero(idx.q == n)
        return complex(self.values[hit[0]]) if hit.size else 0.0j

    def items(self) -> Iterable[tuple[int, complex]]:
        idx = self.index
        for i in idx.sorted_order():
            yield int(idx.q[i]), complex(self.values[i])

    def dense(self) -> np.ndarray:
        """Lambda_f(n) for n = 0..N as a dense array."""
        out = np.zeros(self.N + 1, dtype=np.complex128)
        out[self.index.q] = self.values
        return out

    def max_ratio(self) -> float:
        """max |Lambda_f(p^k)| / log p."""
        if not self.values.size:
            return 0.0
        return float(np.max(np.abs(self.values) / np.log(self.index.p)))


@dataclass(frozen=True)
class RealMultiset:
    """A finite multiset of reals, stored as sorted (value, multiplicity) pairs."""

    entries: tuple[tuple[float, int], ...] = ()

    def __post_init__(self):
        vals = [a for a, _ in self.entries]
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("entries must be strictly increasing")
        if any(m < 1 for _, m in self.entries):
            raise ValueError("multiplicities must be >= 1")

    @classmethod
    def from_values(cls, values: Iterable[float]) -> "RealMultiset":
        counts: dict[float, int] = {}
        for v in values:
            counts[float(v)] = counts.get(float(v), 0) + 1
        return cls(tuple(sorted(counts.items())))

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def expanded(self) -> list[float]:
        return [a for a, m in self.entries for _ in range(m)]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


# --------------------------------------------------------------------------
# tau_D and bounds


def tau_prime_power(D: int, k: np.ndarray) -> np.ndarray:
    """tau_D(p^k) = C(k + D - 1, D - 1)."""
    k = np.asarray(k, dtype=np.int64)
    return np.array([math.comb(int(a) + D - 1, D - 1) for a in k.ravel()], dtype=float).reshape(
        k.shape
    )


def tau_table(D: int, N: int) -> np.ndarray:
    """tau_D(n) for n = 0..N (real array, entry 0 is 0)."""
    idx = prime_power_index(N)
    return skeleton(N).assemble(tau_prime_power(D, idx.k)).real


# --------------------------------------------------------------------------
# construction


def from_prime_powers(
    pp_values: np.ndarray, N: int, D: int, label: str, source: str, workers: int = 1
) -> MultFnTable:
    """Table of the multiplicative function with the given f(p^k) (flat order)."""
    vals = skeleton(N, workers).assemble(np.asarray(pp_values, dtype=np.complex128))
    return MultFnTable(vals, D, label, source)


def sieve_from_spec(
    spec: PrimePowerSpec,
    N: int,
    *,
    workers: int = 1,
    check_bound: bool = True,
    bound_tol: float = MEMBERSHIP_SLACK,
) -> MultFnTable:
    """Sieve f(1..N) from prime-power data.

    Raises:
        EvaluatorDomainError: the evaluator failed or returned a non-finite value.
        BoundViolationError: |f(p^k)| > tau_D(p^k) (1 + bound_tol) for some p^k.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if spec.mode is Mode.LAMBDA_VALUES:
        lam = lambda_table_from_spec(spec, N)
        return f_from_lambda(lam, workers=workers)
    idx = prime_power_index(N)
    pp = spec.evaluate(idx.p, idx.k)
    if check_bound and pp.size:
        ratio = np.abs(pp) / tau_prime_power(spec.D, idx.k)
        worst = int(np.argmax(ratio))
        if ratio[worst] > 1 + bound_tol:
            raise BoundViolationError(
                f"{spec.label}: |f({idx.p[worst]}^{idx.k[worst]})| = {abs(pp[worst]):.6g}"
                f" exceeds tau_{spec.D} = {tau_prime_power(spec.D, idx.k[worst:worst+1])[0]:.6g}"
            )
    return from_prime_powers(pp, N, spec.D, spec.label, "sieved", workers)


def lambda_table_from_spec(spec: PrimePowerSpec, N: int) -> LambdaTable:
    idx = prime_power_index(N)
    if spec.mode is Mode.LAMBDA_VALUES:
        vals = spec.evaluate(idx.p, idx.k)
    else:
        vals = _lambda_from_pp(idx, spec.evaluate(idx.p, idx.k))
    return LambdaTable(N, vals, spec.D, spec.label)


def _lambda_from_pp(idx: PrimePowerIndex, fpp: np.ndarray) -> np.ndarray:
    lam = np.zeros(idx.size, dtype=np.complex128)
    for k in range(1, idx.kmax + 1):
        bk = idx.block(k)
        c = bk.stop - bk.start
        acc = fpp[bk] * (k * np.log(idx.p[bk]))
        for j in range(1, k):
            acc -= lam[idx.block(j)][:c] * fpp[idx.block(k - j)][:c]
        lam[bk] = acc
    return lam


def _f_from_lambda_pp(idx: PrimePowerIndex, lam: np.ndarray) -> np.ndarray:
    fpp = np.zeros(idx.size, dtype=np.complex128)
    for k in range(1, idx.kmax + 1):
        bk = idx.block(k)
        c = bk.stop - bk.start
        acc = lam[bk].copy()
        for j in range(1, k):
            acc += lam[idx.block(j)][:c] * fpp[idx.block(k - j)][:c]
        fpp[bk] = acc / (k * np.log(idx.p[bk]))
    return fpp


def lambda_from_f(table: MultFnTable) -> LambdaTable:
    """Coefficients of -L'/L(s, f) at every prime power <= N."""
    if table.values[1] != 1:
        raise ValueError("table must satisfy f(1) = 1")
    idx = prime_power_index(table.N)
    return LambdaTable(table.N, _lambda_from_pp(idx, table.prime_power_values()), table.D, table.label)


def f_from_lambda(lam: LambdaTable, *, workers: int = 1, label: str | None = None) -> MultFnTable:
    """Rebuild f from Lambda_f, then extend multiplicatively to [1, N]."""
    fpp = _f_from_lambda_pp(lam.index, lam.values)
    return from_prime_powers(fpp, lam.N, lam.D, label or lam.label, "sieved", workers)


# --------------------------------------------------------------------------
# Dirichlet algebra


def convolve_dense(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(a * b)(n) = sum_{d | n} a(d) b(n/d) for arbitrary arrays indexed 0..N.

    Plain divisor-pass convolution, O(N log N); no multiplicativity assumed.
    """
    if len(a) != len(b):
        raise RangeMismatchError(f"length {len(a)} != {len(b)}")
    N = len(a) - 1
    out = np.zeros(N + 1, dtype=np.result_type(a, b))
    for d in range(1, N + 1):
        ad = a[d]
        if ad == 0:
            continue
        m = N // d
        out[d :: d][:m] += ad * b[1 : m + 1]
    return out


def _pp_convolve(idx: PrimePowerIndex, fa: np.ndarray, fb: np.ndarray) -> np.ndarray:
    """Prime-power values of a * b from those of a and b."""
    out = np.zeros(idx.size, dtype=np.complex128)
    for k in range(1, idx.kmax + 1):
        bk = idx.block(k)
        c = bk.stop - bk.start
        acc = fa[bk] + fb[bk]
        for j in range(1, k):
            acc += fa[idx.block(j)][:c] * fb[idx.block(k - j)][:c]
        out[bk] = acc
    return out


def dirichlet_convolve(a: MultFnTable, b: MultFnTable, *, workers: int = 1) -> MultFnTable:
    """Dirichlet convolution of two multiplicative tables.

    The product is multiplicative, so it is formed on prime powers and
    re-sieved.  The divisor bound of the result is ``a.D + b.D``.
    """
    if a.N != b.N:
        raise RangeMismatchError(f"N mismatch: {a.N} != {b.N}")
    idx = prime_power_index(a.N)
    pp = _pp_convolve(idx, a.prime_power_values(), b.prime_power_values())
    return from_prime_powers(pp, a.N, a.D + b.D, f"({a.label})*({b.label})", "convolved", workers)


def dirichlet_inverse(a: MultFnTable, *, workers: int = 1) -> MultFnTable:
    """Inverse under Dirichlet convolution, obtained by negating Lambda_f."""
    lam = lambda_from_f(a)
    inv = LambdaTable(a.N, -lam.values, a.D, f"inv({a.label})")
    t = f_from_lambda(inv, workers=workers)
    return MultFnTable(t.values, a.D, inv.label, "inverted")


def tau_multiset(A: RealMultiset, N: int, *, workers: int = 1) -> MultFnTable:
    """tau_A(n) = sum over d_1...d_m = n of prod d_j^(i alpha_j)."""
    if A.total < 1:
        raise ValueError("multiset must be non-empty")
    idx = prime_power_index(N)
    logp = np.log(idx.primes)
    kmax = idx.kmax
    # coefficients c[k][p] of prod_j 1/(1 - p^(i a_j) X), built one factor at a time
    coeffs = [np.ones(idx.primes.size, dtype=np.complex128)] + [
        np.zeros(idx.primes.size, dtype=np.complex128) for _ in range(kmax)
    ]
    for alpha in A.expanded():
        z = np.exp(1j * alpha * logp)
        for k in range(1, kmax + 1):
            coeffs[k] = coeffs[k] + z * coeffs[k - 1]
    # block k of the flat prime-power index holds the smallest primes, those with p^k <= N
    sizes = [idx.block(k).stop - idx.block(k).start for k in range(1, kmax + 1)]
    blocks = [coeffs[k][:size] for k, size in zip(range(1, kmax + 1), sizes)]
    pp = np.concatenate(blocks) if blocks else np.zeros(0, np.complex128)
    label = "tau{" + ",".join(f"{a:g}" for a in A.expanded()) + "}"
    return from_prime_powers(pp, N, A.total, label, "builtin", workers)


# --------------------------------------------------------------------------
# generalized von Mangoldt functions


def _positive_compositions(j: int, parts: int):
    """Tuples of ``parts`` integers >= 1 summing to j."""
    if parts == 0:
        if j == 0:
            yield ()
        return
    for first in range(1, j - parts + 2):
        for rest in _positive_compositions(j - first, parts - 1):
            yield (first, *rest)


def _lambda_j_from_factors(j: int, P: np.ndarray, E: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """sum_{d | n} mu(d) log^j(n/d), with the divisor sum expanded prime by prime.

    For n = prod p_i^{e_i} write log(n/d) = sum_i x_i log p_i with x_i = e_i
    or e_i - 1.  The alternating sum over squarefree d is a first difference
    in every x_i, so only monomials of log^j containing each log p_i survive:

        Lambda_j(n) = sum_{k_1+...+k_w = j, k_i >= 1} multinomial(j; k)
                      prod_i (log p_i)^{k_i} (e_i^{k_i} - (e_i - 1)^{k_i}).

    Every term is non-negative and the sum is empty when w > j, so the
    support and sign properties hold exactly in floating point.
    """
    out = np.zeros(omega.size, dtype=np.float64)
    if j == 0:
        out[omega == 0] = 1.0
        return out
    for w in range(1, min(j, int(omega.max(initial=0))) + 1):
        rows = np.flatnonzero(omega == w)
        if not rows.size:
            continue
        logp = np.log(P[rows, :w].astype(np.float64))
        e = E[rows, :w].astype(np.float64)
        acc = np.zeros(rows.size)
        for ks in _positive_compositions(j, w):
            coef = math.factorial(j)
            term = np.ones(rows.size)
            for i, k in enumerate(ks):
                coef //= math.factorial(k)
                term *= logp[:, i] ** k * (e[:, i] ** k - (e[:, i] - 1) ** k)
            acc += coef * term
        out[rows] = acc
    return out


def generalized_von_mangoldt(j: int, N: int) -> np.ndarray:
    """Lambda_j(n) for n = 0..N via Moebius inversion of log^j (see above).

    Lambda_j are the coefficients of (-1)^j zeta^(j)/zeta; entry 0 is 0.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    out = np.zeros(N + 1)
    for lo, hi in iter_segments(1, N + 1):
        out[lo:hi] = _window_values(j, lo, hi)
    return out


def generalized_von_mangoldt_window(j: int, lo: int, hi: int) -> np.ndarray:
    """Lambda_j(n) for lo <= n < hi, factoring only that window."""
    out = np.empty(hi - lo)
    for a, b in iter_segments(lo, hi):
        out[a - lo : b - lo] = _window_values(j, a, b)
    return out


def _window_values(j: int, lo: int, hi: int) -> np.ndarray:
    seg = factor_segment(lo, hi)
    return _lambda_j_from_factors(j, seg.primes, seg.exps, seg.omega)


def generalized_von_mangoldt_recurrence(j: int, N: int) -> np.ndarray:
    """Lambda_j through Lambda_{i+1}(n) = Lambda_i(n) log n + (Lambda * Lambda_i)(n).

    The recurrence is the coefficient form of the identity
    F_{i+1} = -F_i' + F_1 F_i for F_i = (-1)^i zeta^(i)/zeta.  It shares no
    code with :func:`generalized_von_mangoldt` and serves as a cross-check.
    """
    logn = np.zeros(N + 1)
    logn[1:] = np.log(np.arange(1, N + 1))
    idx = prime_power_index(N)
    order = idx.sorted_order()
    qs, lp = idx.q[order], np.log(idx.p[order])
    cur = np.zeros(N + 1)
    if N >= 1:
        cur[1] = 1.0
    for _ in range(j):
        nxt = cur * logn
        for q, lq in zip(qs.tolist(), lp.tolist()):
            m = N // q
            nxt[q::q][:m] += lq * cur[1 : m + 1]
        cur = nxt
    return cur


# --------------------------------------------------------------------------
# partial sums and class membership


@dataclass(frozen=True)
class PartialSum:
    x: int
    S: complex
    normalized: float | None = None


def partial_sums(
    table: MultFnTable, checkpoints: Sequence[int], A: float | None = None
) -> list[PartialSum]:
    """Exact prefix sums S(x) = sum_{n <= x} f(n) at the checkpoints.

    With ``A`` given, also |S(x)| (log x)^A / x.
    """
    xs = [int(x) for x in checkpoints]
    if any(x < 1 or x > table.N for x in xs):
        raise CheckpointRangeError(f"checkpoints must lie in [1, {table.N}]")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise CheckpointRangeError("checkpoints must be strictly increasing")
    cum = np.cumsum(table.values)
    out = []
    for x in xs:
        S = complex(cum[x])
        norm = abs(S) * math.log(x) ** A / x if A is not None else None
        out.append(PartialSum(x, S, norm))
    return out


@dataclass(frozen=True)
class MembershipReport:
    label: str
    D: int
    N: int
    lambda_ratio: float
    lambda_argmax: int
    tau_ratio: float
    tau_argmax: int
    member: bool
    notes: list[str] = field(default_factory=list)


def check_class_membership(
    f: PrimePowerSpec | MultFnTable, N: int | None = None, D: int | None = None
) -> MembershipReport:
    """Test |Lambda_f(p^k)| <= D log p for p^k <= N and report max |f(n)|/tau_D(n).

    Violations are reported, never raised.  The comparison allows a relative
    slack of 1e-9 for rounding in the log p products.
    """
    if isinstance(f, MultFnTable):
        N = f.N if N is None else min(N, f.N)
        D = f.D if D is None else D
        table = f if N == f.N else MultFnTable(f.values[: N + 1].copy(), f.D, f.label, f.source)
        lam = lambda_from_f(table)
        label = f.label
    else:
        if N is None:
            raise ValueError("N is required for a PrimePowerSpec")
        D = f.D if D is None else D
        lam = lambda_table_from_spec(f, N)
        table = f_from_lambda(lam) if f.mode is Mode.LAMBDA_VALUES else sieve_from_spec(
            f, N, check_bound=False
        )
        label = f.label
    idx = lam.index
    if lam.values.size:
        r = np.abs(lam.values) / np.log(idx.p)
        i = int(np.argmax(r))
        lratio, larg = float(r[i]), int(idx.q[i])
    else:
        lratio, larg = 0.0, 1
    tau = tau_table(D, N)
    tr = np.abs(table.values[1:]) / tau[1:]
    ti = int(np.argmax(tr))
    tratio = float(tr[ti])
    member = lratio <= D * (1 + MEMBERSHIP_SLACK)
    notes = []
    if not member:
        notes.append(f"|Lambda_f({larg})|/log p = {lratio:.6g} > D = {D}")
    if tratio > 1 + MEMBERSHIP_SLACK:
        notes.append(f"|f({ti + 1})|/tau_{D} = {tratio:.6g} > 1")
    return MembershipReport(label, D, N, lratio, larg, tratio, ti + 1, member, notes)
