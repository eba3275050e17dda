"""Prime tables, segmented factorization and the multiplicative skeleton of [1, N].

Everything here is integer bookkeeping.  The complex-valued arithmetic that
uses it lives in :mod:`mfstruct.core`.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

SEGMENT_SIZE = 1 << 18


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=16)
def primes_upto(n: int) -> np.ndarray:
    """All primes ``p <= n`` as a read-only int64 array."""
    if n < 2:
        return _frozen(np.zeros(0, dtype=np.int64))
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, isqrt(n) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return _frozen(np.flatnonzero(sieve).astype(np.int64))


def iroot(n: int, k: int) -> int:
    """Largest integer r with r**k <= n."""
    if k == 1:
        return n
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def max_omega(n: int) -> int:
    """Upper bound for the number of distinct prime factors of any m <= n."""
    prod, count = 1, 0
    for p in primes_upto(100):
        prod *= int(p)
        if prod > n:
            break
        count += 1
    return max(count, 1)


@dataclass(frozen=True)
class SegmentFactors:
    """Complete factorizations of the integers ``lo .. lo + len - 1``.

    Row ``i`` describes ``lo + i``: its distinct primes in increasing order
    (``primes[i, :omega[i]]``, zero padded) and their exponents.
    """

    lo: int
    primes: np.ndarray
    exps: np.ndarray
    omega: np.ndarray

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.lo, self.lo + len(self.omega), dtype=np.int64)


def factor_segment(lo: int, hi: int) -> SegmentFactors:
    """Factor every integer in ``[lo, hi)`` by sieving with primes up to sqrt(hi)."""
    if lo < 1 or hi <= lo:
        raise ValueError(f"bad segment [{lo}, {hi})")
    m = hi - lo
    width = max_omega(hi - 1)
    rem = np.arange(lo, hi, dtype=np.int64)
    P = np.zeros((m, width), dtype=np.int64)
    E = np.zeros((m, width), dtype=np.int8)
    omega = np.zeros(m, dtype=np.int8)
    for p in primes_upto(isqrt(hi - 1)).tolist():
        idx = np.arange((-lo) % p, m, p)
        if idx.size == 0:
            continue
        r = rem[idx] // p
        e = np.ones(idx.size, dtype=np.int8)
        act = np.flatnonzero(r % p == 0)
        while act.size:
            r[act] //= p
            e[act] += 1
            act = act[r[act] % p == 0]
        rem[idx] = r
        col = omega[idx]
        P[idx, col] = p
        E[idx, col] = e
        omega[idx] += 1
    big = np.flatnonzero(rem > 1)
    col = omega[big]
    P[big, col] = rem[big]
    E[big, col] = 1
    omega[big] += 1
    return SegmentFactors(lo, P, E, omega)


def iter_segments(lo: int, hi: int, size: int = SEGMENT_SIZE):
    """Yield consecutive ``(a, b)`` bounds covering ``[lo, hi)``."""
    a = lo
    while a < hi:
        b = min(a + size, hi)
        yield a, b
        a = b


@dataclass(frozen=True)
class PrimePowerIndex:
    """Flat indexing of all prime powers ``p**k <= N``.

    Entries are grouped by exponent: block ``k`` holds ``p**k`` for the first
    ``counts[k]`` primes, so per-exponent recurrences vectorize over a slice.
    Index ``size`` is a sentinel standing for the empty factorization.
    """

    N: int
    primes: np.ndarray
    offsets: tuple[int, ...]
    p: np.ndarray
    k: np.ndarray
    q: np.ndarray

    @property
    def size(self) -> int:
        return len(self.q)

    @property
    def kmax(self) -> int:
        return len(self.offsets) - 2

    def block(self, k: int) -> slice:
        return slice(self.offsets[k], self.offsets[k + 1])

    def lookup(self, p: np.ndarray, k: np.ndarray) -> np.ndarray:
        """Flat indices of the prime powers ``p**k`` (arrays, all <= N)."""
        off = np.asarray(self.offsets, dtype=np.int64)[np.asarray(k, dtype=np.int64)]
        return off + np.searchsorted(self.primes, p)

    def sorted_order(self) -> np.ndarray:
        """Permutation listing the flat entries by increasing ``q``."""
        return np.argsort(self.q, kind="stable")


@lru_cache(maxsize=8)
def prime_power_index(N: int) -> PrimePowerIndex:
    primes = primes_upto(N)
    offsets = [0, 0]
    ps, ks, qs = [], [], []
    k = 1
    while primes.size and 2**k <= N:
        c = int(np.searchsorted(primes, iroot(N, k), side="right"))
        block = primes[:c]
        ps.append(block)
        ks.append(np.full(c, k, dtype=np.int64))
        qs.append(block**k)
        offsets.append(offsets[-1] + c)
        k += 1
    cat = (lambda xs: np.concatenate(xs)) if ps else (lambda xs: np.zeros(0, np.int64))
    return PrimePowerIndex(
        N,
        primes,
        tuple(offsets),
        _frozen(cat(ps)),
        _frozen(cat(ks)),
        _frozen(cat(qs)),
    )


@dataclass(frozen=True)
class MultiplicativeSkeleton:
    """For each n <= N: the smallest prime-power component and the cofactor.

    ``head[n]`` indexes :class:`PrimePowerIndex` (``p**k`` exactly dividing n,
    p the least prime factor), ``tail[n] = n // p**k``.  n = 0 and n = 1 map
    to the sentinel.  Any multiplicative function is then a product along the
    chain n -> tail[n] -> ... -> 1.
    """

    N: int
    index: PrimePowerIndex
    head: np.ndarray
    tail: np.ndarray
    omega: np.ndarray

    def assemble(self, pp_values: np.ndarray) -> np.ndarray:
        """Values of the multiplicative function with the given prime-power values.

        ``pp_values`` is aligned with the flat index (length ``index.size``).
        The returned array has length N + 1 with entry 0 set to 0.
        """
        vals_pp = np.empty(self.index.size + 1, dtype=np.result_type(pp_values, np.complex128))
        vals_pp[:-1] = pp_values
        vals_pp[-1] = 1.0
        out = vals_pp[self.head]
        act = np.flatnonzero(self.tail > 1)
        cur = self.tail[act]
        while act.size:
            out[act] *= vals_pp[self.head[cur]]
            cur = self.tail[cur]
            keep = cur > 1
            act, cur = act[keep], cur[keep]
        out[0] = 0.0
        return out

    def distinct_primes(self, n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Zero-padded distinct primes of each entry of ``n`` and their count."""
        n = np.asarray(n, dtype=np.int64)
        width = max_omega(self.N)
        P = np.zeros((n.size, width), dtype=np.int64)
        pflat = np.append(self.index.p, 0)
        cur = n.copy()
        for col in range(width):
            act = np.flatnonzero(cur > 1)
            if not act.size:
                break
            P[act, col] = pflat[self.head[cur[act]]]
            cur[act] = self.tail[cur[act]]
        return P, self.omega[n]


def _skeleton_segment(index: PrimePowerIndex, lo: int, hi: int):
    seg = factor_segment(lo, hi)
    p = seg.primes[:, 0]
    k = seg.exps[:, 0].astype(np.int64)
    has = seg.omega > 0
    head = np.full(hi - lo, index.size, dtype=np.int64)
    tail = np.ones(hi - lo, dtype=np.int64)
    head[has] = index.lookup(p[has], k[has])
    tail[has] = seg.n[has] // p[has] ** k[has]
    return head, tail, seg.omega


@lru_cache(maxsize=4)
def skeleton(N: int, workers: int = 1) -> MultiplicativeSkeleton:
    """Build the skeleton of [1, N] segment by segment.

    Segments are independent; with ``workers > 1`` they are factored on a
    thread pool and merged in order, so the result does not depend on the
    worker count.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    index = prime_power_index(N)
    bounds = list(iter_segments(1, N + 1))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda ab: _skeleton_segment(index, *ab), bounds))
    else:
        parts = [_skeleton_segment(index, a, b) for a, b in bounds]
    sentinel = np.array([index.size], dtype=np.int64)
    head = np.concatenate([sentinel] + [h for h, _, _ in parts])
    tail = np.concatenate([np.ones(1, np.int64)] + [t for _, t, _ in parts])
    omega = np.concatenate([np.zeros(1, np.int8)] + [o for _, _, o in parts])
    dtype = np.int32 if N < 2**31 - 1 else np.int64
    return MultiplicativeSkeleton(
        N, index, _frozen(head.astype(dtype)), _frozen(tail.astype(dtype)), _frozen(omega)
    )
