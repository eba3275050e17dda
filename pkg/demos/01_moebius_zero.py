"""
The Moebius function and its zero at s = 1
==========================================

L(s, mu) = 1/zeta(s) vanishes at s = 1 because zeta has a pole there.  This
script sieves mu, looks at the series on the 1-line, finds the zero and
checks that adding p^0 = 1 at every prime cancels mu(p) exactly.
"""

import math

import numpy as np

from mfstruct import GammaMultiset, SeriesEvaluationConfig, eval_L_derivative, parse, scan_zeros
from mfstruct.verify import compensated_prime_sums, default_checkpoints

# Sieve mu up to a million.  The catalog records that mu is in F(1).
entry = parse("moebius")
mu = entry.table(10**6)
print(entry.name, "D =", entry.D, " mu(1..10) =", mu.values[1:11].real.astype(int).tolist())

# Away from the line the truncated series is essentially exact: 1/zeta(2) = 6/pi^2.
cfg = SeriesEvaluationConfig(A=4.0)
print("L(2, mu) =", eval_L_derivative(mu, 0, 2.0, cfg).value.real, " 6/pi^2 =", 6 / math.pi**2)

# On the line, L(1) is tiny and L'(1) is close to 1, so the zero is simple.
for j in (0, 1):
    ev = eval_L_derivative(mu, j, 1.0, cfg)
    print(f"L^({j})(1) = {ev.value.real:+.6f}   (observed tail {ev.observed_tail:.1e})")

# Scan |L(1 + i gamma)| on [-5, 5].  Only gamma = 0 dips below the threshold.
report = scan_zeros(mu, 1, 5.0, cfg)
for z in report.zeros:
    print(f"zero at gamma = {z.gamma:.2e}, multiplicity {z.multiplicity}")
print("median |L| along the grid:", round(float(np.median(report.absL)), 4))

# Leaving the zero out, sum_{p <= x} mu(p) log p is about -x (prime number theorem).
xs = default_checkpoints(mu.N)
bare = compensated_prime_sums(mu, None, 5.0, xs)
print("psi(x)/x with Gamma empty:  ", [round(float(v.real) / x, 4) for v, x in zip(bare, xs)])

# With Gamma = {0:1} every prime contributes (mu(p) + 1) log p = 0.
gamma = GammaMultiset.of([(z.gamma, z.multiplicity) for z in report.zeros], D=1)
full = compensated_prime_sums(mu, gamma, 5.0, xs)
print("psi(x)   with the zero found:", [float(abs(v)) for v in full])
