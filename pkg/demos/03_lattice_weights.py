"""
Lattice weights A_N(x)
======================

A_N(x) is the mean value of |1 + e^{it gamma_1} + ... + e^{it gamma_k}|^{2N}
e^{itx}.  Expanding the power turns it into a count of pairs of exponent
vectors whose phases differ by x, weighted by multinomial coefficients.
"""

import math

from mfstruct import ANQuery, a_n_value
from mfstruct.lattice import a_n_report

# One generic ordinate: A_N(m gamma) = C(2N, N - m), a Vandermonde count.
g = math.sqrt(2)
for N in (1, 2, 3):
    row = [a_n_value(ANQuery((g,), N, m * g)) for m in range(-N, N + 1)]
    print(f"N={N}: {row}   closed form {[math.comb(2 * N, N - m) for m in range(-N, N + 1)]}")

# Resonant ordinates pool their mass: with gamma = (1, 2) the phase 2 is reached
# both as 2*1 and as 1*2.
print("A_2(2) for (1, 2):", a_n_value(ANQuery((1.0, 2.0), 2, 2.0)),
      " for (1, sqrt 3):", a_n_value(ANQuery((1.0, math.sqrt(3)), 2, math.sqrt(3))))

# As N grows A_N(gamma_j)/A_N(0) creeps up to 1 while A_N(0) keeps a fixed
# share of (k+1)^{2N} N^{-k/2}.
for N in (1, 2, 4, 6):
    rep = a_n_report(ANQuery((g, math.sqrt(3)), N))
    print(f"N={N}: A_N(0)={rep.at_zero:>10}  growth ratio {rep.growth_ratio:.3f}"
          f"  min A_N(gamma_j)/A_N(0) {rep.min_gamma_ratio:.3f}")
