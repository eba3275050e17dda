"""
Two zeros on the 1-line
=======================

f = mu * (mu twisted by n^{2i}) has L(s, f) = 1/(zeta(s) zeta(s - 2i)), so
it lies in F(2) with simple zeros at gamma = 0 and gamma = 2.  We find both,
confirm the total multiplicity equals D, and watch f * tau_Gamma collapse to
the identity element.
"""

from mfstruct import SeriesEvaluationConfig, analyze, build_gamma_multiset, parse
from mfstruct.verify import hyperbola_f_gamma_sums, special_case_check

entry = parse("moebius * twist(2)")
f = entry.table(10**6)
print(entry.name, " D =", entry.D, " closed-form zeros:", entry.known_gamma.entries)

# With D = 2 a double zero is possible, so the sharp truncation's ripple would
# blur the derivative tests; Riesz weights (1 - n/N)^3 damp it.
cfg = SeriesEvaluationConfig(A=5.0, weight="riesz")
gamma = build_gamma_multiset(f, entry.D, 5.0, cfg)
for g, m in gamma.entries:
    print(f"  scanned zero gamma = {g:+.7f}  multiplicity {m}")
print("  total multiplicity", gamma.total, "= D")

# tau_Gamma = 1 * n^{2i} is exactly the inverse of f, so the partial sums of
# f * tau_Gamma are 1 for every x, by direct convolution and by the hyperbola split.
for x, z in ((1000, 10.0), (10**5, 316.0)):
    rec = hyperbola_f_gamma_sums(f, entry.known_gamma, x, z)
    print(f"  x={x:>6}: direct {rec.direct.real:.12f}, hyperbola {rec.hyperbola.real:.12f}")

# The whole harness in one call; closed-form ordinates are used once the scan
# agrees with them to 1e-3.
an = analyze(entry, table=f)
print("harness:", "PASS" if an.report.passed else "FAIL", "| Gamma source:", an.gamma_source)

# The extremal configuration: mu * mu has a double zero at 0, and f(p) = -2 exactly.
mm = parse("moebius * moebius").table(10**5)
rec = special_case_check(mm, 0.0, 2, 10**5)
print("mu*mu: deviation sum", rec.deviation, " min Lambda_{G G-bar}", rec.min_lambda)
