"""
A control that should fail, and the smoothed Perron identity
============================================================

The constant function 1 has partial sums S(x) = x, nowhere near small, so
the structure harness must reject it.  The second half evaluates the
smoothed line integral for mu twisted by n^{2i} and compares it with the
exact weighted coefficient sum.
"""

from mfstruct import PerronConfig, analyze, parse, perron_check

# f = 1: the pole of zeta at s = 1 shows up as |S(x)|/x = 1 at every checkpoint.
an = analyze("one", N=10**5)
print("f = 1:", "PASS" if an.report.passed else "FAIL")
for note in an.report.notes:
    print("   ", note)

# x = 1000 and T = 1000, so T0 = sqrt(T) is about 31.6 and the kernel
# ((e^{s/T0} - 1)/(s/T0))^10 smooths over n up to x e^{10/T0}.
cfg = PerronConfig(x=1e3, T=1e3)
table = parse("twist(2)").table(cfg.support_end)
rec = perron_check(table, None, cfg)
print(f"line integral      {rec.lhs.real:+.4f}{rec.lhs.imag:+.4f}i")
print(f"sum over n <= x    {rec.rhs.real:+.4f}{rec.rhs.imag:+.4f}i")
print(f"smoothing tail     {rec.smoothing.real:+.4f}{rec.smoothing.imag:+.4f}i")
print(f"|lhs - (rhs + smoothing)| = {rec.discrepancy:.2e}   (quadrature alone)")
print(f"|lhs - rhs| = {rec.identity_gap:.1f} <= budget {rec.budget:.1f}: {rec.passed}")
