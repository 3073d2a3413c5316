# Exact scalars: arithmetic in Q(i, sqrt2) without rounding.
#
# Every matrix entry of the H/X/Y/Z gates and of multiqubit CZ gates
# lives in the field (a + b*sqrt2) + i*(c + d*sqrt2) with rational
# components, so circuits built from those gates can be simulated with
# no floating-point error at all.  "Is this amplitude zero?" then has an
# exact answer instead of a tolerance debate.

from fractions import Fraction

from qaclab import Exact, approx_eq, to_float
from qaclab.numerics import Tolerance

# 1/sqrt2 is (1/2)*sqrt2
h = Exact.INV_SQRT2
print("1/sqrt2             =", to_float(h))
print("(1/sqrt2)^2         =", h * h, "== 1/2 exactly")

# the field is closed under division
x = Exact(3, -1, 2, 5)
print("x / x               =", x / x)

# exact values compare exactly, floats against a tolerance
print("Exact 1 == Exact 1  :", approx_eq(Exact.ONE, Exact(1)))
print("1 ~ 1+1e-12 (float) :", approx_eq(1 + 0j, 1 + 1e-12 + 0j))
print("1 ~ 1.001   (float) :", approx_eq(1 + 0j, 1.001 + 0j))

# a gap of 1e-12 between exact values is still a difference
tiny = Exact(1, Fraction(1, 10**12))
print("Exact 1 == 1+eps    :", approx_eq(Exact.ONE, tiny))

# mixing backends demotes to complex
print("Exact(2) * 0.5      =", Exact(2) * 0.5, type(Exact(2) * 0.5).__name__)

print()
print("default tolerance:", Tolerance())
