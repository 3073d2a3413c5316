# Multilinear polynomials and the two routes to decomposability.
#
# A polynomial is decomposable when it splits into nonconstant factors
# on disjoint variable sets.  Two independent tests are implemented:
#
#   1. sv_partition_test checks the restriction identity
#      f(a) * f == f|_I * f|_complement at a justifying assignment;
#      it holds exactly when I is a union of factor-variable classes.
#   2. bipartition_rank_oracle checks whether the coefficient matrix of
#      the split has rank <= 1.
#
# A justifying assignment that is also a root of f certifies that f is
# indecomposable outright.

from qaclab import (
    Exact,
    bipartition_rank_oracle,
    decompose,
    evaluate,
    find_justifying_assignment,
    find_zero_justifying_assignment,
    sv_partition_test,
)
from qaclab.multilinear import MultilinearPoly, var
from qaclab.numerics import make_rng, to_float

rng = make_rng(2024)

x0, x1 = var("x", "0"), var("x", "1")
z0, z1 = var("z", "0"), var("z", "1")

# the cross polynomial x0 z0 + x0 z1 + x1 z0 - x1 z1: its coefficient
# matrix [[1, 1], [1, -1]] has determinant -2, so it never splits
cross = MultilinearPoly({
    frozenset({x0, z0}): Exact.ONE,
    frozenset({x0, z1}): Exact.ONE,
    frozenset({x1, z0}): Exact.ONE,
    frozenset({x1, z1}): Exact.MINUS_ONE,
})
print("cross =", cross)

a = find_justifying_assignment(cross, rng)
print("justifying assignment found:",
      {str(v): to_float(s) for v, s in sorted(a.items())})

for subset in ({x0}, {x0, x1}, {x0, z0}):
    names = sorted(str(v) for v in subset)
    print(f"  split at {names}: identity={sv_partition_test(cross, a, subset)}"
          f"  rank<=1={bipartition_rank_oracle(cross, subset)}")

# a root that is simultaneously justifying proves indecomposability
root = find_zero_justifying_assignment(cross, rng)
print("justifying root, P(a) =", to_float(evaluate(cross, root)))

# compare with a polynomial that does split: (x0 + x1)(z0 + z1) expanded
product = MultilinearPoly({
    frozenset({x0, z0}): Exact.ONE,
    frozenset({x0, z1}): Exact.ONE,
    frozenset({x1, z0}): Exact.ONE,
    frozenset({x1, z1}): Exact.ONE,
})
print()
print("product =", product)
print("  rank<=1 at {x0,x1}:", bipartition_rank_oracle(product, {x0, x1}))
for factor in decompose(product):
    print("  factor:", factor)
print("  justifying root exists:",
      find_zero_justifying_assignment(product, rng, attempts=100) is not None)
