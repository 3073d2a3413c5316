# From states to polynomials: separability becomes decomposability.
#
# Group the register's qubits into labeled blocks and map each basis
# state to a product of one variable per block, extended linearly.  A
# state that is a tensor product across a block split maps to a product
# of polynomials on disjoint variables; for this map the coefficient
# matrix of the polynomial split IS the reshaped amplitude matrix, so
# the rank-1 tests on the two sides agree exactly.

from qaclab import (
    block_partition,
    poly_of_state,
    random_product_state,
    random_state,
    state_of_poly,
)
from qaclab.bridge import separability_decomposability_check
from qaclab.circuit import GATE_H, apply_1q, apply_cz
from qaclab.numerics import make_rng
from qaclab.qstate import basis_state, tensor

rng = make_rng(5)
bp = block_partition(("x", (0,)), ("z", (1,)))

# basis states map to single monomials
print("|11>  ->", poly_of_state(basis_state(2, "11"), bp))

# the gate output on |+>|+> maps to the cross polynomial (scaled by 1/2)
plus2 = tensor(apply_1q(basis_state(1, 0), 0, GATE_H),
               apply_1q(basis_state(1, 0), 0, GATE_H))
after = apply_cz(plus2, {0, 1})
print("CZ|+>|+> ->", poly_of_state(after, bp))

# the map is invertible on its image
f = poly_of_state(random_state(2, rng), bp)
back = state_of_poly(f, bp)
print("round trip recovers the state:", poly_of_state(back, bp).approx_eq(f))

# separable <=> the polynomial splits, checked over a small sweep
bp4 = block_partition(("x", (0, 1)), ("z", (2, 3)))
agree = 0
for k in range(200):
    if k % 2 == 0:
        psi = random_product_state({0, 1}, {2, 3}, rng)
    else:
        psi = random_state(4, rng)
    report = separability_decomposability_check(psi, bp4, {"x"})
    agree += report.equivalence_holds
print(f"separability == rank-1 split on {agree}/200 random states")
