# States, phase gates, and what a CZ gate does to entanglement.
#
# A multiqubit CZ gate on qubit set S flips the sign of every basis
# component carrying 1s throughout S.  On a given state it can
#
#   * disappear   (no such component: the gate acts as the identity),
#   * simplify    (some qubits of S pinned to |1>: it acts as the gate
#                  on the unpinned remainder), or
#   * act for real - and then it entangles: starting from any product
#     state split across S, the output is S-entangled (separable at no
#     bipartition splitting S).  The same holds for the generalized
#     phase gate with any unit phase other than 1.

import numpy as np

from qaclab import (
    classify_simplification,
    is_S_separable,
    ones_projection_norm,
    random_state,
    separates_at,
    tensor,
)
from qaclab.circuit import apply_cz, apply_geta
from qaclab.numerics import make_rng
from qaclab.qstate import basis_state

rng = make_rng(99)

# classification on simple states
print("classify CZ{0,1}:")
print("  on |0>|psi> :", classify_simplification({0, 1},
      tensor(basis_state(1, 0), random_state(1, rng))))
print("  on |1>|psi> :", classify_simplification({0, 1},
      tensor(basis_state(1, 1), random_state(1, rng))))
pp = tensor(random_state(1, rng), random_state(1, rng))
print("  on generic product:", classify_simplification({0, 1}, pp))
print("  ones projection of the product:",
      round(ones_projection_norm(pp, {0, 1}), 4))

# the entangling behaviour on a 4-qubit register
s = {1, 2, 3}
a, b = {0, 1}, {2, 3}   # a bipartition splitting S
psi = tensor(random_state(2, rng), random_state(2, rng), placement=a)
print()
print("product state across {0,1}|{2,3}, gate on S = {1,2,3}")
print("  before: separates at the split:", separates_at(psi, a, b)[0])
print("  classification:", classify_simplification(s, psi))

phi = apply_cz(psi, s)
sep, witness = is_S_separable(phi, s)
print("  after CZ: S-separable:", sep)

eta = np.exp(0.3j * np.pi)
phi_eta = apply_geta(psi, s, eta)
print(f"  after the eta={eta:.3f} phase gate: S-separable:",
      is_S_separable(phi_eta, s)[0])

# separability itself is witnessed or refuted by Schmidt rank across
# every cut; a product state yields its factors back
ok, (fa, fb) = separates_at(psi, a, b)
rebuilt = tensor(fa, fb, placement=a)
overlap = abs(np.vdot(rebuilt.amps, psi.amps))
print()
print("factor recovery overlap:", round(float(overlap), 12))
