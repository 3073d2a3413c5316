# Gate-killer states and constructive parity refuters.
#
# The even and odd subspaces each have dimension 2^(r-1), so k linear
# constraints with k < 2^(r-1) always leave a pure-parity state in the
# nullspace.  Choosing the constraints <1..1| U_i makes the state switch
# off any phase gate covering those r qubits after U_i - the key to
# refuting small circuits: commit two inputs to killer states of parity
# 0 and 1 and watch the target come out identical.

import numpy as np

from qaclab import kill_parity_state, refute_depth1, verify_certificate
from qaclab.circuit import GATE_H, Circuit, cz
from qaclab.numerics import kron_all, make_rng, random_unitary
from qaclab.parity import format_certificate, has_pure_parity, refute_depth2_structural
from qaclab.qstate import format_state

rng = make_rng(12)

# the classic 2-qubit example: one constraint from H (x) H
h2 = kron_all([GATE_H.float_mat(), GATE_H.float_mat()])
for b in (0, 1):
    psi = kill_parity_state([h2], b)
    print(f"killer for H(x)H, parity {b}:")
    print(format_state(psi), end="")
    print("  pure parity:", has_pure_parity(psi, b),
          " residual:", abs(h2[-1, :] @ psi.amps) < 1e-12)

# seven random constraints on four qubits still leave room
units = [random_unitary(16, rng) for _ in range(7)]
psi = kill_parity_state(units, 1)
worst = max(abs(u[-1, :] @ psi.amps) for u in units)
print(f"\n4-qubit state killing 7 random unitaries: worst residual {worst:.2e}")

# a depth-1 circuit cannot compute 2-input parity: the refuter builds
# both killer states, simulates, and wraps the evidence in a
# certificate that re-verifies by simulation alone
c1 = Circuit(3, 2, 0,
             single_layers=[{q: GATE_H for q in range(3)},
                            {q: GATE_H for q in range(3)}],
             multi_layers=[[cz(0, 1, 2)]])
cert = refute_depth1(c1)
print("\ndepth-1 certificate:", cert.kind, "-", cert.note)
ok, detail = verify_certificate(cert, c1)
print("independent verification:", ok, f"({detail})")
print(format_certificate(cert)[:260] + "...")

# a depth-2 circuit whose first-layer gate grabs three inputs falls to
# the structural tactics
c2 = Circuit(5, 4, 0,
             single_layers=[{q: GATE_H for q in range(5)},
                            {q: GATE_H for q in range(5)},
                            {0: GATE_H}],
             multi_layers=[[cz(1, 2, 3)], [cz(0, 1, 2, 3)]])
cert2 = refute_depth2_structural(c2)
print("depth-2 certificate:", cert2.kind, "-", cert2.note)
print("independent verification:", verify_certificate(cert2, c2)[0])

# the 3-input parity circuit itself survives both tactics, as it must
from qaclab import parity3_circuit
print("tight parity circuit ->", refute_depth2_structural(parity3_circuit()))
