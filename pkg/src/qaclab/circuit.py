"""Layered circuits of 1-qubit gates and multiqubit phase gates.

A depth-d circuit alternates d+1 layers of single-qubit gates with d
layers of multiqubit gates; only the multiqubit layers count toward the
depth.  Layers are addressed with half-integer labels 0.5, 1, 1.5, ...,
d+0.5 (stored internally as two parallel lists), the leftmost 1-qubit
layer applied first.  Qubit 0 is the target, qubits 1..n the inputs,
n+1..n+m the ancillas.

The multiqubit gates multiply the amplitude of basis states that carry a
1 on every incident qubit by a phase: -1 for a CZ gate, an arbitrary
unit phase eta != 1 for its generalization.  A CZ on the empty qubit set
is -identity by convention.

``classify_simplification`` decides how such a gate acts on a concrete
state: it disappears (acts as identity) exactly when the state has no
component with 1s throughout the gate's qubits; it acts like the smaller
gate on T = S minus the qubits pinned to |1> when such qubits exist; and
otherwise it does not simplify.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    Exact,
    Tolerance,
    is_exact,
    scalar_is_zero,
    to_float,
)
from .qstate import MAX_QUBITS, StateVector, basis_state, ones_component_is_zero, tensor

# ---- gates -----------------------------------------------------------------


def _exact_mat(entries) -> np.ndarray:
    m = np.empty((2, 2), dtype=object)
    for i in range(2):
        for j in range(2):
            m[i, j] = entries[i][j]
    return m


_NAMED_1Q = {
    "I": _exact_mat([[Exact.ONE, Exact.ZERO], [Exact.ZERO, Exact.ONE]]),
    "X": _exact_mat([[Exact.ZERO, Exact.ONE], [Exact.ONE, Exact.ZERO]]),
    "Y": _exact_mat([[Exact.ZERO, -Exact.I], [Exact.I, Exact.ZERO]]),
    "Z": _exact_mat([[Exact.ONE, Exact.ZERO], [Exact.ZERO, Exact.MINUS_ONE]]),
    "H": _exact_mat([[Exact.INV_SQRT2, Exact.INV_SQRT2],
                     [Exact.INV_SQRT2, -Exact.INV_SQRT2]]),
}


@dataclass(frozen=True)
class Gate1q:
    """A 2x2 unitary; named gates carry exact entries."""

    mat: np.ndarray
    name: str | None = None

    @classmethod
    def named(cls, name: str) -> "Gate1q":
        if name not in _NAMED_1Q:
            raise ValueError(f"unknown gate name {name!r}")
        return cls(_NAMED_1Q[name], name)

    @classmethod
    def from_matrix(cls, entries, tol: Tolerance = DEFAULT_TOL) -> "Gate1q":
        m = np.asarray(entries, dtype=complex).reshape(2, 2)
        if not unitary_close(m, tol):
            raise ValueError("matrix is not unitary within tolerance")
        return cls(m)

    @property
    def is_exact(self) -> bool:
        return self.mat.dtype == object

    def float_mat(self) -> np.ndarray:
        if not self.is_exact:
            return self.mat
        return np.array([[to_float(self.mat[i, j]) for j in range(2)]
                         for i in range(2)], dtype=complex)

    def compose_after(self, first: "Gate1q") -> "Gate1q":
        """Gate equal to applying ``first`` and then self."""
        a, b = self.mat, first.mat
        if self.is_exact and first.is_exact:
            out = np.empty((2, 2), dtype=object)
            for i in range(2):
                for j in range(2):
                    out[i, j] = a[i, 0] * b[0, j] + a[i, 1] * b[1, j]
            return Gate1q(out)
        return Gate1q(self.float_mat() @ first.float_mat())

    def __repr__(self):
        return f"Gate1q({self.name or 'matrix'})"


GATE_I = Gate1q.named("I")
GATE_X = Gate1q.named("X")
GATE_Y = Gate1q.named("Y")
GATE_Z = Gate1q.named("Z")
GATE_H = Gate1q.named("H")


def unitary_close(m: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    return bool(np.max(np.abs(m @ m.conj().T - np.eye(2))) <= tol.threshold(1.0))


def is_semiclassical(g: Gate1q, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Diagonal or antidiagonal matrix (two zero entries); such gates map
    basis states to basis states up to phase, and the property is closed
    under taking adjoints."""
    m = g.float_mat()
    thr = tol.threshold(float(np.max(np.abs(m))))
    diag = abs(m[0, 1]) <= thr and abs(m[1, 0]) <= thr
    anti = abs(m[0, 0]) <= thr and abs(m[1, 1]) <= thr
    return diag or anti


@dataclass(frozen=True)
class MultiGate:
    """Phase gate on a qubit set: CZ (eta = -1) or a general unit phase."""

    qubits: frozenset[int]
    kind: str = "cz"  # "cz" | "geta"
    eta_value: object = None

    def __post_init__(self):
        if self.kind not in ("cz", "geta"):
            raise ValueError(f"unknown multiqubit gate kind {self.kind!r}")
        if self.kind == "geta":
            if self.eta_value is None:
                raise ValueError("geta needs a phase")
            e = to_float(self.eta_value)
            if abs(abs(e) - 1.0) > 1e-9:
                raise ValueError("geta phase must have modulus 1")
            if abs(e - 1.0) <= 1e-12:
                raise ValueError("geta phase must differ from 1")

    @property
    def eta(self):
        return Exact.MINUS_ONE if self.kind == "cz" else self.eta_value

    def __repr__(self):
        qs = ",".join(map(str, sorted(self.qubits)))
        if self.kind == "cz":
            return f"CZ({qs})"
        return f"G_eta({to_float(self.eta):.3g};{qs})"


def cz(*qubits) -> MultiGate:
    return MultiGate(frozenset(qubits), "cz")


def geta(eta, *qubits) -> MultiGate:
    return MultiGate(frozenset(qubits), "geta", eta)


# ---- gate application ------------------------------------------------------

def apply_1q(psi: StateVector, qubit: int, gate: Gate1q) -> StateVector:
    if qubit < 0 or qubit >= psi.r:
        raise ValueError(f"qubit {qubit} outside register")
    exact = psi.is_exact and gate.is_exact
    src = psi.amps if exact else psi.to_float().amps
    m = gate.mat if exact else gate.float_mat()
    out = np.empty(1 << psi.r, dtype=object if exact else complex)
    bit = 1 << (psi.r - 1 - qubit)
    for i in range(1 << psi.r):
        if i & bit:
            continue
        a0, a1 = src[i], src[i | bit]
        out[i] = m[0, 0] * a0 + m[0, 1] * a1
        out[i | bit] = m[1, 0] * a0 + m[1, 1] * a1
    return StateVector(psi.r, out, psi.normalized)


def apply_multi(psi: StateVector, gate: MultiGate) -> StateVector:
    for q in gate.qubits:
        if q < 0 or q >= psi.r:
            raise ValueError(f"qubit {q} outside register")
    eta = gate.eta
    exact = psi.is_exact and is_exact(eta)
    src = psi.amps if exact else psi.to_float().amps
    eta_val = eta if exact else to_float(eta)
    mask = 0
    for q in gate.qubits:
        mask |= 1 << (psi.r - 1 - q)
    out = src.copy()
    for i in range(1 << psi.r):
        if (i & mask) == mask:
            out[i] = eta_val * src[i]
    return StateVector(psi.r, out, psi.normalized)


def apply_cz(psi: StateVector, qubits) -> StateVector:
    return apply_multi(psi, MultiGate(frozenset(qubits), "cz"))


def apply_geta(psi: StateVector, qubits, eta) -> StateVector:
    return apply_multi(psi, MultiGate(frozenset(qubits), "geta", eta))


# Classical reversible gates, provided as test fixtures only (they are
# not circuit primitives here): fanout copies a control into targets,
# the parity gate xors controls into a target, and they are related by
# Hadamard conjugation of every incident qubit.

def apply_cnot(psi: StateVector, control: int, target: int) -> StateVector:
    out = psi.amps.copy()
    cbit = 1 << (psi.r - 1 - control)
    tbit = 1 << (psi.r - 1 - target)
    for i in range(1 << psi.r):
        if (i & cbit) and not (i & tbit):
            j = i | tbit
            out[i], out[j] = psi.amps[j], psi.amps[i]
    return StateVector(psi.r, out, psi.normalized)


def apply_fanout(psi: StateVector, control: int, targets) -> StateVector:
    out = psi
    for t in targets:
        out = apply_cnot(out, control, t)
    return out


def apply_parity_gate(psi: StateVector, target: int, controls) -> StateVector:
    out = psi
    for c in controls:
        out = apply_cnot(out, c, target)
    return out


# ---- circuits --------------------------------------------------------------

class CircuitValidationError(ValueError):
    def __init__(self, message, kind="invalid"):
        self.kind = kind
        super().__init__(message)


@dataclass
class Circuit:
    """r qubits: target 0, inputs 1..n, ancillas n+1..n+m."""

    r: int
    n_inputs: int
    n_ancillas: int
    single_layers: list  # list[dict[int, Gate1q]], length depth + 1
    multi_layers: list   # list[list[MultiGate]], length depth

    def __post_init__(self):
        self.validate()

    @property
    def depth(self) -> int:
        return len(self.multi_layers)

    def validate(self):
        if self.r > MAX_QUBITS:
            raise CircuitValidationError(
                f"register cap is {MAX_QUBITS} qubits", "register-too-large")
        if self.r != 1 + self.n_inputs + self.n_ancillas:
            raise CircuitValidationError(
                "qubits must equal 1 + inputs + ancillas", "bad-layout")
        if len(self.single_layers) != len(self.multi_layers) + 1:
            raise CircuitValidationError(
                "need depth+1 single-qubit layers", "bad-layer-count")
        for layer in self.single_layers:
            for q in layer:
                if q < 0 or q >= self.r:
                    raise CircuitValidationError(
                        f"qubit {q} outside register", "bad-qubit")
        for layer in self.multi_layers:
            seen = set()
            for g in layer:
                for q in g.qubits:
                    if q < 0 or q >= self.r:
                        raise CircuitValidationError(
                            f"qubit {q} outside register", "bad-qubit")
                if seen & g.qubits:
                    raise CircuitValidationError(
                        "multiqubit gates within a layer must be disjoint",
                        "layer-disjointness")
                seen.update(g.qubits)

    # layer labels: single layer i <-> label i + 0.5, multi layer i <-> i + 1

    def gate1(self, layer_index: int, qubit: int) -> Gate1q:
        """Single-qubit gate at layer label layer_index + 0.5 (I if absent)."""
        return self.single_layers[layer_index].get(qubit, GATE_I)

    def multi_at(self, layer: int, qubit: int) -> MultiGate | None:
        """Multiqubit gate incident to a qubit on integer layer 1..depth."""
        for g in self.multi_layers[layer - 1]:
            if qubit in g.qubits:
                return g
        return None

    @property
    def is_exact(self) -> bool:
        for layer in self.single_layers:
            if any(not g.is_exact for g in layer.values()):
                return False
        for layer in self.multi_layers:
            if any(not is_exact(g.eta) for g in layer):
                return False
        return True

    def input_qubits(self) -> range:
        return range(1, 1 + self.n_inputs)

    def ancilla_qubits(self) -> range:
        return range(1 + self.n_inputs, self.r)


def simulate(circuit: Circuit, initial: StateVector, trace: bool = False):
    """Apply layers 0.5, 1, 1.5, ..., depth + 0.5 in order.

    With ``trace`` the return value is (final, [(layer_label, state)...])
    exposing the state after each layer.
    """
    if initial.r != circuit.r:
        raise ValueError("state register does not match circuit")
    psi = initial
    if psi.is_exact and not circuit.is_exact:
        psi = psi.to_float()
    steps = []
    for i in range(circuit.depth + 1):
        for q in sorted(circuit.single_layers[i]):
            psi = apply_1q(psi, q, circuit.single_layers[i][q])
        if trace:
            steps.append((i + 0.5, psi))
        if i < circuit.depth:
            for g in circuit.multi_layers[i]:
                psi = apply_multi(psi, g)
            if trace:
                steps.append((i + 1.0, psi))
    if trace:
        return psi, steps
    return psi


# ---- simplification classification ----------------------------------------

@dataclass(frozen=True)
class SimplificationOutcome:
    """disappears | simplifies-to-T (T a proper subset, possibly empty,
    with the empty set meaning a global -1 phase) | none."""

    kind: str           # "disappears" | "simplifies" | "none"
    t: frozenset | None = None

    @property
    def disappears(self) -> bool:
        return self.kind == "disappears"

    @property
    def simplifies(self) -> bool:
        return self.kind == "simplifies"

    def __repr__(self):
        if self.kind == "simplifies":
            return f"SimplifiesTo({{{','.join(map(str, sorted(self.t)))}}})"
        return {"disappears": "Disappears", "none": "NoSimplification"}[self.kind]


DISAPPEARS = SimplificationOutcome("disappears")
NO_SIMPLIFICATION = SimplificationOutcome("none")


def _pinned_to_one(psi: StateVector, qubit: int, tol: Tolerance) -> bool:
    """True iff every amplitude with a 0 at the qubit vanishes."""
    bit = 1 << (psi.r - 1 - qubit)
    if psi.is_exact:
        return all(psi.amps[i].is_zero
                   for i in range(1 << psi.r) if not (i & bit))
    total = 0.0
    for i in range(1 << psi.r):
        if not (i & bit):
            total += abs(psi.amps[i]) ** 2
    return bool(np.sqrt(total) <= tol.threshold(psi.norm()))


def classify_simplification(s, psi: StateVector,
                            tol: Tolerance = DEFAULT_TOL) -> SimplificationOutcome:
    """How a phase gate on the qubit set S acts on psi.

    Disappears when the S-ones component vanishes.  Otherwise the gate
    acts exactly like the gate on T = S minus the qubits pinned to |1>;
    the maximal pinned set is removed, so the returned T is minimal.
    T = empty set reports a pure global phase.  Exact states are decided
    exactly.
    """
    s = frozenset(s)
    if ones_component_is_zero(psi, s, tol):
        return DISAPPEARS
    pinned = frozenset(q for q in s if _pinned_to_one(psi, q, tol))
    if pinned:
        return SimplificationOutcome("simplifies", s - pinned)
    return NO_SIMPLIFICATION


def replacement_state(outcome: SimplificationOutcome, psi: StateVector,
                      gate: MultiGate) -> StateVector:
    """Apply the classified replacement (identity / smaller gate / whole
    gate) to psi; used to check classification soundness."""
    if outcome.disappears:
        return psi
    if outcome.simplifies:
        return apply_multi(psi, MultiGate(outcome.t, gate.kind, gate.eta_value))
    return apply_multi(psi, gate)


# ---- target structure ------------------------------------------------------

def target_is_pass_through(circuit: Circuit, tol: Tolerance = DEFAULT_TOL) -> bool:
    """The target's final 1-qubit gate is semiclassical (a missing gate
    counts as the identity, which is semiclassical)."""
    return is_semiclassical(circuit.gate1(circuit.depth, 0), tol)


class DepthReduceError(ValueError):
    pass


def depth_reduce(circuit: Circuit, tol: Tolerance = DEFAULT_TOL) -> Circuit:
    """Strip the last multiqubit layer.

    Two situations allow it: the target meets no multiqubit gate on the
    last layer (its last-layer gate is then at most a 1-qubit Z, and
    everything beyond the previous layer that acts on other qubits
    cannot influence the target's reduced state); or the target is
    pass-through, in which case on computing fixtures the target holds a
    basis state across the last layer and the gate acts trivially on it.
    The target's surviving 1-qubit gates are collapsed into the new
    final layer.
    """
    d = circuit.depth
    if d < 2:
        raise DepthReduceError("need depth >= 2")
    target_gate = circuit.multi_at(d, 0)
    target_multi = target_gate is not None and len(target_gate.qubits) > 1

    singles = [dict(layer) for layer in circuit.single_layers]
    multis = [list(layer) for layer in circuit.multi_layers]

    if not target_multi:
        # collapse target's last-half-layer gates; a 1-qubit CZ on the
        # target is the Z gate
        g = circuit.gate1(d, 0)
        if target_gate is not None:
            g = g.compose_after(GATE_Z)
        g = g.compose_after(circuit.gate1(d - 1, 0))
        new_final = {0: g}
        new_singles = singles[:d - 1] + [new_final]
        new_multis = multis[:d - 1]
    elif target_is_pass_through(circuit, tol):
        g = circuit.gate1(d, 0).compose_after(circuit.gate1(d - 1, 0))
        new_final = {q: gq for q, gq in singles[d - 1].items() if q != 0}
        new_final[0] = g
        new_singles = singles[:d - 1] + [new_final]
        new_multis = multis[:d - 1]
    else:
        raise DepthReduceError(
            "target meets a multiqubit gate on the last layer and is not "
            "pass-through")
    return Circuit(circuit.r, circuit.n_inputs, circuit.n_ancillas,
                   new_singles, new_multis)


# ---- parity on the computational basis -------------------------------------

def computes_parity_on_basis(circuit: Circuit,
                             ancilla: StateVector | None = None,
                             tol: Tolerance = DEFAULT_TOL):
    """Check C(|0> (x) |x> (x) ancilla) = |parity x> (x) anything for
    every classical input x; returns (ok, first counterexample or None)."""
    n, m = circuit.n_inputs, circuit.n_ancillas
    if ancilla is None:
        ancilla = basis_state(m, 0) if m else None
    elif ancilla.r != m:
        raise ValueError("ancilla register size mismatch")
    for xi in range(1 << n):
        x = format(xi, f"0{n}b") if n else ""
        front = basis_state(1 + n, "0" + x)
        initial = front if ancilla is None else tensor(front, ancilla,
                                                       placement=range(1 + n))
        final = simulate(circuit, initial)
        b = x.count("1") % 2
        # the component with target != parity(x) must vanish
        bad_bit = 1 << (circuit.r - 1)
        if final.is_exact:
            ok = all(final.amps[i].is_zero for i in range(1 << circuit.r)
                     if ((i & bad_bit) != 0) != (b == 1))
        else:
            mass = sum(abs(final.amps[i]) ** 2 for i in range(1 << circuit.r)
                       if ((i & bad_bit) != 0) != (b == 1))
            ok = np.sqrt(mass) <= tol.threshold(1.0)
        if not ok:
            return False, x
    return True, None


# ---- the tight 3-input example ---------------------------------------------

def parity3_circuit() -> Circuit:
    """Depth-2 circuit on 4 qubits computing the parity of inputs 1..3.

    Layers: H on qubits 0 and 2; CZ{0,1} and CZ{2,3}; H on qubit 2;
    CZ{0,2}; H on qubit 0.  Equivalent to CNOT(1->0), CNOT(3->2),
    CNOT(2->0).
    """
    return Circuit(
        r=4, n_inputs=3, n_ancillas=0,
        single_layers=[{0: GATE_H, 2: GATE_H}, {2: GATE_H}, {0: GATE_H}],
        multi_layers=[[cz(0, 1), cz(2, 3)], [cz(0, 2)]],
    )


def parity3_cnot_reference(initial: StateVector) -> StateVector:
    """The same map as parity3_circuit, built from CNOT fixtures."""
    out = apply_cnot(initial, 1, 0)
    out = apply_cnot(out, 3, 2)
    return apply_cnot(out, 2, 0)
