"""Statevectors over labeled qubits, separability analysis, projections.

Qubit 0 is the most significant position of a basis-state index, so the
amplitude of |q0 q1 ... q_{r-1}> sits at index int(bits, 2).  Amplitude
arrays come in two flavours: complex128 (floating backend) and object
arrays of ``Exact`` scalars, on which every operation here is performed
without rounding.

Separation of a state at a bipartition {A, B} is decided through the
Schmidt rank of the amplitude matrix reshaped along the cut: rank one
means the state is a tensor product across it.  On the floating backend
the rank is read off singular values; on the exact backend it is decided
by vanishing 2x2 minors, with no tolerance involved.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    Exact,
    Tolerance,
    abs2_scalar,
    scalar_is_zero,
    to_float,
)

#: Desk-scale register cap; larger registers are out of scope.
MAX_QUBITS = 12


class RegisterSizeError(ValueError):
    pass


@dataclass
class StateVector:
    """2^r amplitudes over qubits 0..r-1 (qubit 0 most significant)."""

    r: int
    amps: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        self.amps = np.asarray(self.amps)
        if self.amps.dtype != object:
            self.amps = self.amps.astype(complex)
        if self.amps.shape != (1 << self.r,):
            raise ValueError(f"expected {1 << self.r} amplitudes, "
                             f"got shape {self.amps.shape}")

    # ---- basics -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.amps.dtype == object

    def to_float(self) -> "StateVector":
        if not self.is_exact:
            return self
        flat = np.array([to_float(a) for a in self.amps], dtype=complex)
        return StateVector(self.r, flat, self.normalized)

    def norm_sq(self):
        if self.is_exact:
            total = Exact.ZERO
            for a in self.amps:
                total = total + abs2_scalar(a)
            return total
        return float(np.sum(np.abs(self.amps) ** 2))

    def norm(self) -> float:
        return float(np.sqrt(to_float(self.norm_sq()).real))

    def amp(self, bits: str):
        if len(bits) != self.r:
            raise ValueError("bitstring length does not match register")
        return self.amps[int(bits, 2)]

    def nonzero_items(self):
        for i in range(1 << self.r):
            if not scalar_is_zero(self.amps[i]):
                yield format(i, f"0{self.r}b"), self.amps[i]

    def approx_equal(self, other: "StateVector", tol: Tolerance = DEFAULT_TOL,
                     up_to_phase: bool = False) -> bool:
        if self.r != other.r:
            return False
        if self.is_exact and other.is_exact and not up_to_phase:
            return all(a == b for a, b in zip(self.amps, other.amps))
        u = self.to_float().amps
        v = other.to_float().amps
        if up_to_phase:
            ip = np.vdot(v, u)
            if abs(ip) > tol.abs_eps:
                u = u * (abs(ip) / ip)
        return bool(np.linalg.norm(u - v) <= tol.threshold(1.0))

    def __repr__(self):
        entries = ", ".join(f"|{b}>:{to_float(a):.4g}"
                            for b, a in list(self.nonzero_items())[:6])
        return f"<state r={self.r} {entries}>"


def basis_state(r: int, bits, exact: bool = True) -> StateVector:
    """Computational basis state |bits>, exact by default."""
    if isinstance(bits, str):
        idx = int(bits, 2) if bits else 0
    else:
        idx = int(bits)
    amps = np.empty(1 << r, dtype=object)
    amps[:] = Exact.ZERO
    amps[idx] = Exact.ONE
    sv = StateVector(r, amps)
    return sv if exact else sv.to_float()


def zero_state(r: int, exact: bool = True) -> StateVector:
    return basis_state(r, 0, exact)


def state_from_amplitudes(amps, normalized: bool = True) -> StateVector:
    amps = np.asarray(amps)
    r = int(np.log2(len(amps)))
    if 1 << r != len(amps):
        raise ValueError("amplitude count is not a power of two")
    return StateVector(r, amps, normalized)


# ---- tensor structure ---------------------------------------------------

def tensor(u: StateVector, v: StateVector, placement=None) -> StateVector:
    """Tensor product with u's qubits routed to ``placement`` labels.

    ``placement`` lists the labels (within the combined register) that
    receive u's qubits, in u's own qubit order after sorting; the
    remaining labels receive v's qubits in order.  Default: u occupies
    the leading labels.
    """
    r = u.r + v.r
    if placement is None:
        placement = range(u.r)
    placement = sorted(placement)
    if len(placement) != u.r or any(p < 0 or p >= r for p in placement):
        raise ValueError("placement must list u.r distinct labels within range")
    if len(set(placement)) != u.r:
        raise ValueError("placement labels must be distinct")
    others = [q for q in range(r) if q not in set(placement)]

    exact = u.is_exact and v.is_exact
    out = np.empty(1 << r, dtype=object if exact else complex)
    ua = u.amps if exact else u.to_float().amps
    va = v.amps if exact else v.to_float().amps
    for i in range(1 << r):
        iu = 0
        for p in placement:
            iu = (iu << 1) | ((i >> (r - 1 - p)) & 1)
        iv = 0
        for p in others:
            iv = (iv << 1) | ((i >> (r - 1 - p)) & 1)
        out[i] = ua[iu] * va[iv]
    return StateVector(r, out, u.normalized and v.normalized)


def validate_bipartition(r: int, a, b) -> tuple[frozenset, frozenset]:
    a, b = frozenset(a), frozenset(b)
    if not a or not b or (a & b) or (a | b) != frozenset(range(r)):
        raise ValueError("need two nonempty disjoint sets covering the register")
    return a, b


def _cut_matrix(psi: StateVector, a: frozenset, b: frozenset) -> np.ndarray:
    """Amplitudes reshaped to 2^|A| x 2^|B| along the cut."""
    perm = sorted(a) + sorted(b)
    tensor_view = psi.amps.reshape([2] * psi.r)
    return tensor_view.transpose(perm).reshape(1 << len(a), 1 << len(b))


def _rank_le_1_exact_matrix(mat) -> bool:
    pivot_pos = None
    for i in range(mat.shape[0]):
        for j in range(mat.shape[1]):
            if not mat[i, j].is_zero:
                pivot_pos = (i, j)
                break
        if pivot_pos:
            break
    if pivot_pos is None:
        return True
    p, q = pivot_pos
    pivot = mat[p, q]
    # rank <= 1 iff every 2x2 minor against the pivot entry vanishes
    for i in range(mat.shape[0]):
        for j in range(mat.shape[1]):
            if not (mat[i, j] * pivot == mat[i, q] * mat[p, j]):
                return False
    return True


def separates_at(psi: StateVector, a, b, tol: Tolerance = DEFAULT_TOL):
    """Schmidt-rank-1 test across {A, B}; factors returned on success.

    Returns (flag, (state_A, state_B) or None).  The factors are unit
    vectors from the SVD of the cut matrix (floating backend), unique up
    to phase; the yes/no decision itself is exact for exact states.
    """
    a, b = validate_bipartition(psi.r, a, b)
    mat = _cut_matrix(psi, a, b)
    if psi.is_exact:
        if not _rank_le_1_exact_matrix(mat):
            return False, None
        fmat = np.array([[to_float(x) for x in row] for row in mat], dtype=complex)
        u, s, vh = np.linalg.svd(fmat)
        return True, (StateVector(len(a), u[:, 0]), StateVector(len(b), vh[0, :]))
    u, s, vh = np.linalg.svd(mat.astype(complex))
    if len(s) > 1 and s[1] > tol.threshold(s[0]):
        return False, None
    return True, (StateVector(len(a), u[:, 0]), StateVector(len(b), vh[0, :]))


def bipartitions(r: int, require_split=None):
    """All unordered bipartitions {A, B}, ordered by |A| then lexicographic
    A, each pair listed once with the smaller side first.

    ``require_split`` restricts to bipartitions where both sides meet the
    given qubit set.
    """
    from itertools import combinations
    qubits = list(range(r))
    seen = set()
    for size in range(1, r):
        for combo in combinations(qubits, size):
            a = frozenset(combo)
            b = frozenset(qubits) - a
            key = frozenset((a, b))
            if key in seen:
                continue
            seen.add(key)
            if require_split is not None:
                s = frozenset(require_split)
                if not (a & s) or not (b & s):
                    continue
            yield a, b


def is_S_separable(psi: StateVector, s, tol: Tolerance = DEFAULT_TOL):
    """Search for a bipartition splitting S at which psi separates.

    Returns (True, (A, B)) with the first witness in enumeration order,
    or (False, None) meaning psi is S-entangled.
    """
    s = frozenset(s)
    if len(s) < 2:
        raise ValueError("S must contain at least two qubits")
    for a, b in bipartitions(psi.r, require_split=s):
        ok, _ = separates_at(psi, a, b, tol)
        if ok:
            return True, (a, b)
    return False, None


# ---- projections ---------------------------------------------------------

def _ones_mask(r: int, s) -> int:
    mask = 0
    for q in s:
        if q < 0 or q >= r:
            raise ValueError(f"qubit {q} outside register")
        mask |= 1 << (r - 1 - q)
    return mask


def ones_projection_norm(psi: StateVector, s) -> float:
    """l2 norm of the projection onto basis states with 1s throughout S."""
    mask = _ones_mask(psi.r, s)
    total = 0.0
    for i in range(1 << psi.r):
        if (i & mask) == mask:
            total += to_float(abs2_scalar(psi.amps[i])).real
    return float(np.sqrt(total))


def ones_component_is_zero(psi: StateVector, s, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Exact states: every S-ones amplitude is exactly zero; float states:
    projection norm below threshold scaled by the state norm."""
    mask = _ones_mask(psi.r, s)
    if psi.is_exact:
        return all(psi.amps[i].is_zero
                   for i in range(1 << psi.r) if (i & mask) == mask)
    return ones_projection_norm(psi, s) <= tol.threshold(psi.norm())


def remove_ones_component(psi: StateVector, s) -> StateVector:
    """Project out the S-ones component and renormalize (floating backend)."""
    out = psi.to_float().amps.copy()
    mask = _ones_mask(psi.r, s)
    for i in range(1 << psi.r):
        if (i & mask) == mask:
            out[i] = 0
    n = np.linalg.norm(out)
    if n < 1e-12:
        raise ValueError("state is entirely supported on the S-ones subspace")
    return StateVector(psi.r, out / n)


def target_density(psi: StateVector) -> np.ndarray:
    """Reduced 2x2 density matrix of qubit 0."""
    a = psi.to_float().amps.reshape(2, -1)
    return a @ a.conj().T


# ---- random states -------------------------------------------------------

def random_state(r: int, rng: np.random.Generator) -> StateVector:
    """Normalized Gaussian (Haar-like) state; register capped at 12."""
    if r > MAX_QUBITS:
        raise RegisterSizeError(f"register cap is {MAX_QUBITS} qubits")
    amps = rng.standard_normal(1 << r) + 1j * rng.standard_normal(1 << r)
    return StateVector(r, amps / np.linalg.norm(amps))


def random_product_state(a, b, rng: np.random.Generator) -> StateVector:
    """Tensor of independent Gaussian factors across the bipartition."""
    a, b = frozenset(a), frozenset(b)
    r = len(a) + len(b)
    if (a | b) != frozenset(range(r)) or (a & b):
        raise ValueError("bipartition must partition the register")
    return tensor(random_state(len(a), rng), random_state(len(b), rng),
                  placement=a)


def random_exact_state(r: int, rng: np.random.Generator,
                       span: int = 2) -> StateVector:
    """Unnormalized exact state with small Gaussian-integer amplitudes.

    Separability and simplification classification are scale invariant,
    so the exact suites use these without normalizing (flagged)."""
    if r > MAX_QUBITS:
        raise RegisterSizeError(f"register cap is {MAX_QUBITS} qubits")
    amps = np.empty(1 << r, dtype=object)
    while True:
        for i in range(1 << r):
            amps[i] = Exact(int(rng.integers(-span, span + 1)), 0,
                            int(rng.integers(-span, span + 1)), 0)
        if not all(a.is_zero for a in amps):
            break
    return StateVector(r, amps, normalized=False)


# ---- dump format ----------------------------------------------------------

class StateParseError(ValueError):
    def __init__(self, message, line_no=None):
        self.line_no = line_no
        super().__init__(message if line_no is None
                         else f"line {line_no}: {message}")


def format_state(psi: StateVector) -> str:
    """One line per nonzero amplitude: ``bitstring re im``, sorted."""
    lines = []
    f = psi.to_float()
    for bits, a in f.nonzero_items():
        a = complex(a)
        lines.append(f"{bits} {a.real!r} {a.imag!r}")
    return "\n".join(lines) + "\n"


def parse_state(text: str) -> StateVector:
    entries = {}
    r = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise StateParseError("expected 'bitstring re im'", ln)
        bits = parts[0]
        if set(bits) - {"0", "1"}:
            raise StateParseError(f"bad bitstring {bits!r}", ln)
        if r is None:
            r = len(bits)
        elif len(bits) != r:
            raise StateParseError("inconsistent bitstring lengths", ln)
        try:
            entries[bits] = complex(float(parts[1]), float(parts[2]))
        except ValueError:
            raise StateParseError("bad amplitude", ln) from None
    if r is None:
        raise StateParseError("empty state dump")
    amps = np.zeros(1 << r, dtype=complex)
    for bits, a in entries.items():
        amps[int(bits, 2)] = a
    n = np.linalg.norm(amps)
    return StateVector(r, amps, normalized=bool(abs(n - 1.0) <= 1e-6))
