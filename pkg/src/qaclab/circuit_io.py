"""Line-oriented text format for circuits.

    qubits 4
    inputs 3
    ancillas 0
    layer 0.5
    u 0 H
    u 2 H
    layer 1
    cz 0 1
    cz 2 3
    layer 1.5
    u 2 H
    layer 2
    cz 0 2
    layer 2.5
    u 0 H

Header first (``qubits`` = 1 + inputs + ancillas), then ``layer`` blocks
with strictly increasing half-integer labels.  Half-integer layers hold
1-qubit entries ``u <qubit> <I|X|Y|Z|H>`` or
``u <qubit> matrix <re im re im re im re im>`` (row-major); integer
layers hold ``cz <q>...`` or ``geta <re> <im> <q>...``.  ``#`` starts a
comment.  The serializer emits a canonical form (sorted entries, empty
layers omitted) that parses back to an equal circuit; canonical files
round-trip byte for byte.

Parse failures raise ``CircuitParseError`` whose ``kind`` names the
error class:

    bad-header          missing/duplicate/ill-formed header, count mismatch
    bad-layer-index     label not a multiple of 0.5, out of order, duplicate
    entry-outside-layer gate line before any layer line
    unknown-directive   unrecognized first word
    bad-qubit           non-integer or out-of-range qubit
    duplicate-qubit     qubit listed twice in one gate or layer
    layer-kind-mismatch u on an integer layer / cz-geta on a half layer
    unknown-gate-name   1-qubit name outside I X Y Z H
    bad-matrix          matrix entry count or value malformed
    non-unitary         explicit matrix fails the unitarity check
    bad-eta             geta phase malformed
    geta-modulus        geta phase without unit modulus
    geta-trivial        geta phase equal to 1
    register-too-large  more qubits than the 12-qubit cap

Validation failures of an assembled circuit (overlapping gates in one
layer, layout mismatch) surface as ``CircuitValidationError`` with the
invariant named in ``kind``.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .circuit import (
    Circuit,
    CircuitValidationError,
    Gate1q,
    MultiGate,
    unitary_close,
)
from .numerics import DEFAULT_TOL, Tolerance, to_float


class CircuitParseError(ValueError):
    def __init__(self, message, line_no=None, kind="syntax"):
        self.line_no = line_no
        self.kind = kind
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{prefix}{message} [{kind}]")


def _parse_int(tok, ln, what="integer"):
    try:
        return int(tok)
    except ValueError:
        raise CircuitParseError(f"expected {what}, got {tok!r}", ln,
                                "bad-qubit" if what == "qubit" else "bad-header") from None


def _parse_float(tok, ln, kind):
    try:
        return float(tok)
    except ValueError:
        raise CircuitParseError(f"expected a number, got {tok!r}", ln, kind) from None


def parse_circuit(text: str, tol: Tolerance = DEFAULT_TOL) -> Circuit:
    header = {}
    current_layer = None  # label as Fraction
    seen_layers = []
    singles = {}  # half label -> dict qubit -> Gate1q
    multis = {}   # int label -> list[MultiGate]

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        word = parts[0]

        if word in ("qubits", "inputs", "ancillas"):
            if current_layer is not None:
                raise CircuitParseError("header after layer block", ln, "bad-header")
            if word in header:
                raise CircuitParseError(f"duplicate header {word!r}", ln, "bad-header")
            if len(parts) != 2:
                raise CircuitParseError(f"{word} needs one number", ln, "bad-header")
            value = _parse_int(parts[1], ln)
            if value < 0 or (word == "qubits" and value < 1):
                raise CircuitParseError(f"bad {word} count", ln, "bad-header")
            header[word] = value
            continue

        if word == "layer":
            if len(header) < 3:
                raise CircuitParseError("layer before complete header", ln, "bad-header")
            if len(parts) != 2:
                raise CircuitParseError("layer needs one label", ln, "bad-layer-index")
            try:
                label = Fraction(parts[1])
            except ValueError:
                raise CircuitParseError(f"bad layer label {parts[1]!r}", ln,
                                        "bad-layer-index") from None
            if label * 2 != int(label * 2) or label < Fraction(1, 2):
                raise CircuitParseError("layer label must be a positive multiple "
                                        "of 0.5", ln, "bad-layer-index")
            if seen_layers and label <= seen_layers[-1]:
                raise CircuitParseError("layer labels must increase", ln,
                                        "bad-layer-index")
            seen_layers.append(label)
            current_layer = label
            continue

        if word in ("u", "cz", "geta"):
            if current_layer is None:
                raise CircuitParseError("gate entry before any layer", ln,
                                        "entry-outside-layer")
            half_layer = current_layer.denominator == 2
            if word == "u":
                if not half_layer:
                    raise CircuitParseError("1-qubit gate on an integer layer",
                                            ln, "layer-kind-mismatch")
                _parse_u(parts, ln, singles.setdefault(current_layer, {}),
                         header["qubits"], tol)
            else:
                if half_layer:
                    raise CircuitParseError("multiqubit gate on a half layer",
                                            ln, "layer-kind-mismatch")
                multis.setdefault(current_layer, []).append(
                    _parse_multi(word, parts, ln, header["qubits"]))
            continue

        raise CircuitParseError(f"unknown directive {word!r}", ln,
                                "unknown-directive")

    for key in ("qubits", "inputs", "ancillas"):
        if key not in header:
            raise CircuitParseError(f"missing header {key!r}", None, "bad-header")
    r = header["qubits"]
    if r > 12:
        raise CircuitParseError("more than 12 qubits", None, "register-too-large")
    if r != 1 + header["inputs"] + header["ancillas"]:
        raise CircuitParseError("qubits must equal 1 + inputs + ancillas",
                                None, "bad-header")

    depth = 0
    for label, gates in multis.items():
        if gates:
            depth = max(depth, int(label))
    for label in singles:
        depth = max(depth, int(label - Fraction(1, 2)))

    single_layers = [dict(singles.get(Fraction(2 * i + 1, 2), {}))
                     for i in range(depth + 1)]
    multi_layers = [list(multis.get(Fraction(i + 1), []))
                    for i in range(depth)]
    return Circuit(r, header["inputs"], header["ancillas"],
                   single_layers, multi_layers)


def _parse_u(parts, ln, layer, r, tol):
    if len(parts) < 3:
        raise CircuitParseError("u needs a qubit and a gate", ln, "bad-matrix")
    q = _parse_int(parts[1], ln, "qubit")
    if q < 0 or q >= r:
        raise CircuitParseError(f"qubit {q} out of range", ln, "bad-qubit")
    if q in layer:
        raise CircuitParseError(f"two gates on qubit {q} in one layer", ln,
                                "duplicate-qubit")
    if parts[2] == "matrix":
        nums = parts[3:]
        if len(nums) != 8:
            raise CircuitParseError("matrix needs 8 numbers", ln, "bad-matrix")
        vals = [_parse_float(t, ln, "bad-matrix") for t in nums]
        entries = np.array([complex(vals[2 * i], vals[2 * i + 1])
                            for i in range(4)]).reshape(2, 2)
        if not unitary_close(entries, tol):
            raise CircuitParseError("matrix is not unitary", ln, "non-unitary")
        layer[q] = Gate1q(entries)
    else:
        if len(parts) != 3:
            raise CircuitParseError("named gate takes no extra arguments", ln,
                                    "bad-matrix")
        name = parts[2]
        try:
            layer[q] = Gate1q.named(name)
        except ValueError:
            raise CircuitParseError(f"unknown gate name {name!r}", ln,
                                    "unknown-gate-name") from None


def _parse_multi(word, parts, ln, r) -> MultiGate:
    if word == "cz":
        qubit_toks = parts[1:]
        eta = None
    else:
        if len(parts) < 3:
            raise CircuitParseError("geta needs a phase and qubits", ln, "bad-eta")
        re = _parse_float(parts[1], ln, "bad-eta")
        im = _parse_float(parts[2], ln, "bad-eta")
        eta = complex(re, im)
        qubit_toks = parts[3:]
    qubits = []
    for tok in qubit_toks:
        q = _parse_int(tok, ln, "qubit")
        if q < 0 or q >= r:
            raise CircuitParseError(f"qubit {q} out of range", ln, "bad-qubit")
        if q in qubits:
            raise CircuitParseError(f"qubit {q} repeated in gate", ln,
                                    "duplicate-qubit")
        qubits.append(q)
    if word == "cz":
        return MultiGate(frozenset(qubits), "cz")
    if abs(abs(eta) - 1.0) > 1e-9:
        raise CircuitParseError("geta phase must have modulus 1", ln,
                                "geta-modulus")
    if abs(eta - 1.0) <= 1e-12:
        raise CircuitParseError("geta phase must differ from 1", ln,
                                "geta-trivial")
    return MultiGate(frozenset(qubits), "geta", eta)


def _format_label(label: float) -> str:
    if label == int(label):
        return str(int(label))
    return f"{label:g}"


def serialize_circuit(circuit: Circuit) -> str:
    """Canonical text form: sorted entries, empty layers omitted."""
    lines = [f"qubits {circuit.r}",
             f"inputs {circuit.n_inputs}",
             f"ancillas {circuit.n_ancillas}"]
    for i in range(circuit.depth + 1):
        layer = circuit.single_layers[i]
        if layer:
            lines.append(f"layer {_format_label(i + 0.5)}")
            for q in sorted(layer):
                g = layer[q]
                if g.name is not None:
                    lines.append(f"u {q} {g.name}")
                else:
                    m = g.float_mat()
                    nums = " ".join(f"{float(v)!r}" for e in m.reshape(-1)
                                    for v in (e.real, e.imag))
                    lines.append(f"u {q} matrix {nums}")
        if i < circuit.depth and circuit.multi_layers[i]:
            lines.append(f"layer {i + 1}")
            for g in sorted(circuit.multi_layers[i],
                            key=lambda g: min(g.qubits) if g.qubits else -1):
                qs = " ".join(map(str, sorted(g.qubits)))
                if g.kind == "cz":
                    lines.append(f"cz {qs}".rstrip())
                else:
                    e = to_float(g.eta)
                    lines.append(f"geta {e.real!r} {e.imag!r} {qs}".rstrip())
    return "\n".join(lines) + "\n"
