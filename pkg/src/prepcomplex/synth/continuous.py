"""Circuits over continuously parametrized gates.

This is the intermediate form between exact state construction and
discrete synthesis: axis rotations, CNOT, and a two-qubit controlled
phase.  The controlled phase multiplies |11> by exp(-i*angle), matching
the sign convention used by the weighted graph builders.

Ops are plain tuples in application order:
    ("rx"|"ry"|"rz", angle, (target,))
    ("cnot", None, (control, target))
    ("cphase", angle, (control, target))
"""

import math

import numpy as np

from ..errors import ParseError
from ..statevec import apply_gate, zero_state
from .su2 import rotation_matrix

__all__ = ["ContinuousCircuit", "run_continuous", "lower_cphase",
           "cphase_matrix", "continuous_to_text", "continuous_from_text"]

_ROTATIONS = ("rx", "ry", "rz")

# basis order |control target>
_CNOT = np.array([[1, 0, 0, 0],
                  [0, 1, 0, 0],
                  [0, 0, 0, 1],
                  [0, 0, 1, 0]], dtype=complex)


def cphase_matrix(angle):
    return np.diag([1, 1, 1, np.exp(-1j * angle)]).astype(complex)


class ContinuousCircuit:
    __slots__ = ("num_qubits", "ops")

    def __init__(self, num_qubits, ops):
        if not 1 <= num_qubits <= 20:
            raise ValueError(f"qubit count {num_qubits} out of range")
        clean = []
        for op in ops:
            kind, angle, targets = op
            targets = tuple(int(t) for t in targets)
            if kind in _ROTATIONS:
                if len(targets) != 1:
                    raise ValueError(f"{kind} takes one target")
                angle = float(angle)
                if not math.isfinite(angle):
                    raise ValueError("rotation angle must be finite")
            elif kind == "cnot":
                if len(targets) != 2 or angle is not None:
                    raise ValueError("cnot takes two targets and no angle")
            elif kind == "cphase":
                if len(targets) != 2:
                    raise ValueError("cphase takes two targets")
                angle = float(angle)
                if not math.isfinite(angle):
                    raise ValueError("cphase angle must be finite")
            else:
                raise ValueError(f"unknown op kind {kind!r}")
            if len(set(targets)) != len(targets):
                raise ValueError("op targets must be distinct")
            for t in targets:
                if not 0 <= t < num_qubits:
                    raise ValueError(f"target {t} out of range")
            clean.append((kind, angle, targets))
        object.__setattr__(self, "num_qubits", num_qubits)
        object.__setattr__(self, "ops", tuple(clean))

    def __setattr__(self, name, value):
        raise AttributeError("ContinuousCircuit is immutable")

    def __len__(self):
        return len(self.ops)

    def rotation_count(self):
        return sum(1 for kind, _, _ in self.ops if kind in _ROTATIONS)

    def cphase_count(self):
        return sum(1 for kind, _, _ in self.ops if kind == "cphase")


def run_continuous(circuit, state=None):
    if state is None:
        state = zero_state(circuit.num_qubits)
    for kind, angle, targets in circuit.ops:
        if kind in _ROTATIONS:
            m = rotation_matrix(kind[1], angle)
        elif kind == "cnot":
            m = _CNOT
        else:
            m = cphase_matrix(angle)
        state = apply_gate(state, m, targets)
    return state


def lower_cphase(circuit):
    """Rewrite every controlled phase into rz and CNOT ops.

    Exact up to a global phase of exp(i*angle/4) per controlled phase.
    """
    ops = []
    for kind, angle, targets in circuit.ops:
        if kind != "cphase":
            ops.append((kind, angle, targets))
            continue
        c, t = targets
        half = angle / 2
        ops.extend([
            ("rz", -half, (c,)),
            ("rz", -half, (t,)),
            ("cnot", None, (c, t)),
            ("rz", half, (t,)),
            ("cnot", None, (c, t)),
        ])
    return ContinuousCircuit(circuit.num_qubits, ops)


def continuous_to_text(circuit):
    lines = [f"qubits {circuit.num_qubits}", "basis continuous"]
    for kind, angle, targets in circuit.ops:
        if kind == "cnot":
            lines.append(f"cnot {targets[0]} {targets[1]}")
        else:
            lines.append(f"{kind} {angle:.17g} " +
                         " ".join(str(t) for t in targets))
    return "\n".join(lines) + "\n"


def continuous_from_text(text):
    num_qubits = None
    saw_basis = False
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if num_qubits is None:
            if parts[0] != "qubits" or len(parts) != 2:
                raise ParseError("expected 'qubits N' header", lineno)
            try:
                num_qubits = int(parts[1])
            except ValueError:
                raise ParseError("qubit count is not an integer",
                                 lineno) from None
            continue
        if not saw_basis:
            if parts[0] != "basis" or len(parts) != 2:
                raise ParseError("expected 'basis continuous' line", lineno)
            if parts[1] != "continuous":
                raise ParseError(f"unexpected basis id {parts[1]!r}", lineno)
            saw_basis = True
            continue
        kind = parts[0]
        try:
            if kind == "cnot":
                if len(parts) != 3:
                    raise ValueError
                ops.append(("cnot", None, (int(parts[1]), int(parts[2]))))
            elif kind in _ROTATIONS:
                if len(parts) != 3:
                    raise ValueError
                ops.append((kind, float(parts[1]), (int(parts[2]),)))
            elif kind == "cphase":
                if len(parts) != 4:
                    raise ValueError
                ops.append(("cphase", float(parts[1]),
                            (int(parts[2]), int(parts[3]))))
            else:
                raise ParseError(f"unknown op {kind!r}", lineno)
        except ParseError:
            raise
        except ValueError:
            raise ParseError(f"malformed {kind} op", lineno) from None
    if num_qubits is None:
        raise ParseError("missing 'qubits N' header", 0)
    try:
        return ContinuousCircuit(num_qubits, ops)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None
