"""Exact preparation circuits for arbitrary pure states.

Works backwards: starting from the target, each round disentangles the
current last qubit with one multiplexed z-rotation (phase alignment) and
one multiplexed y-rotation (amplitude rotation) per branch of the earlier
qubits, shrinking the live register by one.  Reversing the accumulated
ops with negated angles yields the forward circuit from |0...0>.

Multiplexed rotations lower to plain rotations and CNOTs by the usual
half-sum / half-difference recursion; subtrees whose angles all vanish
are dropped together with their CNOT pair, which collapses all-zero and
uniform stages.  Fidelity is exact up to a global phase; the op count
stays below 8 * 2^N.
"""

import math

import numpy as np

from .continuous import ContinuousCircuit
from .su2 import ry, rz

__all__ = ["prepare_state_exact"]

_ZERO = 1e-12


def _mux_rotation(kind, angles, controls, target):
    """Branch-selected rotation about one axis, lowered to 1q + CNOT ops.

    angles has one entry per assignment of the control qubits, indexed
    big-endian (controls[0] is the most significant bit).
    """
    if all(abs(a) < _ZERO for a in angles):
        return []
    if not controls:
        return [(kind, angles[0], (target,))]
    half = len(angles) // 2
    plus = [(angles[i] + angles[i + half]) / 2 for i in range(half)]
    minus = [(angles[i] - angles[i + half]) / 2 for i in range(half)]
    c = controls[0]
    head = _mux_rotation(kind, plus, controls[1:], target)
    tail = _mux_rotation(kind, minus, controls[1:], target)
    if not tail:
        # the surrounding CNOT pair would cancel
        return head
    link = ("cnot", None, (c, target))
    return head + [link] + tail + [link]


def prepare_state_exact(target):
    """Continuous circuit taking |0...0> to the target state exactly
    (up to global phase)."""
    n = target.num_qubits
    amps = np.array(target.amplitudes, dtype=complex)
    reverse_ops = []
    for t in range(n - 1, -1, -1):
        view = amps.reshape(2 ** t, 2)
        phase_angles = []
        tilt_angles = []
        for b in range(view.shape[0]):
            a, rest = view[b, 0], view[b, 1]
            if abs(rest) < _ZERO:
                phase_angles.append(0.0)
                tilt_angles.append(0.0)
                continue
            beta = 0.0
            if abs(a) >= _ZERO:
                beta = math.atan2(a.imag, a.real) - math.atan2(
                    rest.imag, rest.real)
            phase_angles.append(beta)
            tilt_angles.append(-2 * math.atan2(abs(rest), abs(a)))
        controls = tuple(range(t))
        block = (_mux_rotation("rz", phase_angles, controls, t) +
                 _mux_rotation("ry", tilt_angles, controls, t))
        reverse_ops.extend(block)
        for b in range(view.shape[0]):
            m = ry(tilt_angles[b]) @ rz(phase_angles[b])
            view[b, :] = m @ view[b, :]
        residue = float(np.max(np.abs(view[:, 1])))
        if residue > 1e-9:
            raise AssertionError(
                f"disentangling qubit {t} left residue {residue:.3e}")
        amps = view[:, 0].copy()
    forward = []
    for kind, angle, targets in reversed(reverse_ops):
        if kind == "cnot":
            forward.append((kind, angle, targets))
        else:
            forward.append((kind, -angle, targets))
    return ContinuousCircuit(n, forward)
