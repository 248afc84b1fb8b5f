"""Dense statevector engine for N-qubit pure states.

Amplitudes are stored as one flat complex array in big-endian qubit order:
qubit 0 is the most significant bit of the array index.  All values are
immutable after construction and all operations are pure functions, so
everything here is safe to share across threads.
"""

import numpy as np

from .config import MAX_QUBITS, TOLERANCE
from .errors import SizeError

__all__ = [
    "StateVector",
    "zero_state",
    "basis_state",
    "random_state",
    "apply_gate",
    "fidelity",
    "tensor",
    "require_unitary",
    "operator_distance",
    "phase_insensitive_distance",
]


class StateVector:
    """Normalized pure state of `num_qubits` qubits."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits, amplitudes):
        if num_qubits < 1 or num_qubits > MAX_QUBITS:
            raise SizeError(
                f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}")
        amps = np.asarray(amplitudes, dtype=np.complex128)
        if amps.shape != (2 ** num_qubits,):
            raise ValueError(
                f"expected {2 ** num_qubits} amplitudes, got {amps.shape}")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > TOLERANCE:
            raise ValueError(f"state not normalized: |psi|^2 = {norm2!r}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "num_qubits", num_qubits)
        object.__setattr__(self, "amplitudes", amps)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"

    def dump_lines(self):
        """Serialize as one 'index re im' line per amplitude."""
        return [
            f"{i} {a.real:.17g} {a.imag:.17g}"
            for i, a in enumerate(self.amplitudes)
        ]


def zero_state(num_qubits):
    """The reference state |0...0> on `num_qubits` qubits."""
    return basis_state(num_qubits, 0)


def basis_state(num_qubits, index):
    if num_qubits < 1 or num_qubits > MAX_QUBITS:
        raise SizeError(
            f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}")
    dim = 2 ** num_qubits
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for {dim}")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


def random_state(num_qubits, rng):
    """Haar-ish random pure state (normalized complex Gaussian vector)."""
    dim = 2 ** num_qubits
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(num_qubits, v / np.linalg.norm(v))


def require_unitary(matrix, tol=TOLERANCE):
    """Validate U U+ = I entrywise within tol; returns the array."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    delta = m @ m.conj().T - np.eye(m.shape[0])
    worst = float(np.max(np.abs(delta)))
    if worst > tol:
        raise ValueError(f"matrix not unitary: max |UU+ - I| = {worst:.3e}")
    return m


def apply_gate(state, matrix, targets):
    """Apply a 2^k x 2^k unitary to the listed target qubits.

    Targets are ordered; for a CNOT the first target is the control.  The
    input state is never modified.
    """
    n = state.num_qubits
    targets = tuple(int(t) for t in targets)
    k = len(targets)
    if len(set(targets)) != k:
        raise ValueError(f"repeated target in {targets}")
    for t in targets:
        if not 0 <= t < n:
            raise ValueError(f"target {t} out of range for {n} qubits")
    m = np.asarray(matrix, dtype=np.complex128)
    if m.shape != (2 ** k, 2 ** k):
        raise ValueError(
            f"matrix shape {m.shape} does not act on {k} qubit(s)")

    psi = state.amplitudes.reshape((2,) * n)
    op = m.reshape((2,) * (2 * k))
    # Contract gate input axes against the target axes; tensordot puts the
    # gate output axes first, so move them back into place.
    out = np.tensordot(op, psi, axes=(tuple(range(k, 2 * k)), targets))
    out = np.moveaxis(out, tuple(range(k)), targets)
    return StateVector(n, out.reshape(2 ** n))


def fidelity(a, b):
    """|<a|b>|^2 for equal-size states."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(
            f"qubit mismatch: {a.num_qubits} vs {b.num_qubits}")
    return float(np.abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def tensor(a, b):
    """Kronecker product, a's qubits first."""
    n = a.num_qubits + b.num_qubits
    if n > MAX_QUBITS:
        raise SizeError(f"tensor product would need {n} qubits")
    return StateVector(n, np.kron(a.amplitudes, b.amplitudes))


def operator_distance(u, v):
    """Spectral-norm distance ||u - v||, the largest singular value."""
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    return float(np.linalg.norm(u - v, 2))


def phase_insensitive_distance(u, v):
    """min over theta of ||u - exp(i theta) v|| for unitary u, v.

    For unitaries this reduces to the smallest enclosing arc of the
    eigenphases of v+ u: the minimum equals 2 sin(arc/4).  Exact down to
    machine precision, unlike the naive sqrt(2 - 2|tr|) shortcut whose
    resolution bottoms out near sqrt(machine eps).
    """
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    w = v.conj().T @ u
    phases = np.sort(np.angle(np.linalg.eigvals(w)))
    if phases.size == 1:
        return 0.0
    gaps = np.diff(phases)
    wrap = 2 * np.pi - (phases[-1] - phases[0])
    arc = 2 * np.pi - max(float(np.max(gaps)), float(wrap))
    return float(2.0 * np.sin(arc / 4.0))
