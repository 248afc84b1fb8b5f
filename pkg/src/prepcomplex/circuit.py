"""Circuit IR over named finite gate bases.

A Circuit is an ordered list of (gate name, targets) applied left to right
to |0...0>.  Bases are immutable; composite bases produced by `coarsen`
carry a dictionary of fragments whose serialized byte size is the
translation constant between the two bases.
"""

import math

import numpy as np

from .config import COMPOSITE_TOLERANCE, TOLERANCE
from .errors import ParseError
from .statevec import (
    StateVector,
    apply_gate,
    fidelity,
    phase_insensitive_distance,
    require_unitary,
    zero_state,
)

__all__ = [
    "Gate",
    "GateBasis",
    "Circuit",
    "CoarseningDictionary",
    "standard_basis",
    "bitflip_basis",
    "run",
    "circuit_unitary",
    "prepares_with_precision",
    "coarsen",
    "expand",
    "cz_fragment_ops",
    "toffoli_fragment_ops",
    "standard_cz_extension",
    "circuit_to_text",
    "circuit_from_text",
]


class Gate:
    """Named unitary gate of fixed arity (1, 2 or 3 qubits)."""

    __slots__ = ("name", "arity", "matrix")

    def __init__(self, name, arity, matrix, tol=TOLERANCE):
        if arity not in (1, 2, 3):
            raise ValueError(f"unsupported arity {arity}")
        m = require_unitary(matrix, tol)
        if m.shape != (2 ** arity, 2 ** arity):
            raise ValueError(
                f"gate {name}: matrix {m.shape} does not match arity {arity}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name, value):
        raise AttributeError("Gate is immutable")

    def __repr__(self):
        return f"Gate({self.name!r}, arity={self.arity})"


class GateBasis:
    """Ordered set of gates with distinct names."""

    __slots__ = ("id", "gates", "_by_name")

    def __init__(self, basis_id, gates):
        gates = tuple(gates)
        if not gates:
            raise ValueError("basis must be non-empty")
        names = [g.name for g in gates]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate gate names in basis {basis_id!r}")
        object.__setattr__(self, "id", basis_id)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "_by_name", {g.name: g for g in gates})

    def __setattr__(self, name, value):
        raise AttributeError("GateBasis is immutable")

    def gate(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(
                f"gate {name!r} not in basis {self.id!r}") from None

    def __contains__(self, name):
        return name in self._by_name

    def names(self):
        return tuple(g.name for g in self.gates)

    def one_qubit_gates(self):
        return tuple(g for g in self.gates if g.arity == 1)


class Circuit:
    """Validated op sequence; can always be run once constructed."""

    __slots__ = ("num_qubits", "ops", "basis")

    def __init__(self, num_qubits, ops, basis):
        if num_qubits < 1:
            raise ValueError("num_qubits must be >= 1")
        checked = []
        for name, targets in ops:
            g = basis.gate(name)
            targets = tuple(int(t) for t in targets)
            if len(targets) != g.arity:
                raise ValueError(
                    f"gate {name} wants {g.arity} target(s), got {targets}")
            if len(set(targets)) != len(targets):
                raise ValueError(f"repeated target in {name} {targets}")
            for t in targets:
                if not 0 <= t < num_qubits:
                    raise ValueError(
                        f"target {t} out of range for {num_qubits} qubits")
            checked.append((name, targets))
        object.__setattr__(self, "num_qubits", num_qubits)
        object.__setattr__(self, "ops", tuple(checked))
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Circuit is immutable")

    def __len__(self):
        return len(self.ops)

    def __repr__(self):
        return (f"Circuit(num_qubits={self.num_qubits}, "
                f"ops={len(self.ops)}, basis={self.basis.id!r})")


# ---------------------------------------------------------------------------
# Built-in bases

_H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
_S = np.diag([1, 1j])
_T = np.diag([np.exp(-1j * math.pi / 8), np.exp(1j * math.pi / 8)])
# Basis order |control target>, control listed first.
_CNOT = np.array([[1, 0, 0, 0],
                  [0, 1, 0, 0],
                  [0, 0, 0, 1],
                  [0, 0, 1, 0]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def standard_basis():
    """The complete basis {H, S, T, CNOT}."""
    return GateBasis("standard", [
        Gate("H", 1, _H),
        Gate("S", 1, _S),
        Gate("T", 1, _T),
        Gate("CNOT", 2, _CNOT),
    ])


def bitflip_basis():
    """Identity and NOT only; carrier for classical-string embeddings."""
    return GateBasis("bitflip", [
        Gate("I", 1, np.eye(2, dtype=complex)),
        Gate("N", 1, _X),
    ])


# ---------------------------------------------------------------------------
# Execution

def run(circuit, basis=None):
    """Apply ops in order to |0...0>."""
    b = basis if basis is not None else circuit.basis
    state = zero_state(circuit.num_qubits)
    for name, targets in circuit.ops:
        state = apply_gate(state, b.gate(name).matrix, targets)
    return state


def _embed(matrix, targets, num_qubits):
    # Full 2^n x 2^n embedding of a small gate, by acting on the column
    # axes of the identity.
    n = num_qubits
    k = len(targets)
    dim = 2 ** n
    cols = np.eye(dim, dtype=np.complex128).reshape((2,) * n + (dim,))
    op = np.asarray(matrix, dtype=np.complex128).reshape((2,) * (2 * k))
    out = np.tensordot(op, cols, axes=(tuple(range(k, 2 * k)), targets))
    out = np.moveaxis(out, tuple(range(k)), targets)
    return out.reshape(dim, dim)


def circuit_unitary(circuit, basis=None):
    """Compose the full matrix of a (small) circuit."""
    b = basis if basis is not None else circuit.basis
    dim = 2 ** circuit.num_qubits
    full = np.eye(dim, dtype=np.complex128)
    for name, targets in circuit.ops:
        full = _embed(b.gate(name).matrix, targets, circuit.num_qubits) @ full
    return full


def prepares_with_precision(circuit, basis, target, epsilon):
    """True iff |<target|C|0>|^2 >= 1 - epsilon.

    Boundary equality is resolved in the circuit's favor within the global
    tolerance, so an exact preparation passes at epsilon = 0.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    f = fidelity(run(circuit, basis), target)
    return f + TOLERANCE >= 1.0 - epsilon


# ---------------------------------------------------------------------------
# Coarsening

class CoarseningDictionary:
    """Composite name -> fine fragment, plus its own encoded size.

    The size in bits of the serialized dictionary is the additive constant
    separating complexities measured over the two bases.
    """

    __slots__ = ("entries", "encoded_size_bits")

    def __init__(self, entries):
        object.__setattr__(self, "entries", dict(entries))
        text = self.to_text()
        object.__setattr__(self, "encoded_size_bits",
                          8 * len(text.encode("ascii")))

    def __setattr__(self, name, value):
        raise AttributeError("CoarseningDictionary is immutable")

    def to_text(self):
        lines = []
        for name, frag in sorted(self.entries.items()):
            lines.append(f"def {name} {frag.num_qubits}")
            for gname, targets in frag.ops:
                lines.append(" ".join([gname] + [str(t) for t in targets]))
            lines.append("end")
        return "\n".join(lines) + ("\n" if lines else "")


def coarsen(fine, defs):
    """Build a coarse basis of composite gates over `fine`.

    `defs` maps composite name -> fragment Circuit over the fine basis on
    `arity` qubits.  Each composite's matrix is the composed fragment
    matrix; composition error beyond the composite tolerance is rejected.
    Returns (coarse basis containing fine gates plus composites, dictionary).
    """
    if not defs:
        return fine, CoarseningDictionary({})
    composites = []
    entries = {}
    for name in sorted(defs):
        frag = defs[name]
        if name in fine:
            raise ValueError(f"composite {name!r} shadows a fine gate")
        m = circuit_unitary(frag, fine)
        # Gate() re-checks unitarity at the composite tolerance.
        composites.append(Gate(name, frag.num_qubits, m,
                               tol=COMPOSITE_TOLERANCE))
        entries[name] = frag
    coarse_id = fine.id + "+" + "-".join(sorted(defs))
    basis = GateBasis(coarse_id, list(fine.gates) + composites)
    return basis, CoarseningDictionary(entries)


def expand(circuit, dictionary, fine):
    """Rewrite composite ops through the dictionary onto the fine basis."""
    ops = []
    for name, targets in circuit.ops:
        if name in fine:
            ops.append((name, targets))
            continue
        frag = dictionary.entries.get(name)
        if frag is None:
            raise KeyError(f"no dictionary entry for composite {name!r}")
        for gname, ftargets in frag.ops:
            ops.append((gname, tuple(targets[t] for t in ftargets)))
    return Circuit(circuit.num_qubits, ops, fine)


def cz_fragment_ops():
    """CZ = (I x H) CNOT (I x H); targets (control, target)."""
    return [("H", (1,)), ("CNOT", (0, 1)), ("H", (1,))]


def toffoli_fragment_ops():
    """Standard 15-gate Toffoli network with each inverse T spelled T^7.

    Net global phase from the three T^7 runs is -1, which the
    phase-insensitive composite check absorbs.
    """
    def tdg(q):
        return [("T", (q,))] * 7

    ops = [("H", (2,)), ("CNOT", (1, 2))]
    ops += tdg(2)
    ops += [("CNOT", (0, 2)), ("T", (2,)), ("CNOT", (1, 2))]
    ops += tdg(2)
    ops += [("CNOT", (0, 2)), ("T", (1,)), ("T", (2,)), ("H", (2,)),
            ("CNOT", (0, 1)), ("T", (0,))]
    ops += tdg(1)
    ops += [("CNOT", (0, 1))]
    return ops


def standard_cz_extension():
    """Standard basis extended with an exact composite CZ."""
    fine = standard_basis()
    frag = Circuit(2, cz_fragment_ops(), fine)
    return coarsen(fine, {"CZ": frag})


def composite_matches(fragment_matrix, declared, tol=COMPOSITE_TOLERANCE):
    return phase_insensitive_distance(fragment_matrix, declared) <= tol


# ---------------------------------------------------------------------------
# Text format
#
# Line-oriented and bit-exact:
#   # comment
#   qubits N
#   basis <id>
#   <gate> <t1> [t2 [t3]]

def circuit_to_text(circuit):
    lines = [f"qubits {circuit.num_qubits}", f"basis {circuit.basis.id}"]
    for name, targets in circuit.ops:
        lines.append(" ".join([name] + [str(t) for t in targets]))
    return "\n".join(lines) + "\n"


def circuit_from_text(text, basis):
    """Parse the text format against a known basis."""
    num_qubits = None
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "qubits":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("bad qubits header", position=lineno)
            num_qubits = int(parts[1])
            continue
        if parts[0] == "basis":
            if len(parts) != 2:
                raise ParseError("bad basis header", position=lineno)
            if parts[1] != basis.id:
                raise ParseError(
                    f"circuit wants basis {parts[1]!r}, have {basis.id!r}",
                    position=lineno)
            continue
        if num_qubits is None:
            raise ParseError("op before qubits header", position=lineno)
        name, *targets = parts
        if name not in basis:
            raise ParseError(f"unknown gate {name!r}", position=lineno)
        try:
            targets = [int(t) for t in targets]
        except ValueError:
            raise ParseError("non-integer target", position=lineno) from None
        ops.append((name, tuple(targets)))
    if num_qubits is None:
        raise ParseError("missing qubits header", position=0)
    return Circuit(num_qubits, ops, basis)
