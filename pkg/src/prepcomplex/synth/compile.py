"""Lowering of continuous circuits onto a discrete gate basis.

The error budget is split uniformly: for a target infidelity epsilon and
m continuous one-qubit gates after controlled-phase lowering, each gate
is synthesized to operator distance sqrt(epsilon) / (2 m).  Summing the
per-gate distances bounds the state error by sqrt(epsilon) / 2, hence the
infidelity by epsilon / 4, leaving a 4x cushion that a verification pass
confirms; on the rare miss the budget is halved and the pass repeats.
"""

import math

import numpy as np

from ..circuit import Circuit, run, standard_basis
from ..errors import BudgetError, NetTooCoarseError
from ..statevec import StateVector, fidelity, tensor
from .continuous import ContinuousCircuit, lower_cphase, run_continuous
from .net import get_net
from .sk import SKParams, sk_full
from .stateprep import prepare_state_exact
from .su2 import rotation_matrix

__all__ = ["compile_to_basis", "copies_circuit", "separable_circuit",
           "shortest_state_word", "product_words_circuit", "factor_product",
           "standard_generators"]


def _synthesize(axis, angle, budget, net, max_depth, cache):
    """Shortest-depth word for one rotation within the distance budget."""
    key = (axis, angle)
    hit = cache.get(key)
    if hit is not None and hit[1] <= budget:
        return hit
    target = rotation_matrix(axis, angle)
    last = None
    for depth in range(max_depth + 1):
        r = sk_full(target, params=SKParams(net.l0, depth), net=net)
        last = (r.word, r.distance)
        if r.distance <= budget:
            cache[key] = last
            return last
    raise BudgetError(
        f"rotation {axis} {angle:.6g}: distance {last[1]:.3g} above budget "
        f"{budget:.3g} at depth {max_depth}")


def compile_to_basis(circuit, basis=None, epsilon=1e-2, params=None,
                     net=None):
    """Discrete circuit preparing the same state to infidelity <= epsilon.

    Controlled phases are first rewritten to rz + CNOT; every remaining
    rotation is synthesized over the basis one-qubit gates at the lowest
    recursion depth meeting its share of the budget.
    """
    if not 0 < epsilon <= 1:
        raise ValueError(f"epsilon must be in (0, 1], got {epsilon}")
    if basis is None:
        basis = standard_basis()
    if "CNOT" not in basis:
        raise ValueError(f"basis {basis.id!r} lacks CNOT")
    if params is None:
        params = SKParams()
    lowered = lower_cphase(circuit)
    m = lowered.rotation_count()
    if m == 0:
        ops = [("CNOT", targets) for _, _, targets in lowered.ops]
        return Circuit(circuit.num_qubits, ops, basis)
    if net is None:
        net = get_net(basis, params.l0)
    reference = run_continuous(circuit)
    budget = math.sqrt(epsilon) / (2 * m)
    cache = {}
    for _ in range(4):
        ops = []
        for kind, angle, targets in lowered.ops:
            if kind == "cnot":
                ops.append(("CNOT", targets))
                continue
            word, _ = _synthesize(kind[1], angle, budget, net,
                                  params.depth, cache)
            ops.extend((g, targets) for g in word)
        result = Circuit(circuit.num_qubits, ops, basis)
        if fidelity(run(result), reference) >= 1 - epsilon:
            return result
        budget /= 2
    raise BudgetError(
        f"could not reach infidelity {epsilon} at depth {params.depth}")


def copies_circuit(base, m, epsilon, basis=None, params=None):
    """Circuit preparing m identical copies side by side.

    The single-copy circuit is compiled once at epsilon / (4 m) and
    replayed on disjoint registers, so all copies share one word list and
    the product of copy fidelities stays above 1 - epsilon.
    """
    if m < 1:
        raise ValueError("need at least one copy")
    one = compile_to_basis(base, basis=basis, epsilon=epsilon / (4 * m),
                           params=params)
    n = one.num_qubits
    ops = []
    for j in range(m):
        off = j * n
        ops.extend((name, tuple(t + off for t in targets))
                   for name, targets in one.ops)
    return Circuit(m * n, ops, one.basis)


def separable_circuit(factors, epsilon, basis=None, params=None):
    """Circuit preparing the tensor product of the factor states, each
    factor compiled independently at epsilon / J."""
    if not factors:
        raise ValueError("need at least one factor")
    share = epsilon / len(factors)
    ops = []
    offset = 0
    compiled_basis = None
    for s in factors:
        c = compile_to_basis(prepare_state_exact(s), basis=basis,
                             epsilon=share, params=params)
        compiled_basis = c.basis
        ops.extend((name, tuple(t + offset for t in targets))
                   for name, targets in c.ops)
        offset += s.num_qubits
    return Circuit(offset, ops, compiled_basis)


def shortest_state_word(state, epsilon, net):
    """Shortest net word w with |<state| w |0>|^2 >= 1 - epsilon, for a
    one-qubit state.  Scans the searchable core, whose words come in
    nondecreasing length."""
    if state.num_qubits != 1:
        raise ValueError("net words prepare one-qubit states only")
    cols = net.state_columns()
    fid = np.abs(cols @ state.amplitudes.conj()) ** 2
    for idx in np.flatnonzero(fid >= 1 - epsilon):
        return net.core_words[int(idx)]
    raise NetTooCoarseError(
        f"no net word reaches state fidelity 1 - {epsilon}")


def product_words_circuit(factors, epsilon, basis=None, params=None,
                          net=None):
    """Fully separable preparation by per-factor net words.

    Each one-qubit factor gets its shortest adequate net word at
    epsilon / J; concatenating them bounds the global infidelity by
    epsilon.  Much shorter than recursive synthesis at moderate epsilon.
    """
    if not factors:
        raise ValueError("need at least one factor")
    if basis is None:
        basis = standard_basis()
    if params is None:
        params = SKParams()
    if net is None:
        net = get_net(basis, params.l0)
    share = epsilon / len(factors)
    ops = []
    for j, s in enumerate(factors):
        word = shortest_state_word(s, share, net)
        ops.extend((g, (j,)) for g in word)
    return Circuit(len(factors), ops, basis)


def factor_product(state, tol=1e-9):
    """Split a state into one-qubit tensor factors, or None.

    Peels the leading qubit off whenever the amplitude matrix is rank one
    (second singular value below tol).
    """
    if state.num_qubits == 1:
        return [state]
    m = state.amplitudes.reshape(2, -1)
    u, s, vh = np.linalg.svd(m)
    if s[1] > tol:
        return None
    head = StateVector(1, u[:, 0] * np.sign(s[0]))
    rest = factor_product(StateVector(state.num_qubits - 1, vh[0, :]))
    if rest is None:
        return None
    return [head] + rest


def _basis_state_bits(state, tol=1e-9):
    amps = state.amplitudes
    idx = int(np.argmax(np.abs(amps)))
    if abs(abs(amps[idx]) - 1.0) > tol:
        return None
    return format(idx, f"0{state.num_qubits}b")


def standard_generators(basis=None, params=None, include_embed=True):
    """Candidate-circuit producers for minimum-over-candidates estimates.

    exact:     exact construction compiled onto the basis at epsilon.
    net-words: per-factor shortest net words, product states only.
    embed:     NOT/identity markers, computational basis states only.
    Producers that do not apply to a state yield no candidates.
    """
    if basis is None:
        basis = standard_basis()
    if params is None:
        params = SKParams()

    def exact(state, epsilon):
        try:
            yield compile_to_basis(prepare_state_exact(state), basis=basis,
                                   epsilon=epsilon, params=params)
        except (BudgetError, NetTooCoarseError):
            return

    def net_words(state, epsilon):
        factors = factor_product(state)
        if factors is None:
            return
        try:
            yield product_words_circuit(factors, epsilon, basis=basis,
                                        params=params)
        except NetTooCoarseError:
            return

    def embed(state, epsilon):
        from ..encode import embed_classical
        bits = _basis_state_bits(state)
        if bits is None:
            return
        circuit, _ = embed_classical(bits)
        yield circuit

    gens = [("exact", exact), ("net-words", net_words)]
    if include_embed:
        gens.append(("embed", embed))
    return gens
