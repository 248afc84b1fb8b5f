import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from prepcomplex.errors import SizeError
from prepcomplex.statevec import (
    StateVector,
    apply_gate,
    basis_state,
    fidelity,
    operator_distance,
    phase_insensitive_distance,
    random_state,
    tensor,
    zero_state,
)

H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
CNOT = np.array([[1, 0, 0, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1],
                 [0, 0, 1, 0]], dtype=complex)


def test_zero_state_amplitudes():
    assert np.allclose(zero_state(1).amplitudes, [1, 0])
    assert np.allclose(zero_state(2).amplitudes, [1, 0, 0, 0])
    s3 = zero_state(3)
    assert s3.amplitudes.shape == (8,)
    assert s3.amplitudes[0] == 1


def test_zero_state_size_errors():
    with pytest.raises(SizeError):
        zero_state(0)
    with pytest.raises(SizeError):
        zero_state(21)


def test_construction_rejects_unnormalized():
    with pytest.raises(ValueError):
        StateVector(1, [1.0, 1.0])
    with pytest.raises(ValueError):
        StateVector(2, [1.0, 0.0])  # wrong length


def test_statevector_immutable():
    s = zero_state(1)
    with pytest.raises(AttributeError):
        s.num_qubits = 2
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0.0


def test_apply_hadamard():
    out = apply_gate(zero_state(1), H, [0])
    assert np.allclose(out.amplitudes, [0.70711, 0.70711], atol=1e-5)
    assert abs(out.amplitudes[0] - 1 / math.sqrt(2)) < 1e-12


def test_apply_identity_any_state():
    rng = np.random.default_rng(7)
    s = random_state(3, rng)
    out = apply_gate(s, np.eye(2), [1])
    assert np.allclose(out.amplitudes, s.amplitudes)


def test_cnot_action_table():
    # |control target>: flips the target iff control is 1.
    table = {0: 0, 1: 1, 2: 3, 3: 2}
    for src, dst in table.items():
        out = apply_gate(basis_state(2, src), CNOT, [0, 1])
        assert np.allclose(out.amplitudes, basis_state(2, dst).amplitudes)


def test_cnot_reversed_targets():
    # control on qubit 1: |01> -> |11>
    out = apply_gate(basis_state(2, 1), CNOT, [1, 0])
    assert np.allclose(out.amplitudes, basis_state(2, 3).amplitudes)


def test_apply_gate_errors():
    s = zero_state(2)
    with pytest.raises(ValueError):
        apply_gate(s, H, [0, 1])          # dim mismatch
    with pytest.raises(ValueError):
        apply_gate(s, CNOT, [0, 0])       # repeated target
    with pytest.raises(ValueError):
        apply_gate(s, H, [2])             # out of range


def test_apply_gate_input_unmodified():
    s = zero_state(1)
    apply_gate(s, H, [0])
    assert s.amplitudes[0] == 1.0


def test_fidelity_values():
    s = random_state(2, np.random.default_rng(1))
    assert fidelity(s, s) == pytest.approx(1.0, abs=1e-12)
    assert fidelity(zero_state(1), basis_state(1, 1)) == 0.0
    plus = apply_gate(zero_state(1), H, [0])
    assert fidelity(zero_state(1), plus) == pytest.approx(0.5, abs=1e-12)


def test_fidelity_symmetry():
    rng = np.random.default_rng(2)
    for _ in range(20):
        a, b = random_state(2, rng), random_state(2, rng)
        assert abs(fidelity(a, b) - fidelity(b, a)) <= 1e-12


def test_fidelity_dim_mismatch():
    with pytest.raises(ValueError):
        fidelity(zero_state(1), zero_state(2))


def test_tensor_products():
    assert np.allclose(tensor(zero_state(1), zero_state(1)).amplitudes,
                       [1, 0, 0, 0])
    one = basis_state(1, 1)
    assert np.allclose(tensor(one, zero_state(1)).amplitudes, [0, 0, 1, 0])
    plus = apply_gate(zero_state(1), H, [0])
    assert np.allclose(tensor(plus, plus).amplitudes, [0.5] * 4)


def test_tensor_size_cap():
    with pytest.raises(SizeError):
        tensor(zero_state(11), zero_state(10))


def test_operator_distance_values():
    u = unitary_group.rvs(2, random_state=3)
    assert operator_distance(u, u) == 0.0
    assert operator_distance(np.eye(2), np.diag([1, -1])) == pytest.approx(2.0)


def test_phase_insensitive_quotient():
    u = unitary_group.rvs(2, random_state=4)
    assert phase_insensitive_distance(u, np.exp(0.73j) * u) <= 1e-12


def test_phase_insensitive_matches_grid_search():
    # The closed form must lower-bound any sampled phase and get within
    # grid resolution of the best sampled one.
    rng = np.random.default_rng(5)
    thetas = np.linspace(0, 2 * math.pi, 4001)
    for _ in range(10):
        u = unitary_group.rvs(2, random_state=rng)
        v = unitary_group.rvs(2, random_state=rng)
        exact = phase_insensitive_distance(u, v)
        grid = min(operator_distance(u, np.exp(1j * t) * v) for t in thetas)
        assert exact <= grid + 1e-12
        # grid spacing is ~1.6e-3 and the objective has slope <= 1
        assert grid - exact <= 1e-3


def test_phase_insensitive_resolution_below_sqrt_eps():
    # Distances near 1e-9 must not collapse to zero.
    delta = 1e-9
    rz = np.diag([np.exp(-0.5j * delta), np.exp(0.5j * delta)])
    d = phase_insensitive_distance(np.eye(2), rz)
    assert d == pytest.approx(2 * math.sin(delta / 4), rel=1e-4)


def test_norm_preserved_under_random_gates():
    rng = np.random.default_rng(6)
    s = random_state(3, rng)
    for _ in range(50):
        u = unitary_group.rvs(2, random_state=rng)
        t = int(rng.integers(3))
        s = apply_gate(s, u, [t])
        assert abs(np.sum(np.abs(s.amplitudes) ** 2) - 1.0) <= 1e-10


def test_apply_distributes_over_composition():
    rng = np.random.default_rng(8)
    for _ in range(10):
        s = random_state(2, rng)
        u = unitary_group.rvs(4, random_state=rng)
        v = unitary_group.rvs(4, random_state=rng)
        seq = apply_gate(apply_gate(s, u, [0, 1]), v, [0, 1])
        onestep = apply_gate(s, v @ u, [0, 1])
        assert np.allclose(seq.amplitudes, onestep.amplitudes, atol=1e-9)


def test_dump_lines_roundtrip_values():
    s = random_state(2, np.random.default_rng(9))
    lines = s.dump_lines()
    assert len(lines) == 4
    parsed = np.array([complex(float(p[1]), float(p[2]))
                       for p in (ln.split() for ln in lines)])
    assert np.allclose(parsed, s.amplitudes, atol=1e-15)
