import numpy as np
import pytest

from majorana_ions.dynamics import Schedule, ground_transfer
from majorana_ions.mfqubit import (
    apply_gate,
    bloch_vector,
    encode,
    expectation,
    gate_unitary,
    measure_parity,
    memory_transfer,
    tomography,
)
from majorana_ions.model import SpinParams, with_nnn
from majorana_ions.spectral import ghz_states

S = 1 / np.sqrt(2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_encode_basis_states(n):
    q0 = encode(1, 0, n)
    q1 = encode(0, 1, n)
    g0, g1 = ghz_states(n)
    assert abs(np.vdot(g0, q0.state)) == pytest.approx(1.0)
    assert abs(np.vdot(g1, q1.state)) == pytest.approx(1.0)
    assert expectation(q0, "z") == pytest.approx(-1.0)
    assert expectation(q1, "z") == pytest.approx(1.0)
    assert q0.leakage == pytest.approx(0.0, abs=1e-12)


def test_encode_superpositions_bloch_vectors():
    # X_1 flips |<-> to -|<->, so x Psi0 = -Psi1 under the real-positive phase convention
    q = encode(1, 0)
    np.testing.assert_allclose(apply_gate(q, "x", np.pi).state, 1j * q.psi1, atol=1e-12)
    np.testing.assert_allclose(bloch_vector(encode(S, S)), [-1, 0, 0], atol=1e-12)
    np.testing.assert_allclose(bloch_vector(encode(S, -S)), [1, 0, 0], atol=1e-12)
    np.testing.assert_allclose(bloch_vector(encode(S, 1j * S)), [0, 1, 0], atol=1e-12)


def test_encode_on_nnn_chain_keeps_z_eigenvalue():
    q = encode(1, 0, chain=with_nnn(SpinParams.ideal(4)))
    assert expectation(q, "z") == pytest.approx(-1.0, abs=1e-12)


def test_encode_rejects_unnormalized():
    with pytest.raises(ValueError):
        encode(1, 1)


def test_x_pi_swaps_basis_states():
    q = apply_gate(encode(1, 0), "x", np.pi)
    assert abs(np.vdot(q.psi1, q.state)) == pytest.approx(1.0)
    assert q.leakage == pytest.approx(0.0, abs=1e-12)


def test_z_rotation_is_relative_phase():
    q = apply_gate(encode(S, S), "z", 0.8)
    a, b = np.vdot(q.psi0, q.state), np.vdot(q.psi1, q.state)
    assert abs(a) == pytest.approx(S) and abs(b) == pytest.approx(S)
    assert np.angle(b / a) == pytest.approx(-0.8)


def test_rotation_angles_add():
    q = encode(0.6, 0.8)
    a = apply_gate(apply_gate(q, "y", 0.3), "y", 0.9)
    b = apply_gate(q, "y", 1.2)
    np.testing.assert_allclose(a.state, b.state, atol=1e-13)


def test_bloch_rotation_about_y():
    q = apply_gate(encode(1, 0), "y", np.pi / 2)
    # z = -1 rotated by +pi/2 about y gives x = -1
    np.testing.assert_allclose(bloch_vector(q), [-1, 0, 0], atol=1e-12)


def test_conjugated_z_rotation_equals_y_rotation():
    n, th = 3, 0.7
    lhs = gate_unitary("x", -np.pi / 2, n) @ gate_unitary("z", th, n) @ gate_unitary("x", np.pi / 2, n)
    np.testing.assert_allclose(lhs, gate_unitary("y", th, n), atol=1e-13)


def test_gates_are_unitary():
    U = gate_unitary("y", 1.1, 4)
    np.testing.assert_allclose(U @ U.conj().T, np.eye(16), atol=1e-13)
    with pytest.raises(ValueError):
        apply_gate(encode(1, 0), "w", 1.0)


def test_parity_readout_deterministic_for_basis_states():
    assert measure_parity(encode(1, 0), 100) == {1: 100, -1: 0}
    assert measure_parity(encode(0, 1), 100) == {1: 0, -1: 100}


def test_parity_readout_statistics():
    q = encode(np.sqrt(0.3), np.sqrt(0.7))
    shots = 20000
    counts = measure_parity(q, shots, seed=11)
    sigma = np.sqrt(shots * 0.3 * 0.7)
    assert abs(counts[1] - 0.3 * shots) < 5 * sigma
    assert measure_parity(q, shots, seed=11) == counts
    with pytest.raises(ValueError):
        measure_parity(q, 0)


def test_tomography_recovers_bloch_vector():
    q = apply_gate(encode(1, 0), "x", 1.0)
    est = tomography(q, 50000, seed=2)
    true = bloch_vector(q)
    assert np.all(np.abs(est.vector - true) < 5 * np.maximum(est.stderr, 1e-3))
    assert est.shots == 50000


def test_tomography_of_mixture_averages_to_origin():
    states = [encode(1, 0), encode(0, 1), encode(S, S), encode(S, -S)]
    avg = np.mean([tomography(q, 20000, seed=k).vector for k, q in enumerate(states)], axis=0)
    np.testing.assert_allclose(avg, 0, atol=0.03)


def test_memory_single_chain_matches_ground_transfer():
    sched = Schedule(60.0)
    reg = memory_transfer([1, 0], 1, 3, sched)
    assert reg.raw_fidelity == pytest.approx(1 - ground_transfer(SpinParams.ideal(3), sched).final_error, abs=1e-12)


def test_memory_bell_input_two_chains():
    reg = memory_transfer([S, 0, 0, S], 2, 3)
    assert reg.phase_opt_fidelity >= 0.99
    assert reg.raw_fidelity <= reg.phase_opt_fidelity + 1e-12
    assert reg.joint_state.shape == (64,)
    assert np.linalg.norm(reg.joint_state) == pytest.approx(1.0, abs=1e-8)


def test_memory_product_input_factorizes():
    reg = memory_transfer([1, 0, 0, 0], 2, 3)
    single = memory_transfer([1, 0], 1, 3)
    assert reg.raw_fidelity == pytest.approx(single.raw_fidelity**2, abs=1e-10)


def test_memory_budget_and_input_checks():
    with pytest.raises(ValueError):
        memory_transfer([1, 0, 0, 0, 0, 0, 0, 0], 3, 5)
    with pytest.raises(ValueError):
        memory_transfer([1, 0, 0], 2, 3)
    with pytest.raises(ValueError):
        memory_transfer([1, 1, 0, 0], 2, 3)


def test_zero_angle_is_identity():
    q = encode(0.6, 0.8j)
    for axis in "xyz":
        np.testing.assert_array_equal(apply_gate(q, axis, 0.0).state, q.state)


def test_equal_superposition_parity_frequency():
    counts = measure_parity(encode(S, S), 100_000, seed=5)
    assert abs(counts[1] / 100_000 - 0.5) < 0.01


def test_tomography_after_quarter_turn():
    q = apply_gate(encode(1, 0), "x", np.pi / 2)
    # z = -1 rotated by +pi/2 about x gives y = +1
    np.testing.assert_allclose(bloch_vector(q), [0, 1, 0], atol=1e-12)
    est = tomography(q, 20000, seed=4)
    assert np.linalg.norm(est.vector) <= 1 + 5 * np.linalg.norm(est.stderr)
    assert est.vector[1] == pytest.approx(1.0)


def test_memory_fidelity_grows_with_duration():
    fids = [memory_transfer([S, S], 1, 3, Schedule(T)).phase_opt_fidelity for T in (25.0, 50.0, 100.0)]
    assert fids[0] < fids[1] < fids[2]
