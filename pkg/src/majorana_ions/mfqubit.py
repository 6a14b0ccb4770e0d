"""The Majorana-fermion qubit: encoding, logical gates, parity readout,
tomography and the multi-chain quantum memory."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    Schedule,
    all_down_state,
    evolve_scheduled,
    ground_target,
    single_flip_coefficients,
    single_flip_state,
)
from .model import SpinParams, build_spin
from .pauli_ops import MAX_DENSE_SITES, mfq_pauli, parity_diagonal, realize
from .spectral import ground_subspace

AXES = ("x", "y", "z")


@dataclass(frozen=True)
class EncodedQubit:
    chain: SpinParams
    psi0: np.ndarray
    psi1: np.ndarray
    state: np.ndarray

    @property
    def N(self) -> int:
        return self.chain.N

    @property
    def leakage(self) -> float:
        """Weight outside ``span{psi0, psi1}``."""
        inside = abs(np.vdot(self.psi0, self.state)) ** 2 + abs(np.vdot(self.psi1, self.state)) ** 2
        return float(np.vdot(self.state, self.state).real - inside)

    def with_state(self, state: np.ndarray) -> "EncodedQubit":
        return EncodedQubit(self.chain, self.psi0, self.psi1, state)


@dataclass(frozen=True)
class BlochEstimate:
    vector: np.ndarray
    stderr: np.ndarray
    shots: int
    seed: int


@dataclass(frozen=True)
class MemoryRegister:
    K: int
    N: int
    joint_state: np.ndarray
    input_coeffs: np.ndarray
    raw_fidelity: float
    phase_opt_fidelity: float
    chain_overlaps: np.ndarray  # [chain, logical] -> <Psi_i|U|init_i>


def _check_normalized(c, what="amplitudes"):
    c = np.asarray(c, dtype=complex)
    if abs(np.vdot(c, c).real - 1) > 1e-10:
        raise ValueError(f"{what} must be normalized")
    return c


def encode(alpha: complex, beta: complex, N: int = 3, chain: SpinParams | None = None) -> EncodedQubit:
    """``alpha |Psi0> + beta |Psi1>`` on the ground doublet of ``chain``
    (the ideal chain by default)."""
    a, b = _check_normalized([alpha, beta])
    chain = chain or SpinParams.ideal(N)
    gs = ground_subspace(realize(build_spin(chain)))
    return EncodedQubit(chain, gs.psi0, gs.psi1, a * gs.psi0 + b * gs.psi1)


def logical_operator(axis: str, N: int) -> np.ndarray:
    return realize(mfq_pauli(axis, N), dtype=np.complex128)


def expectation(q: EncodedQubit, axis: str) -> float:
    op = logical_operator(axis, q.N)
    return float(np.vdot(q.state, op @ q.state).real)


def bloch_vector(q: EncodedQubit) -> np.ndarray:
    return np.array([expectation(q, a) for a in AXES])


def gate_unitary(axis: str, angle: float, N: int) -> np.ndarray:
    """``exp(-i angle/2 sigma_axis)`` on the full chain; the logical Paulis square to one."""
    op = logical_operator(axis, N)
    return np.cos(angle / 2) * np.eye(op.shape[0]) - 1j * np.sin(angle / 2) * op


def apply_gate(q: EncodedQubit, axis: str, angle: float) -> EncodedQubit:
    if axis not in AXES:
        raise ValueError(f"unknown axis {axis!r}")
    return q.with_state(gate_unitary(axis, angle, q.N) @ q.state)


def _plus_probability(state: np.ndarray, op_diag_or_mat) -> float:
    if op_diag_or_mat.ndim == 1:
        val = np.abs(state) ** 2 @ op_diag_or_mat
    else:
        val = np.vdot(state, op_diag_or_mat @ state).real
    return float(np.clip((1 + val / np.vdot(state, state).real) / 2, 0.0, 1.0))


def measure_parity(q: EncodedQubit, shots: int, seed: int = 0) -> dict[int, int]:
    """Sampled outcomes of ``P = -prod Z`` (one Z readout per ion)."""
    if shots < 1:
        raise ValueError("shots must be positive")
    p_plus = _plus_probability(q.state, parity_diagonal(q.N))
    k = int(np.random.default_rng(seed).binomial(shots, p_plus))
    return {+1: k, -1: shots - k}


def tomography(q: EncodedQubit, shots: int, seed: int = 0) -> BlochEstimate:
    """Estimate the logical Bloch vector from ``shots`` samples per axis."""
    if shots < 1:
        raise ValueError("shots must be positive")
    rng = np.random.default_rng(seed)
    est, err = [], []
    for axis in AXES:
        p = _plus_probability(q.state, logical_operator(axis, q.N))
        m = 2 * rng.binomial(shots, p) / shots - 1
        est.append(m)
        err.append(np.sqrt(max(1 - m * m, 0.0) / shots))
    return BlochEstimate(np.array(est), np.array(err), shots, seed)


def _coeff_tensor(input_coeffs, K: int) -> np.ndarray:
    c = _check_normalized(np.ravel(input_coeffs), "input coefficients")
    if c.size != 2**K:
        raise ValueError(f"expected {2**K} coefficients for K = {K}, got {c.size}")
    return c.reshape((2,) * K)


def _joint(vectors_per_chain, c: np.ndarray) -> np.ndarray:
    # chain 1 occupies the least-significant block of the joint index
    K = c.ndim
    dim = vectors_per_chain[0][0].size
    out = np.zeros(dim**K, dtype=complex)
    for idx in itertools.product((0, 1), repeat=K):
        if c[idx] == 0:
            continue
        v = np.ones(1, dtype=complex)
        for k in range(K):
            v = np.kron(vectors_per_chain[k][idx[k]], v)
        out += c[idx] * v
    return out


def memory_transfer(
    input_coeffs,
    K: int,
    N: int = 3,
    schedule: Schedule | None = None,
    noise: SpinParams | None = None,
    **kw,
) -> MemoryRegister:
    """Map a K-qubit input onto K chains and sweep each into the topological regime.

    Logical 0 starts from ``|down...down>`` and logical 1 from the single-flip
    superposition; each is compared with the ground state of matching parity
    (for odd N these are ``Psi0`` and ``Psi1``). Chains evolve independently,
    so the joint propagator is a tensor product. The phase-optimized fidelity
    removes one phase per parity sector per chain, the dynamical phases the
    sweep accumulates.
    """
    if K < 1 or K * N > MAX_DENSE_SITES:
        raise ValueError(f"K * N = {K * N} exceeds the dense budget of {MAX_DENSE_SITES} sites")
    c = _coeff_tensor(input_coeffs, K)
    schedule = schedule or Schedule()
    params = noise or SpinParams.ideal(N)
    if params.N != N:
        raise ValueError("noise chain has the wrong length")
    inits = [all_down_state(N), single_flip_state(single_flip_coefficients(N))]
    targets = [ground_target(v) for v in inits]
    finals = [evolve_scheduled(params, schedule, v, **kw).final_state for v in inits]
    overlaps = np.array([np.vdot(t, f) for t, f in zip(targets, finals)])
    final = _joint([finals] * K, c)
    raw = abs(np.vdot(_joint([targets] * K, c), final)) ** 2
    phased = [t * np.exp(1j * np.angle(o)) for t, o in zip(targets, overlaps)]
    opt = abs(np.vdot(_joint([phased] * K, c), final)) ** 2
    return MemoryRegister(K, N, final, c, float(raw), float(opt), np.tile(overlaps, (K, 1)))
