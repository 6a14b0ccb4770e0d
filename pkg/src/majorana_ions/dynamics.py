"""Time evolution: static propagation, the adiabatic sweep into the
topological regime, the stray-field survival run and error estimates."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .model import SpinParams, coupling_terms, field_terms, stray_terms
from .pauli_ops import parity_diagonal, realize
from .spectral import _check_hermitian, ghz_states, ground_subspace

# Output of calibrate_duration() for the ideal N = 3 linear sweep, 1 - F = 1e-3 (units of 1/J).
DEFAULT_T_TOTAL = 112.65
DEFAULT_H0 = 10.0
STEP_SAFETY = 0.01


@dataclass(frozen=True)
class Schedule:
    """Ramp of the coupling scale J(t) and transverse field h_z(t).

    Both interpolate from ``start = (J_s, h_s)`` to ``end = (J_e, h_e)``
    through ``f(t/T)``, linear or smoothstep ``3s^2 - 2s^3``.
    """

    T_total: float = DEFAULT_T_TOTAL
    shape: str = "linear"
    start: tuple[float, float] = (0.0, -DEFAULT_H0)
    end: tuple[float, float] = (1.0, 0.0)

    def __post_init__(self):
        if self.T_total < 0:
            raise ValueError("T_total must be non-negative")
        if self.shape not in ("linear", "smoothstep"):
            raise ValueError(f"unknown schedule shape {self.shape!r}")

    def ramp(self, t):
        s = np.clip(np.asarray(t, dtype=float) / self.T_total, 0.0, 1.0) if self.T_total else np.ones_like(np.asarray(t, dtype=float))
        return s if self.shape == "linear" else s * s * (3 - 2 * s)

    def J(self, t):
        return self.start[0] + (self.end[0] - self.start[0]) * self.ramp(t)

    def h_z(self, t):
        return self.start[1] + (self.end[1] - self.start[1]) * self.ramp(t)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    fidelity: np.ndarray
    norm: np.ndarray
    parity: np.ndarray
    amplitude: np.ndarray
    final_state: np.ndarray

    @property
    def infidelity(self) -> np.ndarray:
        return 1.0 - self.fidelity

    @property
    def final_error(self) -> float:
        return float(1.0 - self.fidelity[-1])


def _trajectory(times, states, target) -> Trajectory:
    n = int(states.shape[1]).bit_length() - 1
    p = parity_diagonal(n)
    prob = np.abs(states) ** 2
    amp = states @ np.conj(target) if target is not None else np.full(len(times), np.nan + 0j)
    return Trajectory(
        np.asarray(times, dtype=float),
        np.abs(amp) ** 2,
        np.sqrt(prob.sum(axis=1)),
        prob @ p,
        amp,
        states[-1].copy(),
    )


def evolve_static(H: np.ndarray, psi: np.ndarray, t) -> np.ndarray:
    """``exp(-iHt) psi`` through the eigendecomposition of H.

    A scalar ``t`` gives one state; an array gives one row per time.
    """
    _check_hermitian(H)
    vals, vecs = np.linalg.eigh(H)
    coeff = vecs.conj().T @ psi
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = (np.exp(-1j * np.outer(ts, vals)) * coeff) @ vecs.T
    return out[0] if np.ndim(t) == 0 else out


def static_trajectory(H, psi, times, target) -> Trajectory:
    return _trajectory(times, evolve_static(H, psi, np.asarray(times, dtype=float)), target)


def _norm2(M: np.ndarray) -> float:
    return float(np.abs(np.linalg.eigvalsh(M)).max(initial=0.0))


def _sweep_operators(params: SpinParams):
    n = params.N
    field = realize(field_terms(n, -1.0), dtype=np.complex128)
    coup = realize(coupling_terms(params), dtype=np.complex128)
    stray = realize(stray_terms(params), dtype=np.complex128)
    return np.stack([field, coup, stray])


def max_step(params: SpinParams, schedule: Schedule, grid: int = 1025) -> float:
    """Largest allowed step, ``0.01 / max_t ||H(t)||`` with a triangle bound on the norm."""
    ops = _sweep_operators(params)
    norms = [_norm2(op) for op in ops]
    t = np.linspace(0.0, schedule.T_total, grid)
    bound = np.abs(schedule.h_z(t)) * norms[0] + np.abs(schedule.J(t)) * norms[1] + norms[2]
    return STEP_SAFETY / max(float(bound.max()), 1e-300)


def evolve_scheduled(
    params: SpinParams,
    schedule: Schedule,
    psi0: np.ndarray,
    dt: float | None = None,
    target: np.ndarray | None = None,
    samples: int = 201,
    backend=None,
) -> Trajectory:
    """Fourth-order Runge-Kutta sweep of ``H(t) = J(t) H_xx - h_z(t) sum Z + stray``.

    ``params`` fixes the coupling pattern at unit coupling scale (bond
    ratios, long-range terms) and the static stray fields; its ``h_z`` is
    replaced by the schedule. The Hamiltonian is sampled at the start,
    midpoint and end of every step. A ``dt`` above ``max_step`` is refused.
    """
    propagate = backend or kernels.rk4_propagate
    ops = _sweep_operators(params)
    limit = max_step(params, schedule)
    if dt is None:
        dt = limit
    elif dt > limit * (1 + 1e-12):
        raise ValueError(f"step {dt:g} exceeds the stability limit {limit:g}")
    T = schedule.T_total
    nsteps = math.ceil(T / dt - 1e-9) if T > 0 else 0
    dt = T / nsteps if nsteps else 0.0
    grid = np.arange(nsteps) * dt
    coefs = np.empty((nsteps, 3, 3))
    for k, off in enumerate((0.0, 0.5 * dt, dt)):
        coefs[:, k, 0] = schedule.h_z(grid + off)
        coefs[:, k, 1] = schedule.J(grid + off)
        coefs[:, k, 2] = 1.0
    record = np.unique(np.round(np.linspace(0, nsteps, max(samples, 2))).astype(np.int64))
    states = propagate(ops, coefs, np.asarray(psi0, dtype=np.complex128), dt, record)
    return _trajectory(record * dt, states, target)


def all_down_state(n: int) -> np.ndarray:
    psi = np.zeros(1 << n, dtype=complex)
    psi[(1 << n) - 1] = 1.0
    return psi


def single_flip_coefficients(n: int) -> np.ndarray:
    """Lowest combination of single up-flips on the all-down background.

    The field leaves the single-flip manifold degenerate; the X-X coupling
    splits it and the lowest eigenvector is the one that connects to a
    ground state. Sign fixed so the first coefficient is positive.
    """
    H = realize(coupling_terms(SpinParams.ideal(n)))
    idx = [((1 << n) - 1) ^ (1 << i) for i in range(n)]
    _, vecs = np.linalg.eigh(H[np.ix_(idx, idx)])
    c = vecs[:, 0]
    return c * np.sign(c[0])


def single_flip_state(coeffs) -> np.ndarray:
    """``sum_i c_i |down...up_i...down>``."""
    c = np.asarray(coeffs, dtype=complex)
    if abs(np.vdot(c, c).real - 1) > 1e-10:
        raise ValueError("single-flip coefficients must be normalized")
    n = c.size
    psi = np.zeros(1 << n, dtype=complex)
    for i, ci in enumerate(c):
        psi[((1 << n) - 1) ^ (1 << i)] = ci
    return psi


def ground_target(psi: np.ndarray) -> np.ndarray:
    """Ideal-point ground state with the same parity as ``psi``."""
    n = psi.size.bit_length() - 1
    parity = float(np.abs(psi) ** 2 @ parity_diagonal(n))
    psi0, psi1 = ghz_states(n)
    return psi0 if parity > 0 else psi1


def ground_transfer(params: SpinParams, schedule: Schedule | None = None, **kw) -> Trajectory:
    """Sweep ``|down...down>`` into the topological regime and track the fidelity
    against the ideal ground state of matching parity."""
    schedule = schedule or Schedule()
    psi = all_down_state(params.N)
    return evolve_scheduled(params, schedule, psi, target=ground_target(psi), **kw)


def calibrate_duration(
    target_error: float = 1e-3,
    N: int = 3,
    shape: str = "linear",
    bracket: tuple[float, float] = (20.0, 400.0),
    iterations: int = 40,
) -> float:
    """Sweep duration whose ideal ground-branch error equals ``target_error``.

    Bisection on the final diabatic error, which decreases with T across
    the bracket for the default ramp.
    """
    params = SpinParams.ideal(N)

    def err(T):
        return ground_transfer(params, Schedule(T, shape)).final_error

    lo, hi = bracket
    if not err(lo) > target_error > err(hi):
        raise ValueError("bracket does not straddle the target error")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if err(mid) > target_error else (lo, mid)
    return hi


def excited_transfer(
    N: int,
    schedule: Schedule | None = None,
    coeffs=None,
    params: SpinParams | None = None,
    **kw,
) -> Trajectory:
    """Sweep the single-flip superposition into the other ground state."""
    schedule = schedule or Schedule()
    params = params or SpinParams.ideal(N)
    c = single_flip_coefficients(N) if coeffs is None else coeffs
    psi = single_flip_state(c)
    return evolve_scheduled(params, schedule, psi, target=ground_target(psi), **kw)


def survival_experiment(
    N: int = 3,
    delta_hz: float = 1e-3,
    with_topological: bool = True,
    t_max: float = 2000.0,
    samples: int = 2001,
    J: float = 1.0,
    random_signs: bool = False,
    seed: int = 0,
) -> Trajectory:
    """Survival of the even-parity ground state under static Z fields.

    The field ``delta_hz * sum_i s_i Z_i`` acts alone or together with the
    always-on coupling ``-J sum X X``.
    """
    psi0 = ground_subspace(realize(build_ideal(N, J))).psi0
    if random_signs:
        signs = np.random.default_rng(seed).choice([-1.0, 1.0], size=N)
    else:
        signs = np.ones(N)
    p = SpinParams(N, (J if with_topological else 0.0,) * (N - 1), 0.0, {}, tuple(delta_hz * signs))
    H = realize(coupling_terms(p) + stray_terms(p))
    return static_trajectory(H, psi0, np.linspace(0.0, t_max, samples), psi0)


def build_ideal(N: int, J: float = 1.0):
    return coupling_terms(SpinParams.ideal(N, J))


def survival_closed_form(delta_hz: float, t, N: int = 3):
    """``cos^6 + sin^6`` field-only survival for N = 3 (general N: ``cos^{2N} + sin^{2N}``)."""
    x = delta_hz * np.asarray(t, dtype=float)
    return np.cos(x) ** (2 * N) + np.sin(x) ** (2 * N)


def fit_error_frequency(traj: Trajectory, reference_energy: float) -> float:
    """Drift rate of the survival-amplitude phase relative to ``reference_energy``.

    For a gapped, protected state this is the residual second-order energy
    shift induced by the stray field, the rate at which the error builds up.
    """
    phase = np.unwrap(np.angle(traj.amplitude * np.exp(1j * reference_energy * traj.times)))
    slope = np.polyfit(traj.times, phase, 1)[0]
    return float(abs(slope))


def offresonant_excitation(amplitude: float, omega0: float) -> float:
    """Peak transition probability ``a^2 / (a^2 + w0^2)`` of a detuned drive."""
    if omega0 <= 0:
        raise ValueError("omega0 must be positive")
    if amplitude >= omega0:
        warnings.warn("drive amplitude not small against the transition frequency", RuntimeWarning)
    return amplitude**2 / (amplitude**2 + omega0**2)


def effective_error_frequency(delta_hz: float, J: float = 1.0) -> float:
    """Second-order error rate ``delta_hz^2 / gap`` with gap ``2J``."""
    return delta_hz**2 / (2.0 * J)
