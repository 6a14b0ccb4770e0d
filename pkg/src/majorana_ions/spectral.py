"""Exact diagonalization, parity-resolved ground subspace and splitting.

Besides the dense solver this module carries two independent handles on
the ground-state splitting: the analytic localization length from the
characteristic roots ``x_pm`` and a path-sum perturbative estimate that
stays meaningful below the double-precision floor.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from .model import SpinParams, build_spin
from .pauli_ops import MAX_DENSE_SITES, parity_diagonal, realize

HERMITIAN_TOL = 1e-12
PRECISION_FLOOR = 1e-13


@dataclass(frozen=True)
class GroundSubspace:
    psi0: np.ndarray
    psi1: np.ndarray
    E0: float
    E1: float
    E2: float
    norm: float

    @property
    def splitting(self) -> float:
        return abs(self.E1 - self.E0)

    @property
    def gap(self) -> float:
        return self.E2 - min(self.E0, self.E1)


@dataclass(frozen=True)
class LocalizationResult:
    x_plus: complex
    x_minus: complex
    n0: float


@dataclass(frozen=True)
class SplittingRow:
    N: int
    gamma: float
    gap: float
    reliable: bool
    oracle_gamma: float


def _check_hermitian(H: np.ndarray) -> float:
    scale = max(1.0, float(np.abs(H).max(initial=0.0)))
    if np.abs(H - H.conj().T).max(initial=0.0) > HERMITIAN_TOL * scale:
        raise ValueError("matrix is not Hermitian")
    return scale


def eigensystem(H: np.ndarray, k: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Lowest ``k`` eigenpairs of a Hermitian matrix, ascending."""
    _check_hermitian(H)
    dim = H.shape[0]
    k = dim if k is None else k
    if not 1 <= k <= dim:
        raise ValueError(f"k must lie in 1..{dim}")
    vals, vecs = scipy.linalg.eigh(H, subset_by_index=[0, k - 1])
    return vals, vecs


def spectral_norm(H: np.ndarray) -> float:
    dim = H.shape[0]
    lo = scipy.linalg.eigh(H, eigvals_only=True, subset_by_index=[0, 0])[0]
    hi = scipy.linalg.eigh(H, eigvals_only=True, subset_by_index=[dim - 1, dim - 1])[0]
    return float(max(abs(lo), abs(hi)))


def all_left_state(n: int) -> np.ndarray:
    """``|<-<-...<->`` with ``|<-> = (|up> - |down>)/sqrt(2)``."""
    pop = np.bitwise_count(np.arange(1 << n)) & 1
    return (1.0 - 2.0 * pop) / 2 ** (n / 2)


def all_right_state(n: int) -> np.ndarray:
    return np.full(1 << n, 2 ** (-n / 2))


def ghz_states(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Ideal-point ground states ``(|<-...> -+ |->...>)/sqrt(2)``, parity +1 and -1."""
    left, right = all_left_state(n), all_right_state(n)
    return (left - right) / math.sqrt(2), (left + right) / math.sqrt(2)


def fix_phase(psi: np.ndarray, n: int) -> np.ndarray:
    """Make ``<<-<-...|psi>`` real positive; fall back to the largest amplitude."""
    ov = np.vdot(all_left_state(n), psi)
    if abs(ov) < 1e-8:
        ov = psi[np.argmax(np.abs(psi))]
    return psi * (abs(ov) / ov)


def _sites(dim: int) -> int:
    n = dim.bit_length() - 1
    if 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def ground_subspace(H: np.ndarray) -> GroundSubspace:
    """Two lowest states of a parity-conserving Hamiltonian, labelled by parity.

    The lowest two-dimensional eigenspace is rotated so that each vector is
    an eigenstate of ``P = -prod Z``; ``psi0`` carries parity +1.
    """
    n = _sites(H.shape[0])
    scale = _check_hermitian(H)
    p = parity_diagonal(n)
    mixing = np.abs(H[np.not_equal.outer(p, p)]).max(initial=0.0)
    if mixing > HERMITIAN_TOL * scale:
        raise ValueError("Hamiltonian does not commute with the parity operator")
    vals, vecs = eigensystem(H, 3)
    span = vecs[:, :2]
    pv, rot = np.linalg.eigh(span.conj().T @ (p[:, None] * span))
    pair = span @ rot  # ascending parity: column 0 is parity -1
    psi1 = fix_phase(pair[:, 0], n)
    psi0 = fix_phase(pair[:, 1], n)
    if not (abs(pv[0] + 1) < 1e-8 and abs(pv[1] - 1) < 1e-8):
        raise ValueError("lowest doublet does not contain one state of each parity")
    E0 = float(np.vdot(psi0, H @ psi0).real)
    E1 = float(np.vdot(psi1, H @ psi1).real)
    return GroundSubspace(psi0, psi1, E0, E1, float(vals[2]), spectral_norm(H))


def splitting_scan(
    base: SpinParams | None = None,
    N_range=range(2, 9),
    *,
    delta_hz: float | None = None,
    ratio_error: float = 0.0,
    nnn_fraction: float | None = None,
    make=None,
) -> list[SplittingRow]:
    """Exact and perturbative splitting for each chain length.

    ``make(N)`` builds the chain for each row; by default rows reuse the
    bulk coupling, field and first stray amplitude of ``base``.
    """
    from .model import perturbed_chain

    if make is None:
        base = base or SpinParams.ideal(3)
        J = base.J_bonds[-1] if base.J_bonds else 1.0
        dh = base.delta_hz[0] if delta_hz is None else delta_hz

        def make(N):
            p = perturbed_chain(N, J, dh, ratio_error, nnn_fraction)
            return replace(p, h_z=base.h_z)

    rows = []
    for N in N_range:
        if N > MAX_DENSE_SITES:
            raise ValueError(f"N = {N} exceeds the dense-solver budget")
        p = make(N)
        gs = ground_subspace(realize(build_spin(p)))
        gamma = gs.splitting
        rows.append(SplittingRow(
            N, gamma, gs.gap, gamma >= PRECISION_FLOOR * gs.norm, perturbative_splitting(p)
        ))
    return rows


def analytic_localization(w: float, delta_abs: float, mu: float) -> LocalizationResult:
    """Roots ``x_pm`` of the bulk characteristic equation and the length ``n0``.

    ``1/n0 = min |ln|x_pm||``; a vanishing root contributes an infinite
    logarithm, so ``n0 = 0`` only when both roots vanish.
    """
    if w + delta_abs <= 0:
        raise ValueError("need w + |Delta| > 0")
    root = cmath.sqrt(mu * mu + 4 * (delta_abs - w) * (delta_abs + w))
    den = 2 * (w + delta_abs)
    xp, xm = (-mu + root) / den, (-mu - root) / den
    logs = [abs(math.log(abs(x))) if abs(x) > 0 else math.inf for x in (xp, xm)]
    inv = min(logs)
    n0 = 0.0 if math.isinf(inv) else (math.inf if inv == 0 else 1.0 / inv)
    return LocalizationResult(xp, xm, n0)


def _classical_energy(p: SpinParams, flipped: int) -> float:
    # X-basis energy of the aligned state with the sites in `flipped` reversed
    def s(i):
        return -1.0 if flipped >> (i - 1) & 1 else 1.0

    e = -sum(J * s(j) * s(j + 1) for j, J in enumerate(p.J_bonds, start=1))
    e -= sum(J * s(i) * s(k) for (i, k), J in p.J_nnn.items())
    return e


def perturbative_splitting(p: SpinParams) -> float:
    """Leading-order splitting from the N-th order path sum.

    Each Z field flips one X spin. The tunnelling amplitude between the two
    aligned states sums over every flip order, with energy denominators of
    the intermediate domain-wall configurations; the splitting is twice it.
    """
    n = p.N
    fields = [-p.h_z + d for d in p.delta_hz]
    if not any(fields):
        return 0.0
    full = (1 << n) - 1
    e_ref = _classical_energy(p, 0)
    amp = [0.0] * (1 << n)
    amp[0] = 1.0
    for size in range(1, n + 1):
        for sites in itertools.combinations(range(n), size):
            mask = sum(1 << i for i in sites)
            total = sum(amp[mask ^ (1 << i)] * fields[i] for i in sites)
            if mask != full:
                total /= e_ref - _classical_energy(p, mask)
            amp[mask] = total
    return 2 * abs(amp[full])
