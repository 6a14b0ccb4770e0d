"""Kitaev-wire Hamiltonians in fermionic, Majorana and spin form."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

import numpy as np

from .pauli_ops import PauliSum, PauliTerm, fermion_annihilation, majorana


@dataclass(frozen=True)
class FermionParams:
    """Parameters of the fermionic wire, energies in units of J."""

    N: int
    w: float = 1.0
    delta_abs: float = 1.0
    phi: float = 0.0
    mu: float = 0.0

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("need N >= 2")
        if self.w < 0 or self.delta_abs < 0:
            raise ValueError("w and |Delta| must be non-negative")


@dataclass(frozen=True)
class SpinParams:
    """Transverse-field Ising chain with trapped-ion imperfections.

    ``J_bonds[j]`` couples sites j+1 and j+2 (1-based). ``J_nnn`` maps a
    1-based site pair ``(i, k)`` to an extra X-X coupling. ``delta_hz``
    holds per-site stray Z fields entering as ``+delta_hz[i] Z_i``.
    """

    N: int
    J_bonds: tuple[float, ...] = ()
    h_z: float = 0.0
    J_nnn: Mapping[tuple[int, int], float] = field(default_factory=dict)
    delta_hz: tuple[float, ...] = ()

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("need N >= 1")
        bonds = tuple(float(b) for b in self.J_bonds) if self.J_bonds else (1.0,) * (self.N - 1)
        if len(bonds) != self.N - 1:
            raise ValueError(f"expected {self.N - 1} bond couplings, got {len(bonds)}")
        if not all(math.isfinite(b) for b in bonds):
            raise ValueError("bond couplings must be finite")
        dh = tuple(float(d) for d in self.delta_hz) if self.delta_hz else (0.0,) * self.N
        if len(dh) != self.N:
            raise ValueError(f"expected {self.N} stray-field amplitudes, got {len(dh)}")
        nnn = {}
        for (i, k), v in dict(self.J_nnn).items():
            i, k = sorted((int(i), int(k)))
            if not (1 <= i < k <= self.N) or k == i + 1:
                raise ValueError(f"invalid long-range pair {(i, k)}")
            nnn[i, k] = float(v)
        object.__setattr__(self, "J_bonds", bonds)
        object.__setattr__(self, "delta_hz", dh)
        object.__setattr__(self, "J_nnn", nnn)

    @classmethod
    def ideal(cls, N: int, J: float = 1.0) -> "SpinParams":
        return cls(N, (J,) * (N - 1))

    @property
    def is_ideal(self) -> bool:
        return (
            len(set(self.J_bonds)) <= 1
            and self.h_z == 0
            and not any(self.J_nnn.values())
            and not any(self.delta_hz)
        )


def perturbed_chain(
    N: int,
    J: float = 1.0,
    delta_hz: float = 1e-3,
    ratio_error: float = 0.01,
    nnn_fraction: float | None = None,
    random_signs: bool = False,
    seed: int = 0,
) -> SpinParams:
    """Chain with the trapped-ion imperfection model.

    ``J_12 = J (1 + ratio_error)``, all other bonds ``J``; homogeneous
    stray fields unless ``random_signs``; ``J_13 = nnn_fraction * J_12``
    when ``nnn_fraction`` is given.
    """
    bonds = [J] * (N - 1)
    if N >= 2:
        bonds[0] = J * (1 + ratio_error)
    if random_signs:
        signs = np.random.default_rng(seed).choice([-1.0, 1.0], size=N)
    else:
        signs = np.ones(N)
    nnn = {}
    if nnn_fraction is not None and N >= 3:
        nnn[1, 3] = nnn_fraction * bonds[0]
    return SpinParams(N, tuple(bonds), 0.0, nnn, tuple(delta_hz * signs))


def spin_params_from_fermion(p: FermionParams) -> SpinParams:
    """Spin parameters equivalent to ``p`` (requires ``w == |Delta|``)."""
    if not math.isclose(p.w, p.delta_abs, rel_tol=1e-12, abs_tol=1e-15):
        raise ValueError("the spin mapping needs w == |Delta|")
    return SpinParams(p.N, (p.w,) * (p.N - 1), -p.mu / 2)


def build_fermionic(
    p: FermionParams,
    annihilator: Callable[[int, int, float], PauliSum] = fermion_annihilation,
) -> PauliSum:
    """Fermionic Kitaev Hamiltonian with hopping, p-wave pairing and
    chemical potential, including the ``+mu N / 2`` offset."""
    n = p.N
    a = [annihilator(j, n, p.phi) for j in range(1, n + 1)]
    ad = [op.adjoint() for op in a]
    delta = p.delta_abs * np.exp(1j * p.phi)
    h = PauliSum.zero(n)
    for j in range(n - 1):
        h = h - p.w * (ad[j] * a[j + 1] + ad[j + 1] * a[j])
        h = h + delta * (a[j] * a[j + 1]) + np.conj(delta) * (ad[j + 1] * ad[j])
    for j in range(n):
        h = h - p.mu * (ad[j] * a[j] - 0.5)
    return h


def build_majorana(p: FermionParams) -> PauliSum:
    """Same Hamiltonian written as Majorana bilinears."""
    n = p.N
    c = [None] + [majorana(k, n, p.phi) for k in range(1, 2 * n + 1)]
    h = PauliSum.zero(n)
    for j in range(1, n + 1):
        h = h - p.mu * (c[2 * j - 1] * c[2 * j])
    for j in range(1, n):
        h = h + (p.w + p.delta_abs) * (c[2 * j] * c[2 * j + 1])
        h = h + (-p.w + p.delta_abs) * (c[2 * j - 1] * c[2 * j + 2])
    return 0.5j * h


def _xx(n: int, i: int, k: int, coef: float) -> PauliTerm:
    return PauliTerm.from_sites(n, {i: "X", k: "X"}, coef)


def coupling_terms(p: SpinParams) -> PauliSum:
    """``-sum J_b X X`` over bonds and long-range pairs."""
    n = p.N
    terms = [_xx(n, j, j + 1, -J) for j, J in enumerate(p.J_bonds, start=1)]
    terms += [_xx(n, i, k, -J) for (i, k), J in p.J_nnn.items()]
    return PauliSum(terms, n_sites=n)


def field_terms(n: int, coef: float = 1.0) -> PauliSum:
    """``coef * sum_i Z_i``."""
    return PauliSum([PauliTerm.from_sites(n, {i: "Z"}, coef) for i in range(1, n + 1)], n_sites=n)


def stray_terms(p: SpinParams) -> PauliSum:
    n = p.N
    return PauliSum(
        [PauliTerm.from_sites(n, {i: "Z"}, d) for i, d in enumerate(p.delta_hz, start=1)],
        n_sites=n,
    )


def build_spin(p: SpinParams) -> PauliSum:
    """Transverse-field Ising Hamiltonian with imperfections.

    ``H = -sum J_b X_j X_{j+1} - h_z sum Z_j - sum J_nnn X_i X_k + sum dh_i Z_i``
    """
    return coupling_terms(p) + field_terms(p.N, -p.h_z) + stray_terms(p)


def with_nnn(p: SpinParams, fraction: float = 1 / 8) -> SpinParams:
    """Add ``J_13 = fraction * J_12`` to a chain."""
    nnn = dict(p.J_nnn)
    nnn[1, 3] = fraction * p.J_bonds[0]
    return replace(p, J_nnn=nnn)
