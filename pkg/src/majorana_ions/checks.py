"""Invariant self-checks run by ``majorana-ions check``."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .model import FermionParams, SpinParams, build_fermionic, build_majorana, build_spin, spin_params_from_fermion, with_nnn
from .pauli_ops import (
    PauliSum,
    PauliTerm,
    fermion_annihilation,
    majorana,
    mfq_pauli,
    parity_diagonal,
    realize,
)
from .spectral import ghz_states, ground_subspace

TOL = 1e-12


def _flipped_annihilation(j: int, n: int, phi: float = 0.0) -> PauliSum:
    # deliberate fault: lowering instead of raising operator in the JW image
    zs = {m: "Z" for m in range(1, j)}
    return PauliSum([
        PauliTerm.from_sites(n, {**zs, j: "X"}, 0.5),
        PauliTerm.from_sites(n, {**zs, j: "Y"}, -0.5j),
    ])


FAULTS = {"jw-sign": _flipped_annihilation}


def check_majorana_algebra(**_) -> str | None:
    for n in range(2, 7):
        for phi in (0.0, math.pi / 3):
            cs = [realize(majorana(k, n, phi), dtype=complex) for k in range(1, 2 * n + 1)]
            eye = np.eye(1 << n)
            for j, cj in enumerate(cs):
                if np.abs(cj - cj.conj().T).max() > TOL:
                    return f"c_{j + 1} not self-adjoint (N={n})"
                for k, ck in enumerate(cs):
                    err = np.abs(cj @ ck + ck @ cj - 2 * (j == k) * eye).max()
                    if err > TOL:
                        return f"{{c_{j + 1}, c_{k + 1}}} off by {err:.2e} (N={n}, phi={phi:.3f})"
    return None


def check_fermion_algebra(annihilator=fermion_annihilation, **_) -> str | None:
    for n in range(2, 6):
        a = [realize(annihilator(j, n, 0.0), dtype=complex) for j in range(1, n + 1)]
        eye = np.eye(1 << n)
        for i, ai in enumerate(a):
            for j, aj in enumerate(a):
                ajd = aj.conj().T
                if np.abs(ai @ ajd + ajd @ ai - (i == j) * eye).max() > TOL:
                    return f"{{a_{i + 1}, a_{j + 1}^dag}} wrong (N={n})"
                if np.abs(ai @ aj + aj @ ai).max() > TOL:
                    return f"{{a_{i + 1}, a_{j + 1}}} nonzero (N={n})"
    return None


def check_mapping_equivalence(annihilator=fermion_annihilation, draws: int = 5, seed: int = 0, **_) -> str | None:
    rng = np.random.default_rng(seed)
    for n in range(2, 7):
        for _ in range(draws):
            w = rng.uniform(0.2, 2.0)
            p = FermionParams(n, w, w, 0.0, rng.uniform(-2.0, 2.0))
            hf = realize(build_fermionic(p, annihilator), dtype=complex)
            hm = realize(build_majorana(p), dtype=complex)
            hs = realize(build_spin(spin_params_from_fermion(p)), dtype=complex)
            scale = max(1.0, np.abs(hs).max())
            for name, h in (("fermionic", hf), ("majorana", hm)):
                err = np.abs(h - hs).max()
                if err > TOL * scale:
                    return f"{name} form differs from spin form by {err:.2e} (N={n})"
    return None


def check_parity_commutation(seed: int = 0, **_) -> str | None:
    rng = np.random.default_rng(seed)
    for n in range(2, 7):
        p = SpinParams(n, tuple(rng.uniform(0.5, 1.5, n - 1)), rng.uniform(-1, 1), {}, tuple(rng.normal(0, 1e-3, n)))
        if n >= 3:
            p = with_nnn(p)
        h = realize(build_spin(p))
        par = parity_diagonal(n)
        if np.abs(par[:, None] * h - h * par[None, :]).max() > TOL:
            return f"[P, H] nonzero (N={n})"
    return None


def check_gap_and_ground_states(**_) -> str | None:
    for n in range(3, 9):
        gs = ground_subspace(realize(build_spin(SpinParams.ideal(n))))
        if abs(gs.gap - 2.0) > 1e-10:
            return f"gap {gs.gap!r} != 2J (N={n})"
        g0, g1 = ghz_states(n)
        if abs(np.vdot(g0, gs.psi0)) < 1 - 1e-10 or abs(np.vdot(g1, gs.psi1)) < 1 - 1e-10:
            return f"ground states are not the GHZ-x pair (N={n})"
    return None


def check_mfq_algebra(**_) -> str | None:
    for n in range(2, 7):
        x, y, z = (realize(mfq_pauli(a, n), dtype=complex) for a in "xyz")
        eye = np.eye(1 << n)
        h = build_spin(SpinParams.ideal(n))
        if n >= 3:
            h = build_spin(with_nnn(SpinParams.ideal(n)))
        hm = realize(h)
        for name, (a, b, c) in {"xy": (x, y, z), "yz": (y, z, x), "zx": (z, x, y)}.items():
            if np.abs(a @ b - 1j * c).max() > TOL or np.abs(a @ b + b @ a).max() > TOL:
                return f"logical {name} algebra broken (N={n})"
        for a in (x, y, z):
            if np.abs(a @ a - eye).max() > TOL or np.abs(a @ hm - hm @ a).max() > TOL:
                return f"logical operator not an involution commuting with H (N={n})"
    return None


CHECKS: dict[str, Callable[..., str | None]] = {
    "majorana_algebra": check_majorana_algebra,
    "fermion_algebra": check_fermion_algebra,
    "mapping_equivalence": check_mapping_equivalence,
    "parity_commutation": check_parity_commutation,
    "gap_and_ground_states": check_gap_and_ground_states,
    "mfq_algebra": check_mfq_algebra,
}


def run_checks(fault: str | None = None, seed: int = 0) -> dict[str, str | None]:
    """Run every invariant; values are ``None`` on success or a failure message."""
    kw = {"seed": seed}
    if fault is not None:
        kw["annihilator"] = FAULTS[fault]
    return {name: fn(**kw) for name, fn in CHECKS.items()}
