"""Majorana-fermion qubits encoded in trapped-ion Kitaev chains."""
from .kernels import BACKEND
from .model import FermionParams, SpinParams, build_fermionic, build_majorana, build_spin
from .pauli_ops import PauliSum, PauliTerm, realize

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FermionParams",
    "PauliSum",
    "PauliTerm",
    "SpinParams",
    "build_fermionic",
    "build_majorana",
    "build_spin",
    "realize",
]
