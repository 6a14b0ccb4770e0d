"""Pauli-string algebra, Jordan-Wigner fermions and Majorana operators.

Conventions
-----------
Site 1 is the least-significant bit of a basis index. Bit value 0 is
spin up, ``Z|up> = +|up>``. Letters of a Pauli string are stored site 1
first, so ``"XZ"`` means X on site 1 and Z on site 2.

The Jordan-Wigner annihilator is ``a_j = e^{-i phi/2} Z_1...Z_{j-1} (X_j + iY_j)/2``.
The gauge factor makes the Majorana operators the phase-free strings
``c_{2j-1} = Z...Z X_j`` and ``c_{2j} = Z...Z Y_j`` for every phi.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

DROP_TOL = 1e-15
MAX_DENSE_SITES = 12

# (a, b) -> (phase, product) for single-site Pauli letters
_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


@dataclass(frozen=True)
class PauliTerm:
    """A single Pauli string with a complex coefficient."""

    coefficient: complex
    letters: str

    def __post_init__(self):
        if not self.letters or set(self.letters) - set("IXYZ"):
            raise ValueError(f"invalid Pauli letters {self.letters!r}")
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    @property
    def n_sites(self) -> int:
        return len(self.letters)

    @classmethod
    def identity(cls, n: int, coefficient: complex = 1.0) -> "PauliTerm":
        return cls(coefficient, "I" * n)

    @classmethod
    def from_sites(cls, n: int, ops: Mapping[int, str], coefficient: complex = 1.0) -> "PauliTerm":
        """Build a term from ``{site: letter}`` with 1-based sites."""
        letters = ["I"] * n
        for site, letter in ops.items():
            if not 1 <= site <= n:
                raise IndexError(f"site {site} outside 1..{n}")
            letters[site - 1] = letter
        return cls(coefficient, "".join(letters))

    def adjoint(self) -> "PauliTerm":
        return PauliTerm(self.coefficient.conjugate(), self.letters)

    def __mul__(self, other):
        if isinstance(other, PauliTerm):
            return pauli_mul(self, other)
        if isinstance(other, PauliSum):
            return PauliSum([self]) * other
        return PauliTerm(self.coefficient * other, self.letters)

    def __rmul__(self, scalar):
        return PauliTerm(self.coefficient * scalar, self.letters)

    def __neg__(self):
        return PauliTerm(-self.coefficient, self.letters)

    def __add__(self, other):
        return PauliSum([self]) + other

    def __sub__(self, other):
        return PauliSum([self]) - other

    def __repr__(self):
        return f"{self.coefficient:+g}*{self.letters}"


def pauli_mul(a: PauliTerm, b: PauliTerm) -> PauliTerm:
    """Exact product ``a @ b`` of two Pauli terms, phase included."""
    if a.n_sites != b.n_sites:
        raise ValueError(f"site count mismatch: {a.n_sites} vs {b.n_sites}")
    phase = 1 + 0j
    out = []
    for x, y in zip(a.letters, b.letters):
        p, letter = _MUL[x, y]
        phase *= p
        out.append(letter)
    return PauliTerm(a.coefficient * b.coefficient * phase, "".join(out))


class PauliSum:
    """Canonical sum of Pauli terms on a common number of sites.

    Terms with identical letters are merged and coefficients with modulus
    at or below ``DROP_TOL`` are dropped. Instances are treated as immutable.
    """

    __slots__ = ("_terms", "n_sites")

    def __init__(self, terms: Iterable[PauliTerm] = (), n_sites: int | None = None):
        merged: dict[str, complex] = {}
        for t in terms:
            if n_sites is None:
                n_sites = t.n_sites
            elif t.n_sites != n_sites:
                raise ValueError(f"site count mismatch: {t.n_sites} vs {n_sites}")
            merged[t.letters] = merged.get(t.letters, 0j) + t.coefficient
        if n_sites is None:
            raise ValueError("empty PauliSum needs an explicit n_sites")
        self.n_sites = n_sites
        self._terms = {k: v for k, v in sorted(merged.items()) if abs(v) > DROP_TOL}

    @classmethod
    def zero(cls, n: int) -> "PauliSum":
        return cls((), n_sites=n)

    @property
    def terms(self) -> list[PauliTerm]:
        return [PauliTerm(c, s) for s, c in self._terms.items()]

    def coefficient(self, letters: str) -> complex:
        return self._terms.get(letters, 0j)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms)

    def _coerce(self, other) -> "PauliSum":
        if isinstance(other, PauliSum):
            return other
        if isinstance(other, PauliTerm):
            return PauliSum([other])
        return PauliSum([PauliTerm.identity(self.n_sites, other)])

    def __add__(self, other):
        other = self._coerce(other)
        return PauliSum(self.terms + other.terms, n_sites=self.n_sites)

    __radd__ = __add__

    def __neg__(self):
        return PauliSum([-t for t in self.terms], n_sites=self.n_sites)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (PauliSum, PauliTerm)):
            other = self._coerce(other)
            prods = [pauli_mul(a, b) for a in self.terms for b in other.terms]
            return PauliSum(prods, n_sites=self.n_sites)
        return PauliSum([t * other for t in self.terms], n_sites=self.n_sites)

    def __rmul__(self, scalar):
        return PauliSum([scalar * t for t in self.terms], n_sites=self.n_sites)

    def adjoint(self) -> "PauliSum":
        return PauliSum([t.adjoint() for t in self.terms], n_sites=self.n_sites)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return all(abs(c.imag) <= tol for c in self._terms.values())

    def is_zero(self, tol: float = DROP_TOL) -> bool:
        return all(abs(c) <= tol for c in self._terms.values())

    def norm1(self) -> float:
        """Sum of coefficient moduli, an upper bound on the spectral norm."""
        return float(sum(abs(c) for c in self._terms.values()))

    def __eq__(self, other):
        if not isinstance(other, (PauliSum, PauliTerm)):
            return NotImplemented
        return (self - other).is_zero(1e-12)

    def __repr__(self):
        if not self._terms:
            return f"PauliSum(0, n_sites={self.n_sites})"
        return " ".join(repr(t) for t in self.terms)


def _as_sum(op) -> PauliSum:
    return op if isinstance(op, PauliSum) else PauliSum([op])


def commutator(a, b) -> PauliSum:
    a, b = _as_sum(a), _as_sum(b)
    return a * b - b * a


def anticommutator(a, b) -> PauliSum:
    a, b = _as_sum(a), _as_sum(b)
    return a * b + b * a


def _z_string(j: int, n: int) -> dict[int, str]:
    return {m: "Z" for m in range(1, j)}


def fermion_annihilation(j: int, n: int, phi: float = 0.0) -> PauliSum:
    """Jordan-Wigner image of the fermion annihilator ``a_j``.

    ``a_j = e^{-i phi/2} Z_1...Z_{j-1} (X_j + i Y_j) / 2``; the adjoint gives
    the creator. Spin down on site j is the occupied state.
    """
    if not 1 <= j <= n:
        raise IndexError(f"site {j} outside 1..{n}")
    gauge = np.exp(-0.5j * phi)
    zs = _z_string(j, n)
    x = PauliTerm.from_sites(n, {**zs, j: "X"}, 0.5 * gauge)
    y = PauliTerm.from_sites(n, {**zs, j: "Y"}, 0.5j * gauge)
    return PauliSum([x, y])


def fermion_creation(j: int, n: int, phi: float = 0.0) -> PauliSum:
    return fermion_annihilation(j, n, phi).adjoint()


def majorana(k: int, n: int, phi: float = 0.0) -> PauliSum:
    """Majorana operator ``c_k`` for ``k`` in ``1..2n``.

    ``c_{2j-1} = e^{i phi/2} a_j + e^{-i phi/2} a_j^dag`` and
    ``c_{2j} = -i e^{i phi/2} a_j + i e^{-i phi/2} a_j^dag``.
    """
    if not 1 <= k <= 2 * n:
        raise IndexError(f"Majorana index {k} outside 1..{2 * n}")
    j = (k + 1) // 2
    a = fermion_annihilation(j, n, phi)
    ad = a.adjoint()
    u = np.exp(0.5j * phi)
    if k % 2:
        return u * a + np.conj(u) * ad
    return (-1j * u) * a + (1j * np.conj(u)) * ad


def majorana_mode_annihilation(n: int) -> PauliSum:
    """``a_M`` of the edge fermion with ``a_M^dag = (c_1 + i c_{2N}) / 2``."""
    return 0.5 * (majorana(1, n) - 1j * majorana(2 * n, n))


def parity_operator(n: int) -> PauliTerm:
    """Fermion parity ``P = -Z_1 Z_2 ... Z_N``."""
    if n < 1:
        raise ValueError("need at least one site")
    return PauliTerm(-1.0, "Z" * n)


def mfq_pauli(axis: str, n: int, literal: bool = False) -> PauliTerm:
    """Logical Pauli operator of the Majorana-fermion qubit as a spin string.

    The default follows the edge-mode definitions
    ``x = a_M^dag + a_M``, ``y = -i(a_M^dag - a_M)``, ``z = a_M^dag a_M - a_M a_M^dag``,
    which give ``x = X_1``, ``y = Z_1...Z_{N-1} Y_N`` and ``z = -Y_1 Z_2...Z_{N-1} Y_N``.

    ``literal=True`` returns the commonly printed strings
    ``X_1``, ``-Y_N Z...Z_1`` and ``+Y_N Z...Z Y_1``. They differ from the
    defaults by a sign on y and z (a pi rotation about x), so they still
    close the su(2) algebra but assign ``<z> = +1`` to the even-parity state.
    """
    if n < 2:
        raise ValueError("MF qubit needs at least two sites")
    axis = axis.lower()
    mid = {m: "Z" for m in range(2, n)}
    if axis == "x":
        return PauliTerm.from_sites(n, {1: "X"})
    if axis == "y":
        sign = -1.0 if literal else 1.0
        return PauliTerm.from_sites(n, {1: "Z", **mid, n: "Y"}, sign)
    if axis == "z":
        sign = 1.0 if literal else -1.0
        return PauliTerm.from_sites(n, {1: "Y", **mid, n: "Y"}, sign)
    raise ValueError(f"unknown axis {axis!r}")


def _masks(letters: str) -> tuple[int, int, int]:
    x = z = ny = 0
    for pos, letter in enumerate(letters):
        if letter in "XY":
            x |= 1 << pos
        if letter in "ZY":
            z |= 1 << pos
        ny += letter == "Y"
    return x, z, ny


def realize(op, n: int | None = None, dtype=None) -> np.ndarray:
    """Dense matrix of a PauliTerm or PauliSum on the 2^N spin space.

    The result is real (float64) when every term is real after the Y phases,
    which halves memory for Ising-type Hamiltonians.
    """
    op = _as_sum(op)
    n = op.n_sites if n is None else n
    if n > MAX_DENSE_SITES:
        raise ValueError(f"dense realization limited to {MAX_DENSE_SITES} sites, got {n}")
    dim = 1 << n
    terms = []
    for t in op.terms:
        x, z, ny = _masks(t.letters)
        terms.append((x, z, t.coefficient * 1j ** ny))
    if dtype is None:
        dtype = np.float64 if all(c.imag == 0 for _, _, c in terms) else np.complex128
    mat = np.zeros((dim, dim), dtype=dtype)
    idx = np.arange(dim)
    for x, z, c in terms:
        sign = np.bitwise_count(idx & z) & 1
        vals = c * (1 - 2 * sign.astype(np.int64))
        mat[idx ^ x, idx] += vals.real if dtype == np.float64 else vals
    return mat


def parity_diagonal(n: int) -> np.ndarray:
    """Diagonal of ``P = -prod Z`` in the computational basis."""
    pop = np.bitwise_count(np.arange(1 << n)) & 1
    return -(1.0 - 2.0 * pop)
