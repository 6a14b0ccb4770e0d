"""Independent reference constructions built from explicit Kronecker products."""
from functools import reduce

import numpy as np

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)
LEFT = (UP - DOWN) / np.sqrt(2)
RIGHT = (UP + DOWN) / np.sqrt(2)


def kron_chain(factors):
    """Site 1 is the least-significant index, i.e. the rightmost Kronecker factor."""
    return reduce(np.kron, list(factors)[::-1])


def string_matrix(letters, coefficient=1.0):
    return coefficient * kron_chain(PAULI[c] for c in letters)


def product_state(single):
    return kron_chain(single)


def sigma_plus():
    return np.array([[0, 1], [0, 0]], dtype=complex)  # |up><down|


def jw_annihilator(j, n):
    ops = [PAULI["Z"]] * (j - 1) + [sigma_plus()] + [PAULI["I"]] * (n - j)
    return kron_chain(ops)


def tfim_matrix(n, J=1.0, h=0.0):
    H = np.zeros((2**n, 2**n), dtype=complex)
    for j in range(n - 1):
        letters = ["I"] * n
        letters[j] = letters[j + 1] = "X"
        H -= J * string_matrix(letters)
    for j in range(n):
        letters = ["I"] * n
        letters[j] = "Z"
        H -= h * string_matrix(letters)
    return H
