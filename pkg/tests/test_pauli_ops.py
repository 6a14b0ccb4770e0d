import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majorana_ions.pauli_ops import (
    PauliSum,
    PauliTerm,
    anticommutator,
    fermion_annihilation,
    majorana,
    majorana_mode_annihilation,
    mfq_pauli,
    parity_operator,
    pauli_mul,
    realize,
)
from majorana_ions.spectral import ghz_states
from oracles import jw_annihilator, string_matrix


def term(letters, c=1.0):
    return PauliTerm(c, letters)


def test_single_site_products():
    assert pauli_mul(term("X"), term("Y")) == term("Z", 1j)
    assert pauli_mul(term("Y"), term("X")) == term("Z", -1j)
    assert pauli_mul(term("Z"), term("Z")) == term("I")


def test_identity_is_neutral():
    t = term("XYZ", 0.3 - 2j)
    assert pauli_mul(term("III"), t) == t
    assert pauli_mul(t, term("III")) == t


def test_two_site_product_matches_matrices():
    # (X on 1, Z on 2) * (Y on 1, Z on 2)
    got = pauli_mul(term("XZ"), term("YZ"))
    ref = string_matrix("XZ") @ string_matrix("YZ")
    assert got == term("ZI", 1j)
    np.testing.assert_allclose(realize(got), ref, atol=1e-15)


def test_mismatched_sizes_rejected():
    with pytest.raises(ValueError):
        pauli_mul(term("X"), term("XX"))
    with pytest.raises(ValueError):
        PauliTerm(1.0, "XQ")


def test_canonical_merge_and_drop():
    s = PauliSum([term("XI", 1.0), term("XI", 0.5), term("ZZ", 1e-16), term("IY", 2.0), term("IY", -2.0)])
    assert len(s) == 1
    assert s.coefficient("XI") == 1.5


def test_hermiticity_detection():
    assert PauliSum([term("XZ", 2.0), term("YY", -1.0)]).is_hermitian()
    assert not PauliSum([term("XZ", 1j)]).is_hermitian()


@pytest.mark.parametrize("letters", ["X", "Y", "Z", "XY", "ZYX", "YIZX"])
def test_realize_matches_kron_oracle(letters):
    np.testing.assert_allclose(realize(term(letters, 0.7 - 0.2j)), string_matrix(letters, 0.7 - 0.2j), atol=1e-15)


def test_realize_dense_budget():
    with pytest.raises(ValueError):
        realize(term("Z" * 13))


def test_realize_picks_real_dtype_for_ising_terms():
    assert realize(PauliSum([term("XXI"), term("ZII")])).dtype == np.float64
    assert realize(term("YII")).dtype == np.complex128
    assert realize(term("YYI")).dtype == np.float64


letters_st = st.integers(1, 5).flatmap(
    lambda n: st.tuples(
        st.text("IXYZ", min_size=n, max_size=n),
        st.text("IXYZ", min_size=n, max_size=n),
    )
)
coef_st = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(letters_st, coef_st, coef_st)
def test_realize_is_a_homomorphism(pair, ca, cb):
    a, b = PauliTerm(ca, pair[0]), PauliTerm(cb, pair[1])
    lhs = realize(pauli_mul(a, b), dtype=complex)
    rhs = realize(a, dtype=complex) @ realize(b, dtype=complex)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_annihilator_matches_jw_oracle(n):
    for j in range(1, n + 1):
        np.testing.assert_allclose(realize(fermion_annihilation(j, n)), jw_annihilator(j, n), atol=1e-15)


def test_fermion_anticommutators_n3():
    n = 3
    a = [realize(fermion_annihilation(j, n), dtype=complex) for j in range(1, n + 1)]
    eye = np.eye(8)
    for i in range(n):
        for j in range(n):
            ad = a[j].conj().T
            np.testing.assert_allclose(a[i] @ ad + ad @ a[i], (i == j) * eye, atol=1e-12)
            np.testing.assert_allclose(a[i] @ a[j] + a[j] @ a[i], 0, atol=1e-12)


def test_number_operator_spectrum():
    a1 = fermion_annihilation(1, 3)
    n1 = realize(a1.adjoint() * a1)
    np.testing.assert_allclose(sorted(set(np.round(np.linalg.eigvalsh(n1), 12))), [0.0, 1.0])
    # all spins down is fully occupied; a_1 empties site 1
    all_down = np.zeros(8)
    all_down[7] = 1
    out = realize(a1, dtype=complex) @ all_down
    assert abs(out[6]) == pytest.approx(1.0)


def test_annihilator_index_range():
    with pytest.raises(IndexError):
        fermion_annihilation(0, 3)
    with pytest.raises(IndexError):
        majorana(7, 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("phi", [0.0, math.pi / 3])
def test_majorana_algebra(n, phi):
    cs = [realize(majorana(k, n, phi), dtype=complex) for k in range(1, 2 * n + 1)]
    eye = np.eye(2**n)
    for j, cj in enumerate(cs):
        np.testing.assert_allclose(cj, cj.conj().T, atol=1e-13)
        for k, ck in enumerate(cs):
            np.testing.assert_allclose(cj @ ck + ck @ cj, 2 * (j == k) * eye, atol=1e-12)


def test_majorana_strings_at_zero_phase():
    assert majorana(1, 2) == term("XI")
    assert len(majorana(1, 2)) == 1
    assert majorana(5, 3) == term("ZZX")
    assert majorana(6, 3) == term("ZZY")


def test_majorana_squares_to_identity():
    for k in range(1, 7):
        c = majorana(k, 3)
        assert c * c == term("III")


def test_majorana_general_phase_definition():
    # c_{2j-1} = e^{i phi/2} a + e^{-i phi/2} a^dag with a built at the same phi
    phi = 0.9
    a = fermion_annihilation(2, 3, phi)
    u = np.exp(0.5j * phi)
    assert majorana(3, 3, phi) == u * a + np.conj(u) * a.adjoint()
    assert majorana(4, 3, phi) == (-1j * u) * a + (1j * np.conj(u)) * a.adjoint()


def test_parity_operator():
    assert parity_operator(1) == term("Z", -1.0)
    P4 = realize(parity_operator(4))
    np.testing.assert_allclose(P4 @ P4, np.eye(16))
    psi0, psi1 = ghz_states(3)
    P3 = realize(parity_operator(3))
    np.testing.assert_allclose(P3 @ psi0, psi0, atol=1e-14)
    np.testing.assert_allclose(P3 @ psi1, -psi1, atol=1e-14)


def test_mfq_x_is_single_site():
    assert mfq_pauli("x", 3) == term("XII")


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("literal", [False, True])
def test_mfq_algebra_closes(n, literal):
    x, y, z = (mfq_pauli(a, n, literal) for a in "xyz")
    ident = term("I" * n)
    assert pauli_mul(x, y) == 1j * z
    assert pauli_mul(y, z) == 1j * x
    assert pauli_mul(z, x) == 1j * y
    for op in (x, y, z):
        assert pauli_mul(op, op) == ident
    assert anticommutator(x, y).is_zero()


@pytest.mark.parametrize("n", [2, 3, 5])
def test_mfq_operators_follow_edge_mode_definitions(n):
    aM = majorana_mode_annihilation(n)
    aMd = aM.adjoint()
    assert aMd == 0.5 * (majorana(1, n) + 1j * majorana(2 * n, n))
    assert mfq_pauli("x", n) == aMd + aM
    assert mfq_pauli("y", n) == -1j * (aMd - aM)
    assert mfq_pauli("z", n) == aMd * aM - aM * aMd


def test_literal_strings_differ_by_sign_on_y_and_z():
    n = 4
    assert mfq_pauli("x", n, literal=True) == mfq_pauli("x", n)
    assert mfq_pauli("y", n, literal=True) == PauliTerm(-1.0, "ZZZY")
    assert mfq_pauli("z", n, literal=True) == PauliTerm(1.0, "YZZY")
    assert mfq_pauli("y", n, literal=True) == -mfq_pauli("y", n)
    assert mfq_pauli("z", n, literal=True) == -mfq_pauli("z", n)
