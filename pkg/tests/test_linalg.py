import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import (BELL_VECTORS, char_poly_coefficients, kron_oracle,
                     partial_trace_oracle, projector, random_hermitian)
from imsteer.linalg import (SI, SX, SY, SZ, hermitian_eigensystem,
                            hermitian_eigenvalues, is_hermitian, is_psd,
                            partial_trace, psd_sqrt, tensor_product,
                            trace_norm)


def test_tensor_product_identity():
    assert np.allclose(tensor_product(SI, SI), np.eye(4))


def test_tensor_product_pauli_xx():
    expected = np.fliplr(np.eye(4))
    assert np.allclose(tensor_product(SX, SX), expected)


def test_tensor_product_matches_index_oracle():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        assert np.allclose(tensor_product(a, b), kron_oracle(a, b), atol=1e-14)


def test_tensor_product_trace_multiplies():
    rng = np.random.default_rng(1)
    a = random_hermitian(rng, 2)
    b = random_hermitian(rng, 4)
    out = tensor_product(a, b)
    assert np.isclose(np.trace(out), np.trace(a) * np.trace(b))


def test_tensor_product_dimension_overflow():
    with pytest.raises(ValueError, match="unsupported dimension"):
        tensor_product(np.eye(4), np.eye(4))


def test_partial_trace_singlet_reduction():
    rho = projector(BELL_VECTORS["psi-"])
    assert np.allclose(partial_trace(rho, "B"), np.eye(2) / 2, atol=1e-14)
    assert np.allclose(partial_trace(rho, "A"), np.eye(2) / 2, atol=1e-14)


def test_partial_trace_product_state():
    rng = np.random.default_rng(2)
    a = random_hermitian(rng, 2)
    b = random_hermitian(rng, 2)
    rho = tensor_product(a, b) / (np.trace(a) * np.trace(b))
    a_norm = a / np.trace(a)
    assert np.allclose(partial_trace(rho, "A"), a_norm, atol=1e-13)


def test_partial_trace_ghz_keep_ab():
    ghz = np.zeros(8, dtype=complex)
    ghz[0] = ghz[7] = 1 / np.sqrt(2)
    rho = projector(ghz)
    expected = partial_trace_oracle(rho, (2, 2, 2), traced=2)
    got = partial_trace(rho, "AB")
    assert np.allclose(got, expected, atol=1e-14)
    assert np.allclose(got, np.diag([0.5, 0, 0, 0.5]), atol=1e-14)


def test_partial_trace_keep_ac_matches_oracle():
    rng = np.random.default_rng(3)
    m = random_hermitian(rng, 8)
    assert np.allclose(partial_trace(m, "AC"),
                       partial_trace_oracle(m, (2, 2, 2), traced=1),
                       atol=1e-13)


def test_partial_trace_preserves_trace_and_is_linear():
    rng = np.random.default_rng(4)
    a = random_hermitian(rng, 4)
    b = random_hermitian(rng, 4)
    assert np.isclose(np.trace(partial_trace(a, "A")), np.trace(a))
    lhs = partial_trace(2.5 * a - 0.5 * b, "B")
    rhs = 2.5 * partial_trace(a, "B") - 0.5 * partial_trace(b, "B")
    assert np.allclose(lhs, rhs, atol=1e-13)


def test_partial_trace_rejects_dim_2():
    with pytest.raises(ValueError, match="nothing to trace out"):
        partial_trace(np.eye(2), "A")


def test_hermitian_eigenvalues_pauli_spectrum():
    w = hermitian_eigenvalues(tensor_product(SZ, SZ))
    assert np.allclose(w, [-1, -1, 1, 1])
    assert np.allclose(hermitian_eigenvalues(np.eye(4)), [1, 1, 1, 1])


def test_hermitian_eigenvalues_match_char_poly_roots():
    rng = np.random.default_rng(5)
    for _ in range(10):
        m = random_hermitian(rng, 4)
        coeffs = char_poly_coefficients(m)
        roots = np.sort(np.roots(coeffs).real)
        assert np.allclose(hermitian_eigenvalues(m), roots, atol=1e-9)


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(ValueError, match="hermitian required"):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]], dtype=complex))


def test_eigensystem_reconstruction():
    rng = np.random.default_rng(6)
    m = random_hermitian(rng, 8)
    w, v = hermitian_eigensystem(m)
    rebuilt = (v * w) @ v.conj().T
    assert np.max(np.abs(rebuilt - m)) <= 1e-10


def test_trace_norm_zero_matrix():
    assert trace_norm(np.zeros((4, 4))) == 0.0


def test_trace_norm_hand_value():
    m = np.array([[0, -0.6j], [0.6j, 0]])
    assert np.isclose(trace_norm(m), 1.2, atol=1e-12)


def test_trace_norm_matches_singular_value_oracle():
    rng = np.random.default_rng(7)
    for _ in range(10):
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        sv = np.sqrt(np.clip(hermitian_eigenvalues(m.conj().T @ m), 0, None))
        assert np.isclose(trace_norm(m), np.sum(sv), atol=1e-10)


def test_trace_norm_positive_definite_properties():
    rng = np.random.default_rng(8)
    m = random_hermitian(rng, 4)
    assert trace_norm(m) > 0
    assert trace_norm(np.zeros((2, 2))) <= 1e-12


@settings(max_examples=50, deadline=None)
@given(c=st.floats(min_value=-5, max_value=5, allow_nan=False))
def test_trace_norm_absolute_homogeneity(c):
    rng = np.random.default_rng(9)
    m = random_hermitian(rng, 4)
    assert np.isclose(trace_norm(c * m), abs(c) * trace_norm(m), atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_trace_norm_subadditive(seed):
    rng = np.random.default_rng(seed)
    a = random_hermitian(rng, 4)
    b = random_hermitian(rng, 4)
    assert trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-10


def test_psd_sqrt_diagonal():
    assert np.allclose(psd_sqrt(np.diag([4.0, 1.0])), np.diag([2.0, 1.0]))
    assert np.allclose(psd_sqrt(np.eye(2) / 2), np.eye(2) / np.sqrt(2))


def test_psd_sqrt_square_and_compare():
    rng = np.random.default_rng(10)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    m = g @ g.conj().T
    root = psd_sqrt(m)
    assert np.max(np.abs(root @ root - m)) <= 1e-9 * max(1.0, np.abs(m).max())
    assert is_psd(root)


def test_psd_sqrt_rejects_negative():
    with pytest.raises(ValueError, match="not PSD"):
        psd_sqrt(np.diag([1.0, -0.5]))


def test_transpose_difference_is_hermitian():
    # rho - rho^T stays Hermitian for Hermitian rho, which licenses computing
    # its trace norm through eigenvalues.
    rng = np.random.default_rng(11)
    for _ in range(20):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = g @ g.conj().T
        rho /= np.trace(rho)
        assert is_hermitian(rho - rho.T)
