"""Dense complex matrix algebra for small (2/4/8-dimensional) quantum systems.

Everything here operates on plain ``numpy`` arrays of complex128 and is a pure
function of its inputs, so values can be shared freely between workers.
"""

from __future__ import annotations

import numpy as np

SUPPORTED_DIMS = (2, 4, 8)

# Structural checks (Hermiticity, positivity) use this tolerance; arithmetic
# identities in the test-suite are held to 1e-9.
HERMITICITY_TOL = 1e-10
PSD_TOL = 1e-10

SI = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)


def as_matrix(m) -> np.ndarray:
    """Coerce to a square complex matrix of supported dimension."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("square matrix required")
    if a.shape[0] not in SUPPORTED_DIMS:
        raise ValueError("unsupported dimension")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def is_hermitian(m, tol: float = HERMITICITY_TOL) -> bool:
    a = as_matrix(m)
    return bool(np.max(np.abs(a - dagger(a))) <= tol)


def is_psd(m, tol: float = PSD_TOL) -> bool:
    """Positive semidefinite within ``tol`` (requires Hermiticity first)."""
    a = as_matrix(m)
    if not is_hermitian(a, tol):
        return False
    return bool(np.linalg.eigvalsh(a)[0] >= -tol)


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product, restricted to output dimension <= 8."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[0] * b.shape[0] not in SUPPORTED_DIMS:
        raise ValueError("unsupported dimension")
    return np.kron(a, b)


def partial_trace(m, keep: str) -> np.ndarray:
    """Trace out qubit subsystems of a 4- or 8-dimensional matrix.

    For dim 4 (systems A x B) ``keep`` is "A" or "B"; for dim 8
    (systems A x B x C) ``keep`` is "AB" or "AC".
    """
    a = as_matrix(m)
    d = a.shape[0]
    if d == 2:
        raise ValueError("nothing to trace out")
    if d == 4:
        t = a.reshape(2, 2, 2, 2)
        if keep == "A":
            return np.einsum("ijkj->ik", t)
        if keep == "B":
            return np.einsum("ijil->jl", t)
        raise ValueError(f"keep must be 'A' or 'B' for dim 4, got {keep!r}")
    t = a.reshape(2, 2, 2, 2, 2, 2)
    if keep == "AB":
        return np.einsum("ijclmc->ijlm", t).reshape(4, 4)
    if keep == "AC":
        return np.einsum("ibklbn->ikln", t).reshape(4, 4)
    raise ValueError(f"keep must be 'AB' or 'AC' for dim 8, got {keep!r}")


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    a = as_matrix(m)
    if not is_hermitian(a):
        raise ValueError("hermitian required")
    return np.linalg.eigvalsh(a)


def hermitian_eigensystem(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""
    a = as_matrix(m)
    if not is_hermitian(a):
        raise ValueError("hermitian required")
    return np.linalg.eigh(a)


def trace_norm(m) -> float:
    """||m||_1, the sum of singular values; Sum|eig| for Hermitian input."""
    a = as_matrix(m)
    return float(np.sum(np.linalg.svd(a, compute_uv=False)))


def psd_sqrt(m) -> np.ndarray:
    """Hermitian square root of a PSD matrix (small negatives clipped)."""
    a = as_matrix(m)
    if not is_hermitian(a):
        raise ValueError("hermitian required")
    w, v = np.linalg.eigh(a)
    if w[0] < -PSD_TOL:
        raise ValueError("not PSD")
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ dagger(v)
    return 0.5 * (root + dagger(root))
