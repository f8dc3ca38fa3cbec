"""Shared oracles and fixtures-in-spirit for the test suite.

Everything here is deliberately independent of the package's own code paths:
oracles use brute-force index sums, characteristic polynomials, or textbook
formulas so they can catch bugs in the production routes.
"""

import numpy as np

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

BELL_VECTORS = {
    "phi+": np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2),
    "phi-": np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2),
    "psi+": np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2),
    "psi-": np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2),
}


def projector(vec: np.ndarray) -> np.ndarray:
    return np.outer(vec, vec.conj())


def kron_oracle(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Quadruple-loop Kronecker product."""
    da, db = a.shape[0], b.shape[0]
    out = np.zeros((da * db, da * db), dtype=complex)
    for i in range(da):
        for j in range(da):
            for k in range(db):
                for l in range(db):
                    out[i * db + k, j * db + l] = a[i, j] * b[k, l]
    return out


def partial_trace_oracle(m: np.ndarray, dims: tuple, traced: int) -> np.ndarray:
    """Explicit index-sum partial trace over one factor of a qubit register."""
    n = len(dims)
    t = m.reshape(*dims, *dims)
    kept = [i for i in range(n) if i != traced]
    size = int(np.prod([dims[i] for i in kept]))
    out = np.zeros((size, size), dtype=complex)
    for row in np.ndindex(*[dims[i] for i in kept]):
        for col in np.ndindex(*[dims[i] for i in kept]):
            acc = 0.0 + 0.0j
            for t_idx in range(dims[traced]):
                full_row = list(row)
                full_col = list(col)
                full_row.insert(traced, t_idx)
                full_col.insert(traced, t_idx)
                acc += t[tuple(full_row) + tuple(full_col)]
            r = int(np.ravel_multi_index(row, [dims[i] for i in kept]))
            c = int(np.ravel_multi_index(col, [dims[i] for i in kept]))
            out[r, c] = acc
    return out


def char_poly_coefficients(a: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial via the Faddeev-LeVerrier recursion
    (no eigensolver involved)."""
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    m = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        am = a @ m
        coeffs[k] = -np.trace(am) / k
        m = am + coeffs[k] * np.eye(n)
    return coeffs


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (g + g.conj().T)


def random_qubit_bloch(rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(3)
    return v * rng.uniform(0.0, 1.0) / np.linalg.norm(v)


def concurrence_oracle(rho: np.ndarray) -> float:
    """Spin-flip concurrence: max(0, l1 - l2 - l3 - l4) with li the sqrt
    eigenvalues of rho (sy x sy) rho* (sy x sy), descending."""
    flip = np.kron(SY, SY)
    prod = rho @ flip @ rho.conj() @ flip
    lam = np.sqrt(np.abs(np.linalg.eigvals(prod).real))
    lam = np.sort(lam)[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))
