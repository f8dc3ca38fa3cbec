"""State families, Fano (Bloch) parameterization, validation, and samplers.

All constructors return plain complex ``numpy`` arrays that pass
:func:`validate`.  Randomness comes exclusively from NumPy's PCG64 generator
(O'Neill's permuted congruential generator, as shipped in ``numpy.random``),
so fixed seeds reproduce the same states on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import PAULIS, SI, SY, SZ, as_matrix, dagger, tensor_product

VALIDATION_TOL = 1e-9
_BOUND_SLACK = 1e-9

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)

# |psi-> = (|01> - |10>)/sqrt(2)
_SINGLET_VEC = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


# ---------------------------------------------------------------------------
# Parameter records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlochTwoQubit:
    """Two-qubit Fano parameters: local Bloch vectors and correlation matrix.

    ``m`` is the first (untrusted) party's Bloch vector, ``n`` the second
    (trusted) party's, and ``T`` the 3x3 correlation matrix with entries
    t_ij = Tr[(sigma_i x sigma_j) rho].
    """

    m: np.ndarray
    n: np.ndarray
    T: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float).reshape(3).copy()
        n = np.asarray(self.n, dtype=float).reshape(3).copy()
        t = np.asarray(self.T, dtype=float).reshape(3, 3).copy()
        if (np.linalg.norm(m) > 1 + _BOUND_SLACK
                or np.linalg.norm(n) > 1 + _BOUND_SLACK
                or np.max(np.abs(t)) > 1 + _BOUND_SLACK):
            raise ValueError("bloch out of range")
        for arr in (m, n, t):
            arr.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "T", t)


@dataclass(frozen=True)
class XStateParams:
    """The 7 real parameters of a two-qubit X-state.

    Validity of the induced matrix (diagonal/anti-diagonal positivity) is
    checked when :func:`x_state` builds it, not here.
    """

    beta_z0: float = 0.0
    beta_0z: float = 0.0
    beta_xx: float = 0.0
    beta_xy: float = 0.0
    beta_yx: float = 0.0
    beta_yy: float = 0.0
    beta_zz: float = 0.0


@dataclass(frozen=True)
class TripartiteParams:
    """Amplitudes (eta_0..eta_4) and phase theta of the canonical pure
    three-qubit state eta0|000> + eta1 e^{i theta}|100> + eta2|101>
    + eta3|110> + eta4|111>."""

    eta: tuple[float, float, float, float, float]
    theta: float = 0.0

    def __post_init__(self):
        eta = tuple(float(e) for e in self.eta)
        if len(eta) != 5:
            raise ValueError("eta must have 5 entries")
        if any(e < -1e-12 or e > 1 + 1e-12 for e in eta):
            raise ValueError("eta entries must lie in [0, 1]")
        if abs(sum(e * e for e in eta) - 1.0) > 1e-12:
            raise ValueError("unnormalized eta: sum of squares must be 1")
        if not (0.0 <= self.theta <= np.pi + 1e-12):
            raise ValueError("theta must lie in [0, pi]")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "theta", float(self.theta))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StateDiagnostics:
    hermiticity_residual: float
    trace_deviation: float
    min_eigenvalue: float

    @property
    def passes(self) -> bool:
        return (self.hermiticity_residual <= VALIDATION_TOL
                and self.trace_deviation <= VALIDATION_TOL
                and self.min_eigenvalue >= -VALIDATION_TOL)


def validate(rho) -> StateDiagnostics:
    """Diagnostics for a candidate density matrix (never raises)."""
    a = as_matrix(rho)
    herm = float(np.max(np.abs(a - dagger(a))))
    tr_dev = float(abs(np.trace(a) - 1.0))
    w = np.linalg.eigvalsh(0.5 * (a + dagger(a)))
    return StateDiagnostics(herm, tr_dev, float(w[0]))


def require_state(rho, dim: int | None = None) -> np.ndarray:
    """Return ``rho`` as an array after checking it is a valid density matrix."""
    a = as_matrix(rho)
    if dim is not None and a.shape[0] != dim:
        raise ValueError(f"expected a {dim}-dimensional state, got {a.shape[0]}")
    diag = validate(a)
    if not diag.passes:
        raise ValueError(
            "invalid density matrix: "
            f"hermiticity residual {diag.hermiticity_residual:.3g}, "
            f"trace deviation {diag.trace_deviation:.3g}, "
            f"min eigenvalue {diag.min_eigenvalue:.3g}")
    return a


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def from_bloch(p: BlochTwoQubit) -> np.ndarray:
    """Assemble the 4x4 matrix from Fano parameters.

    The output is Hermitian with unit trace; positivity is *not* implied by
    the parameter bounds and must be checked separately via :func:`validate`.
    """
    rho = tensor_product(SI, SI).astype(complex)
    for i in range(3):
        rho += p.m[i] * tensor_product(PAULIS[i], SI)
        rho += p.n[i] * tensor_product(SI, PAULIS[i])
        for j in range(3):
            rho += p.T[i, j] * tensor_product(PAULIS[i], PAULIS[j])
    return rho / 4.0


def to_bloch(rho) -> BlochTwoQubit:
    """Extract (m, n, T) via Pauli expectation values."""
    a = require_state(rho, dim=4)
    m = np.empty(3)
    n = np.empty(3)
    t = np.empty((3, 3))
    for i, s in enumerate(PAULIS):
        m[i] = _real_expect(tensor_product(s, SI), a)
        n[i] = _real_expect(tensor_product(SI, s), a)
        for j, r in enumerate(PAULIS):
            t[i, j] = _real_expect(tensor_product(s, r), a)
    return BlochTwoQubit(m=m, n=n, T=t)


def _real_expect(op: np.ndarray, rho: np.ndarray) -> float:
    val = np.trace(op @ rho)
    if abs(val.imag) > 1e-10:
        raise ValueError("expectation value has non-negligible imaginary part")
    return float(val.real)


def singlet() -> np.ndarray:
    """Projector onto |psi-> = (|01> - |10>)/sqrt(2)."""
    return np.outer(_SINGLET_VEC, _SINGLET_VEC.conj())


def qubit_from_bloch(n) -> np.ndarray:
    """(I + n.sigma)/2 for a Bloch vector with |n| <= 1."""
    v = np.asarray(n, dtype=float).reshape(3)
    if np.linalg.norm(v) > 1 + _BOUND_SLACK:
        raise ValueError("bloch out of range")
    rho = SI.copy()
    for i in range(3):
        rho += v[i] * PAULIS[i]
    return rho / 2.0


def werner(v: float) -> np.ndarray:
    """v |psi-><psi-| + (1-v)/4 I, with visibility 0 <= v <= 1."""
    if not (0.0 <= v <= 1.0):
        raise ValueError("visibility must lie in [0, 1]")
    return v * singlet() + (1.0 - v) / 4.0 * np.eye(4, dtype=complex)


def x_state(p: XStateParams) -> np.ndarray:
    """Build the X-pattern matrix from its 7 Pauli coefficients.

    Raises if the induced matrix is not positive (diagonal entries must be
    nonnegative and each 2x2 diagonal/anti-diagonal block must have
    nonnegative determinant).
    """
    r11 = 0.25 * (1 + p.beta_z0 + p.beta_0z + p.beta_zz)
    r22 = 0.25 * (1 + p.beta_z0 - p.beta_0z - p.beta_zz)
    r33 = 0.25 * (1 - p.beta_z0 + p.beta_0z - p.beta_zz)
    r44 = 0.25 * (1 - p.beta_z0 - p.beta_0z + p.beta_zz)
    r14 = 0.25 * (p.beta_xx - p.beta_yy) - 0.25j * (p.beta_xy + p.beta_yx)
    r23 = 0.25 * (p.beta_xx + p.beta_yy) + 0.25j * (p.beta_xy - p.beta_yx)
    tol = 1e-12
    ok = (min(r11, r22, r33, r44) >= -tol
          and r11 * r44 - abs(r14) ** 2 >= -tol
          and r22 * r33 - abs(r23) ** 2 >= -tol)
    if not ok:
        raise ValueError("invalid X-state parameters")
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = r11, r22, r33, r44
    rho[0, 3], rho[3, 0] = r14, np.conj(r14)
    rho[1, 2], rho[2, 1] = r23, np.conj(r23)
    return rho


def x_state_params(rho) -> XStateParams:
    """Recover the 7 X-state coefficients from a matrix with the X pattern."""
    b = to_bloch(rho)
    return XStateParams(
        beta_z0=float(b.m[2]), beta_0z=float(b.n[2]),
        beta_xx=float(b.T[0, 0]), beta_xy=float(b.T[0, 1]),
        beta_yx=float(b.T[1, 0]), beta_yy=float(b.T[1, 1]),
        beta_zz=float(b.T[2, 2]))


def mems_weight(c: float) -> float:
    """Piecewise diagonal weight of the maximally entangled mixed states:
    1/3 below concurrence 2/3, c/2 above."""
    return 1.0 / 3.0 if c < 2.0 / 3.0 else c / 2.0


def mems(c: float) -> np.ndarray:
    """Maximally entangled mixed state of concurrence c in [0, 1]."""
    if not (0.0 <= c <= 1.0):
        raise ValueError("concurrence must lie in [0, 1]")
    h = mems_weight(c)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = h
    rho[1, 1] = 1.0 - 2.0 * h
    rho[0, 3] = rho[3, 0] = c / 2.0
    return rho


def tripartite_vector(p: TripartiteParams) -> np.ndarray:
    """The 8-component ket of the canonical three-qubit pure state."""
    e0, e1, e2, e3, e4 = p.eta
    psi = np.zeros(8, dtype=complex)
    psi[0b000] = e0
    psi[0b100] = e1 * np.exp(1j * p.theta)
    psi[0b101] = e2
    psi[0b110] = e3
    psi[0b111] = e4
    return psi


def tripartite_state(p: TripartiteParams) -> np.ndarray:
    """Rank-1 projector onto the canonical three-qubit pure state."""
    psi = tripartite_vector(p)
    return np.outer(psi, psi.conj())


# ---------------------------------------------------------------------------
# Random samplers
# ---------------------------------------------------------------------------

SAMPLE_KINDS = ("pure4", "mixed4", "product4", "separable4", "qubit")
_MAX_SEPARABLE_TERMS = 16
_BATCH_CHUNK = 8192  # fixed, so the PCG64 stream layout is reproducible


def rng_from_seed(seed: int) -> np.random.Generator:
    """PCG64-backed generator; the package's single source of randomness."""
    return np.random.Generator(np.random.PCG64(seed))


def _ginibre(rng: np.random.Generator, dim: int, size: int) -> np.ndarray:
    """Batch of ``size`` Ginibre-induced mixed states of dimension ``dim``."""
    g = (rng.standard_normal((size, dim, dim))
         + 1j * rng.standard_normal((size, dim, dim)))
    rho = g @ np.conj(np.swapaxes(g, 1, 2))
    tr = np.trace(rho, axis1=1, axis2=2).real
    return rho / tr[:, None, None]


def _haar_projectors(rng: np.random.Generator, dim: int, size: int) -> np.ndarray:
    v = (rng.standard_normal((size, dim))
         + 1j * rng.standard_normal((size, dim)))
    v /= np.linalg.norm(v, axis=1)[:, None]
    return np.einsum("ni,nj->nij", v, v.conj())


def _kron22(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched Kronecker product of (..., 2, 2) arrays -> (..., 4, 4)."""
    out = np.einsum("...ij,...kl->...ikjl", a, b)
    return out.reshape(*a.shape[:-2], 4, 4)


def _separable_batch(rng: np.random.Generator, size: int) -> np.ndarray:
    """Convex mixtures of K <= 16 random product states, K uniform in 1..16
    and simplex weights from normalized exponentials."""
    k = rng.integers(1, _MAX_SEPARABLE_TERMS + 1, size=size)
    w = rng.exponential(1.0, size=(size, _MAX_SEPARABLE_TERMS))
    w[np.arange(_MAX_SEPARABLE_TERMS)[None, :] >= k[:, None]] = 0.0
    w /= w.sum(axis=1)[:, None]
    qa = _ginibre(rng, 2, size * _MAX_SEPARABLE_TERMS).reshape(
        size, _MAX_SEPARABLE_TERMS, 2, 2)
    qb = _ginibre(rng, 2, size * _MAX_SEPARABLE_TERMS).reshape(
        size, _MAX_SEPARABLE_TERMS, 2, 2)
    prods = _kron22(qa, qb)
    return np.einsum("nk,nkij->nij", w, prods)


def sample_states(kind: str, n: int, seed: int) -> np.ndarray:
    """Batch of ``n`` random states of the requested class, shape (n, d, d).

    Deterministic for a fixed (kind, n prefix, seed): samples are generated
    in fixed-size chunks from a single PCG64 stream.
    """
    if kind not in SAMPLE_KINDS:
        raise ValueError(f"unknown sample kind {kind!r}")
    rng = rng_from_seed(seed)
    dim = 2 if kind == "qubit" else 4
    out = np.empty((n, dim, dim), dtype=complex)
    done = 0
    while done < n:
        size = min(_BATCH_CHUNK, n - done)
        if kind == "qubit":
            chunk = _ginibre(rng, 2, size)
        elif kind == "mixed4":
            chunk = _ginibre(rng, 4, size)
        elif kind == "pure4":
            chunk = _haar_projectors(rng, 4, size)
        elif kind == "product4":
            chunk = _kron22(_ginibre(rng, 2, size), _ginibre(rng, 2, size))
        else:
            chunk = _separable_batch(rng, size)
        out[done:done + size] = chunk
        done += size
    return out


def sample_state(kind: str, seed: int) -> np.ndarray:
    """Single random state of the requested class (see :func:`sample_states`)."""
    return sample_states(kind, 1, seed)[0]
