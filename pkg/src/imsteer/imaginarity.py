"""Basis-dependent imaginarity and coherence quantifiers for qubits.

The robustness of imaginarity of a state is half the trace norm of
rho - rho^T, evaluated after rewriting rho in the chosen basis.  Unlike
coherence it is sensitive to the phases of the basis kets, not just their
rays, which is why bases are represented by explicit ket pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import PAULIS, dagger, psd_sqrt, trace_norm
from .states import require_state

_ORTHO_TOL = 1e-12

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class QubitBasis:
    """An ordered orthonormal pair of qubit kets (columns of ``kets``)."""

    kets: np.ndarray

    def __post_init__(self):
        k = np.asarray(self.kets, dtype=complex).reshape(2, 2).copy()
        gram = dagger(k) @ k
        if np.max(np.abs(gram - np.eye(2))) > _ORTHO_TOL:
            raise ValueError("basis not orthonormal")
        k.setflags(write=False)
        object.__setattr__(self, "kets", k)

    @property
    def bras(self) -> np.ndarray:
        """Unitary whose rows are the basis bras; rewrites states via U rho U+."""
        return dagger(self.kets)

    def represent(self, rho: np.ndarray) -> np.ndarray:
        u = self.bras
        return u @ rho @ dagger(u)

    @classmethod
    def z(cls) -> "QubitBasis":
        return cls(np.eye(2, dtype=complex))

    @classmethod
    def x(cls) -> "QubitBasis":
        s = 1.0 / SQRT2
        return cls(np.array([[s, s], [s, -s]], dtype=complex))

    @classmethod
    def y(cls) -> "QubitBasis":
        s = 1.0 / SQRT2
        return cls(np.array([[s, s], [1j * s, -1j * s]], dtype=complex))

    @classmethod
    def from_axis_extractor(cls, axis, extractor) -> "QubitBasis":
        """Basis whose kets are the +/- eigenstates of axis.sigma, with the
        relative ket phase fixed so the robustness of imaginarity equals
        |extractor . bloch(rho)|.  Requires extractor orthogonal to axis.

        The standard bases arise as special cases: z = (z-axis, y-extractor),
        x = (x-axis, y), y = (y-axis, x).
        """
        a = np.asarray(axis, dtype=float).reshape(3)
        r = np.asarray(extractor, dtype=float).reshape(3)
        a = a / np.linalg.norm(a)
        r = r / np.linalg.norm(r)
        if abs(np.dot(a, r)) > 1e-10:
            raise ValueError("extractor must be orthogonal to axis")
        s = np.cross(r, a)
        pauli_a = sum(a[i] * PAULIS[i] for i in range(3))
        pauli_s = sum(s[i] * PAULIS[i] for i in range(3))
        w, v = np.linalg.eigh(pauli_a)  # ascending: column 0 <-> eigenvalue -1
        e0, e1 = v[:, 1], v[:, 0]
        c = np.conj(e0) @ (pauli_s @ e1)  # |c| = 1 since s anticommutes with a
        e1 = np.conj(c) * e1
        return cls(np.column_stack([e0, e1]))


def mub_triad(theta: float, phi: float) -> tuple[QubitBasis, QubitBasis, QubitBasis]:
    """The standard triad of mutually unbiased qubit bases built from the
    angle-parameterized kets u = cos(t/2)|0> + e^{i phi} sin(t/2)|1> and
    d = sin(t/2)|0> - e^{i phi} cos(t/2)|1>."""
    ct, st = np.cos(theta / 2.0), np.sin(theta / 2.0)
    ph = np.exp(1j * phi)
    u = np.array([ct, ph * st], dtype=complex)
    d = np.array([st, -ph * ct], dtype=complex)
    b1 = QubitBasis(np.column_stack([u, d]))
    b2 = QubitBasis(np.column_stack([(u + d), (u - d)]) / SQRT2)
    b3 = QubitBasis(np.column_stack([(u + 1j * d), (u - 1j * d)]) / SQRT2)
    return b1, b2, b3


# ---------------------------------------------------------------------------
# Robustness of imaginarity
# ---------------------------------------------------------------------------

def _half_diff_norm(matrix: np.ndarray, basis: QubitBasis) -> float:
    """(1/2) || m - m^T ||_1 in the given basis, for any Hermitian m.

    Absolute homogeneity of the trace norm makes this equal to
    p * robustness(m / p) for unnormalized conditional states m with trace p,
    and it vanishes smoothly as p -> 0.
    """
    mb = basis.represent(matrix)
    return 0.5 * trace_norm(mb - mb.T)


def robustness_of_imaginarity(rho, basis: QubitBasis) -> float:
    """Half the trace norm of rho - rho^T in ``basis``; lies in [0, 1]."""
    if not isinstance(basis, QubitBasis):
        raise ValueError("invalid basis")
    a = require_state(rho, dim=2)
    return _half_diff_norm(a, basis)


def robustness_closed_form(n, which: str, theta: float, phi: float) -> float:
    """Closed-form robustness for the MUB triad, from the Bloch vector alone.

    ``which`` is "B1", "B2" (identical values) or "B3".  Absolute values are
    applied throughout since the underlying quantity is a norm.
    """
    nx, ny, nz = np.asarray(n, dtype=float).reshape(3)
    if which in ("B1", "B2", "B1orB2"):
        return abs(ny * np.cos(phi) - nx * np.sin(phi))
    if which == "B3":
        return abs(nx * np.cos(theta) * np.cos(phi)
                   + ny * np.cos(theta) * np.sin(phi)
                   - nz * np.sin(theta))
    raise ValueError(f"which must be 'B1', 'B2' or 'B3', got {which!r}")


def robustness_batch(rhos: np.ndarray, basis: QubitBasis) -> np.ndarray:
    """Vectorized robustness for a stack of Hermitian 2x2 matrices.

    Inputs are not re-validated; intended for bulk property suites.
    """
    u = basis.bras
    mb = np.einsum("ab,nbc,cd->nad", u, rhos, dagger(u))
    diff = mb - np.transpose(mb, (0, 2, 1))
    return 0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff)), axis=1)


# ---------------------------------------------------------------------------
# Other quantifiers
# ---------------------------------------------------------------------------

def von_neumann_entropy(rho) -> float:
    """-Sum lambda log2 lambda over the spectrum, with 0 log 0 = 0."""
    a = require_state(rho)
    w = np.linalg.eigvalsh(a)
    w = np.clip(w, 0.0, None)
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log2(w)))


def _entropy_of_spectrum(w: np.ndarray) -> float:
    w = np.clip(np.real(w), 0.0, None)
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log2(w)))


def imaginarity_measure(rho, basis: QubitBasis, g: str = "l1") -> float:
    """l1 or relative-entropy imaginarity of a qubit in the given basis.

    l1 sums |Im| over the off-diagonal entries; the relative-entropy form is
    S((rho + rho^T)/2) - S(rho), both after rewriting rho in ``basis``.
    """
    a = require_state(rho, dim=2)
    mb = basis.represent(a)
    if g == "l1":
        off = mb - np.diag(np.diag(mb))
        return float(np.sum(np.abs(off.imag)))
    if g == "rel_entropy":
        real_part = 0.5 * (mb + mb.T)
        return (_entropy_of_spectrum(np.linalg.eigvalsh(real_part))
                - _entropy_of_spectrum(np.linalg.eigvalsh(mb)))
    raise ValueError(f"g must be 'l1' or 'rel_entropy', got {g!r}")


_AXIS_BASES = {"x": QubitBasis.x, "y": QubitBasis.y, "z": QubitBasis.z}


def coherence_measure(rho, axis: str = "z", g: str = "l1") -> float:
    """Coherence of a qubit in the eigenbasis of the given Pauli axis.

    Supports the l1 norm, relative entropy S(rho_d) - S(rho), and the skew
    information 1 - Tr[sqrt(rho) sigma sqrt(rho) sigma].
    """
    a = require_state(rho, dim=2)
    if axis not in _AXIS_BASES:
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    if g == "skew":
        pauli = PAULIS["xyz".index(axis)]
        root = psd_sqrt(a)
        val = np.trace(root @ pauli @ root @ pauli)
        return float(1.0 - val.real)
    mb = _AXIS_BASES[axis]().represent(a)
    if g == "l1":
        off = mb - np.diag(np.diag(mb))
        return float(np.sum(np.abs(off)))
    if g == "rel_entropy":
        return (_entropy_of_spectrum(np.diag(mb))
                - _entropy_of_spectrum(np.linalg.eigvalsh(mb)))
    raise ValueError(f"g must be 'l1', 'rel_entropy' or 'skew', got {g!r}")


# ---------------------------------------------------------------------------
# Complementarity
# ---------------------------------------------------------------------------

def complementarity_sum(rho, mode: str = "xy",
                        theta: float | None = None,
                        phi: float | None = None) -> float:
    """Sum of robustnesses over two mutually unbiased bases; bounded by sqrt(2).

    ``mode="xy"`` uses the x and y bases; ``mode="mub"`` uses the B2 and B3
    members of the triad at (theta, phi).
    """
    a = require_state(rho, dim=2)
    if mode == "xy":
        return (_half_diff_norm(a, QubitBasis.x())
                + _half_diff_norm(a, QubitBasis.y()))
    if mode == "mub":
        if theta is None or phi is None:
            raise ValueError("mub mode requires theta and phi")
        _, b2, b3 = mub_triad(theta, phi)
        return _half_diff_norm(a, b2) + _half_diff_norm(a, b3)
    raise ValueError(f"mode must be 'xy' or 'mub', got {mode!r}")


def complementarity_extremal_bloch(theta: float, phi: float) -> np.ndarray:
    """A Bloch vector attaining the sqrt(2) bound of the B2+B3 complementarity
    at the given triad angles (equal weight along both extractor directions)."""
    r23 = np.array([-np.sin(phi), np.cos(phi), 0.0])
    r3 = np.array([np.cos(theta) * np.cos(phi),
                   np.cos(theta) * np.sin(phi),
                   -np.sin(theta)])
    return (r23 + r3) / SQRT2
