"""The 16 imaginarity-steering witness operators and their decompositions.

Each operator has the form sqrt(2) I4 - W where W picks one of
{<I x sx>, <sx x sx>} and one of {<I x sy>, <sy x sy>} with independent signs:
four families (k = 1..4) times four sign pairs (i, j).  A state violates the
steering ceiling sqrt(2) exactly when some witness has negative expectation,
and min over all 16 expectations equals sqrt(2) - I2(rho).

For experiments, every witness decomposes into 8 weighted products of local
x- and y-basis projectors; :func:`projector_decomposition` reproduces the
operator exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .linalg import SI, SX, SY, tensor_product
from .states import BlochTwoQubit, require_state

SQRT2 = math.sqrt(2.0)

FAMILIES = (1, 2, 3, 4)

# Local projector kets used by the decompositions.
_KETS = {
    "0x": np.array([1, 1], dtype=complex) / SQRT2,
    "1x": np.array([1, -1], dtype=complex) / SQRT2,
    "0y": np.array([1, 1j], dtype=complex) / SQRT2,
    "1y": np.array([1, -1j], dtype=complex) / SQRT2,
}
PROJECTORS = {label: np.outer(k, k.conj()) for label, k in _KETS.items()}

# Which Pauli term each family couples to, per slot (x slot, y slot):
# True means the correlated form (sigma x sigma), False the local (I x sigma).
_CORRELATED = {1: (False, False), 2: (False, True),
               3: (True, False), 4: (True, True)}

# Projector label pairs (alice, bob) for the two 4-tuples of each slot.
_LOCAL_PAIRS = {
    "x": ((("0x", "0x"), ("1x", "0x")), (("0x", "1x"), ("1x", "1x"))),
    "y": ((("0y", "0y"), ("1y", "0y")), (("0y", "1y"), ("1y", "1y"))),
}
_CORRELATED_PAIRS = {
    "x": ((("0x", "0x"), ("1x", "1x")), (("1x", "0x"), ("0x", "1x"))),
    "y": ((("0y", "0y"), ("1y", "1y")), (("1y", "0y"), ("0y", "1y"))),
}


@dataclass(frozen=True)
class WitnessOperator:
    """One member of the witness family: matrix = sqrt(2) I4 - W^k_{i,j}."""

    k: int
    i: int
    j: int
    matrix: np.ndarray

    @property
    def nu(self) -> tuple[float, float, float, float]:
        """Decomposition coefficients (nu1, nu2, nu3, nu4)."""
        return (SQRT2 + (-1.0) ** (self.i + 1),
                SQRT2 + (-1.0) ** self.i,
                (-1.0) ** (self.j + 1),
                (-1.0) ** self.j)

    @property
    def normalized_matrix(self) -> np.ndarray:
        """Unit-trace form matrix / (4 sqrt(2))."""
        return self.matrix / (4.0 * SQRT2)


def build_witness(k: int, i: int, j: int) -> WitnessOperator:
    """Construct sqrt(2) I4 - [(-1)^i X-term + (-1)^j Y-term] for family k."""
    if k not in FAMILIES:
        raise ValueError(f"family k must be in {FAMILIES}, got {k!r}")
    if i not in (0, 1) or j not in (0, 1):
        raise ValueError("sign indices i, j must be 0 or 1")
    corr_x, corr_y = _CORRELATED[k]
    term_x = tensor_product(SX, SX) if corr_x else tensor_product(SI, SX)
    term_y = tensor_product(SY, SY) if corr_y else tensor_product(SI, SY)
    w = (-1.0) ** i * term_x + (-1.0) ** j * term_y
    matrix = SQRT2 * np.eye(4, dtype=complex) - w
    matrix.setflags(write=False)
    return WitnessOperator(k=k, i=i, j=j, matrix=matrix)


def all_witnesses() -> tuple[WitnessOperator, ...]:
    """All 16 operators in lexicographic (k, i, j) order."""
    return tuple(build_witness(k, i, j)
                 for k, i, j in product(FAMILIES, (0, 1), (0, 1)))


def witness_expectation(w: WitnessOperator, rho) -> float:
    """Tr[w.matrix rho]; negative values certify imaginarity steering."""
    a = require_state(rho, dim=4)
    val = np.trace(w.matrix @ a)
    if abs(val.imag) >= 1e-10:
        raise ArithmeticError("witness expectation has an imaginary residue")
    return float(val.real)


def _expectation_from_params(k: int, i: int, j: int, p: BlochTwoQubit) -> float:
    corr_x, corr_y = _CORRELATED[k]
    u = p.T[0, 0] if corr_x else p.n[0]
    w = p.T[1, 1] if corr_y else p.n[1]
    return SQRT2 - ((-1.0) ** i * u + (-1.0) ** j * w)


def select_witness(p: BlochTwoQubit) -> tuple[WitnessOperator, float]:
    """Witness with minimal expectation on the state with these parameters.

    The minimum over all 16 equals sqrt(2) - I2; ties are broken by lowest
    (k, i, j).
    """
    best: tuple[int, int, int] | None = None
    best_val = math.inf
    for k, i, j in product(FAMILIES, (0, 1), (0, 1)):
        val = _expectation_from_params(k, i, j, p)
        if val < best_val:
            best, best_val = (k, i, j), val
    assert best is not None
    return build_witness(*best), best_val


def min_expectation_batch(n1, n2, t11, t22) -> np.ndarray:
    """Vectorized min over the 16 witnesses, from the 4 Bloch parameters."""
    terms_u = (np.asarray(n1, dtype=float), np.asarray(t11, dtype=float))
    terms_w = (np.asarray(n2, dtype=float), np.asarray(t22, dtype=float))
    best = None
    for u in terms_u:
        for w in terms_w:
            for su in (1.0, -1.0):
                for sw in (1.0, -1.0):
                    val = SQRT2 - (su * u + sw * w)
                    best = val if best is None else np.minimum(best, val)
    return best


@dataclass(frozen=True)
class ProjectorTerm:
    """One weighted product projector of a witness decomposition."""

    coefficient: float
    alice: str
    bob: str

    @property
    def matrix(self) -> np.ndarray:
        return self.coefficient * tensor_product(
            PROJECTORS[self.alice], PROJECTORS[self.bob])


def projector_decomposition(w: WitnessOperator) -> list[ProjectorTerm]:
    """The 8-term product-projector decomposition of a witness.

    Terms use only the four local projectors 0x, 1x, 0y, 1y; their weighted
    sum reconstructs ``w.matrix`` exactly.
    """
    nu1, nu2, nu3, nu4 = w.nu
    corr_x, corr_y = _CORRELATED[w.k]
    pairs_x = _CORRELATED_PAIRS["x"] if corr_x else _LOCAL_PAIRS["x"]
    pairs_y = _CORRELATED_PAIRS["y"] if corr_y else _LOCAL_PAIRS["y"]
    terms: list[ProjectorTerm] = []
    for coeff, pair_group in ((nu1, pairs_x[0]), (nu2, pairs_x[1]),
                              (nu3, pairs_y[0]), (nu4, pairs_y[1])):
        for alice, bob in pair_group:
            terms.append(ProjectorTerm(coefficient=coeff, alice=alice, bob=bob))
    return terms


def reconstruct(terms: list[ProjectorTerm]) -> np.ndarray:
    """Weighted sum of the decomposition terms."""
    total = np.zeros((4, 4), dtype=complex)
    for term in terms:
        total += term.matrix
    return total


def to_json_dict(w: WitnessOperator) -> dict:
    """JSON-ready description: indices, nu coefficients, matrix, decomposition."""
    return {
        "k": w.k,
        "i": w.i,
        "j": w.j,
        "nu": list(w.nu),
        "matrix": {
            "re": w.matrix.real.tolist(),
            "im": w.matrix.imag.tolist(),
        },
        "decomposition": [
            {"nu": t.coefficient, "alice": t.alice, "bob": t.bob}
            for t in projector_decomposition(w)
        ],
    }
