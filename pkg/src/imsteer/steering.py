"""Conditional-state machinery and the four steering criteria.

The central functional is the two-setting imaginarity steering value

    I2(rho) = Sum_a p(a|y) I_R^x(rho_{a|y}) + Sum_a p(a|x) I_R^y(rho_{a|x})

whose classical (unsteerable) ceiling is sqrt(2).  Also provided: the CFFW
(steering-CHSH) value, the 3-setting coherence criterion, the 3-setting
imaginarity criterion, unsharp-measurement conditioning, and bisection
threshold scans over one-parameter state families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imaginarity import (QubitBasis, coherence_measure, imaginarity_measure,
                          robustness_of_imaginarity, _half_diff_norm)
from .linalg import PAULIS, SI, dagger, partial_trace, psd_sqrt, tensor_product
from .states import BlochTwoQubit, require_state

SQRT2 = math.sqrt(2.0)

ISI_BOUND = SQRT2
CFFW_BOUND = 2.0
# Ceilings of the 3-setting criteria.  The l1 values are exact
# (sqrt(6), sqrt(5)); the relative-entropy and skew ceilings are adopted
# numerical constants.
NAQC_BOUNDS = {"l1": math.sqrt(6.0), "rel_entropy": 2.23, "skew": 2.0}
NAQI_BOUNDS = {"l1": math.sqrt(5.0), "rel_entropy": 2.02685}

_ZERO_PROB = 1e-12

X_AXIS = np.array([1.0, 0.0, 0.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])
_AXES = {"x": X_AXIS, "y": Y_AXIS, "z": Z_AXIS}


# ---------------------------------------------------------------------------
# Measurements and conditional ensembles
# ---------------------------------------------------------------------------

def _unit_direction(direction) -> np.ndarray:
    d = np.asarray(direction, dtype=float).reshape(3).copy()
    if abs(np.linalg.norm(d) - 1.0) > 1e-12:
        raise ValueError("measurement direction must be a unit vector")
    d.setflags(write=False)
    return d


def _bloch_operator(direction: np.ndarray) -> np.ndarray:
    return sum(direction[i] * PAULIS[i] for i in range(3))


@dataclass(frozen=True)
class ProjectiveMeasurement:
    """A +/-1 dichotomic observable along a unit Bloch axis."""

    direction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "direction", _unit_direction(self.direction))

    @classmethod
    def along(cls, axis: str) -> "ProjectiveMeasurement":
        return cls(_AXES[axis])

    def effects(self) -> tuple[np.ndarray, np.ndarray]:
        op = _bloch_operator(self.direction)
        return (SI + op) / 2.0, (SI - op) / 2.0


@dataclass(frozen=True)
class UnsharpMeasurement:
    """Single-parameter POVM E_+- = lambda P_+- + (1 - lambda) I/2."""

    direction: np.ndarray
    sharpness: float

    def __post_init__(self):
        object.__setattr__(self, "direction", _unit_direction(self.direction))
        if not (0.0 <= self.sharpness <= 1.0):
            raise ValueError("sharpness must lie in [0, 1]")

    @classmethod
    def along(cls, axis: str, sharpness: float) -> "UnsharpMeasurement":
        return cls(_AXES[axis], sharpness)

    def effects(self) -> tuple[np.ndarray, np.ndarray]:
        lam = self.sharpness
        op = lam * _bloch_operator(self.direction)
        return (SI + op) / 2.0, (SI - op) / 2.0


@dataclass(frozen=True)
class ConditionalOutcome:
    """One branch of Bob's conditional ensemble.

    ``sigma`` is the unnormalized conditional state with trace
    ``probability``; ``rho`` is None when the branch probability vanishes.
    """

    outcome: int
    probability: float
    sigma: np.ndarray
    rho: np.ndarray | None


@dataclass(frozen=True)
class ConditionalEnsemble:
    plus: ConditionalOutcome
    minus: ConditionalOutcome

    def outcomes(self) -> tuple[ConditionalOutcome, ConditionalOutcome]:
        return self.plus, self.minus


def _ensemble_from_effects(rho: np.ndarray, effects) -> ConditionalEnsemble:
    branches = []
    for sign, effect in zip((+1, -1), effects):
        sigma = partial_trace(tensor_product(effect, SI) @ rho, keep="B")
        p = float(np.trace(sigma).real)
        branches.append(ConditionalOutcome(
            outcome=sign,
            probability=p,
            sigma=sigma,
            rho=sigma / p if p > _ZERO_PROB else None))
    return ConditionalEnsemble(plus=branches[0], minus=branches[1])


def condition_on(rho, meas: ProjectiveMeasurement) -> ConditionalEnsemble:
    """Bob's conditional ensemble after Alice's projective measurement."""
    a = require_state(rho, dim=4)
    return _ensemble_from_effects(a, meas.effects())


def condition_on_unsharp(rho, meas: UnsharpMeasurement) -> ConditionalEnsemble:
    """Conditional ensemble for unsharp effects, via the sqrt(E) update map."""
    a = require_state(rho, dim=4)
    branches = []
    for sign, effect in zip((+1, -1), meas.effects()):
        root = tensor_product(psd_sqrt(effect), SI)
        post = root @ a @ root
        p = float(np.trace(post).real)
        sigma = partial_trace(post, keep="B")
        branches.append(ConditionalOutcome(
            outcome=sign,
            probability=p,
            sigma=sigma,
            rho=sigma / p if p > _ZERO_PROB else None))
    return ConditionalEnsemble(plus=branches[0], minus=branches[1])


# ---------------------------------------------------------------------------
# Imaginarity steering (ISI)
# ---------------------------------------------------------------------------

def _isi_from_ensembles(ens_y: ConditionalEnsemble,
                        ens_x: ConditionalEnsemble) -> float:
    """Sum p * I_R over both settings, via the unnormalized branch states
    (absolute homogeneity turns p * I_R(rho) into I_R(sigma), which makes the
    zero-probability branches contribute 0 without special-casing)."""
    bx, by = QubitBasis.x(), QubitBasis.y()
    total = 0.0
    for out in ens_y.outcomes():
        total += _half_diff_norm(out.sigma, bx)
    for out in ens_x.outcomes():
        total += _half_diff_norm(out.sigma, by)
    return total


def isi_operational(rho) -> float:
    """I2 from the actual conditional ensembles (x and y settings)."""
    a = require_state(rho, dim=4)
    ens_y = _ensemble_from_effects(a, ProjectiveMeasurement(Y_AXIS).effects())
    ens_x = _ensemble_from_effects(a, ProjectiveMeasurement(X_AXIS).effects())
    return _isi_from_ensembles(ens_y, ens_x)


def isi_closed(p: BlochTwoQubit) -> float:
    """Closed form of I2 from the 4 parameters n1, n2, t11, t22:
    (|n1-t11| + |n1+t11| + |n2-t22| + |n2+t22|)/2, which equals
    max(|n1|, |t11|) + max(|n2|, |t22|)."""
    n1, n2 = p.n[0], p.n[1]
    t11, t22 = p.T[0, 0], p.T[1, 1]
    return 0.5 * (abs(n1 - t11) + abs(n1 + t11)
                  + abs(n2 - t22) + abs(n2 + t22))


def isi_violated(rho) -> bool:
    """True iff I2 exceeds the classical ceiling sqrt(2)."""
    return isi_operational(rho) > SQRT2 + 1e-12


def isi_unsharp(rho, sharpness: float) -> float:
    """I2 when Alice's x/y measurements have the given sharpness."""
    a = require_state(rho, dim=4)
    ens_y = condition_on_unsharp(a, UnsharpMeasurement(Y_AXIS, sharpness))
    ens_x = condition_on_unsharp(a, UnsharpMeasurement(X_AXIS, sharpness))
    return _isi_from_ensembles(ens_y, ens_x)


def isi_operational_batch(rhos: np.ndarray) -> np.ndarray:
    """Vectorized I2 over a stack of 4x4 states (no per-item validation).

    Follows the same route as :func:`isi_operational`: condition on the x and
    y settings, rewrite each unnormalized branch in the complementary basis,
    and sum half trace norms of m - m^T.
    """
    rhos = np.asarray(rhos, dtype=complex)
    total = np.zeros(rhos.shape[0])
    settings = ((Y_AXIS, QubitBasis.x()), (X_AXIS, QubitBasis.y()))
    for direction, basis in settings:
        u = basis.bras
        for sign in (+1.0, -1.0):
            effect = (SI + sign * _bloch_operator(direction)) / 2.0
            proj = np.kron(effect, SI)
            prod = np.einsum("ab,nbc->nac", proj, rhos)
            sigma = np.einsum("nijil->njl", prod.reshape(-1, 2, 2, 2, 2))
            mb = np.einsum("ab,nbc,cd->nad", u, sigma, dagger(u))
            diff = mb - np.transpose(mb, (0, 2, 1))
            total += 0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff)), axis=1)
    return total


# ---------------------------------------------------------------------------
# CFFW (steering analogue of CHSH)
# ---------------------------------------------------------------------------

def cffw_value(rho,
               a1: ProjectiveMeasurement | None = None,
               a2: ProjectiveMeasurement | None = None,
               b1: ProjectiveMeasurement | None = None,
               b2: ProjectiveMeasurement | None = None) -> float:
    """sqrt(<(A1+A2)B1>^2 + <(A1+A2)B2>^2) + sqrt(<(A1-A2)B1>^2 + <(A1-A2)B2>^2).

    Bob's two observables must be mutually unbiased (orthogonal axes).
    Defaults to the canonical settings A1 = B1 = x, A2 = B2 = y; the
    unsteerable ceiling is 2.
    """
    a = require_state(rho, dim=4)
    a1 = a1 or ProjectiveMeasurement(X_AXIS)
    a2 = a2 or ProjectiveMeasurement(Y_AXIS)
    b1 = b1 or ProjectiveMeasurement(X_AXIS)
    b2 = b2 or ProjectiveMeasurement(Y_AXIS)
    if abs(np.dot(b1.direction, b2.direction)) > 1e-9:
        raise ValueError("non-orthogonal Bob axes")

    def corr(da: np.ndarray, db: np.ndarray) -> float:
        op = tensor_product(_bloch_operator(da), _bloch_operator(db))
        val = np.trace(op @ a)
        return float(val.real)

    plus = np.array([corr(a1.direction, b1.direction) + corr(a2.direction, b1.direction),
                     corr(a1.direction, b2.direction) + corr(a2.direction, b2.direction)])
    minus = np.array([corr(a1.direction, b1.direction) - corr(a2.direction, b1.direction),
                      corr(a1.direction, b2.direction) - corr(a2.direction, b2.direction)])
    return float(np.linalg.norm(plus) + np.linalg.norm(minus))


# ---------------------------------------------------------------------------
# 3-setting criteria: coherence (NAQC) and imaginarity (NAQI)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriterionValue:
    value: float
    bound: float

    @property
    def violated(self) -> bool:
        return self.value > self.bound + 1e-12

    def __iter__(self):
        return iter((self.value, self.bound))


def _conditional_ensembles(rho: np.ndarray, direction: np.ndarray,
                           sharpness: float) -> ConditionalEnsemble:
    if sharpness >= 1.0:
        return _ensemble_from_effects(
            rho, ProjectiveMeasurement(direction).effects())
    return condition_on_unsharp(rho, UnsharpMeasurement(direction, sharpness))


def naqc_value(rho, g: str = "l1", sharpness: float = 1.0) -> CriterionValue:
    """3-setting coherence steering value:
    (1/2) Sum_{j, a, i != j} p(a|j) C_i^g(rho_{a|j}), against ceiling gamma^g."""
    a = require_state(rho, dim=4)
    if g not in NAQC_BOUNDS:
        raise ValueError(f"g must be one of {sorted(NAQC_BOUNDS)}, got {g!r}")
    total = 0.0
    for j in "xyz":
        ens = _conditional_ensembles(a, _AXES[j], sharpness)
        for out in ens.outcomes():
            if out.rho is None:
                continue
            for i in "xyz":
                if i == j:
                    continue
                total += out.probability * coherence_measure(out.rho, i, g)
    return CriterionValue(0.5 * total, NAQC_BOUNDS[g])


# Canonical pairing for the 3-setting imaginarity criterion: Alice measures
# along d, Bob uses the mutually unbiased basis whose axis is orthogonal to d
# and whose ket phases make its imaginarity extract |d . bloch|.
_NAQI_PAIRING = ((X_AXIS, Y_AXIS), (Y_AXIS, Z_AXIS), (Z_AXIS, X_AXIS))


def _naqi_sum(rho: np.ndarray, pairs, g: str, sharpness: float) -> float:
    total = 0.0
    for alice_dir, bob_axis in pairs:
        basis = QubitBasis.from_axis_extractor(bob_axis, alice_dir)
        ens = _conditional_ensembles(rho, alice_dir, sharpness)
        for out in ens.outcomes():
            if out.rho is None:
                continue
            total += out.probability * imaginarity_measure(out.rho, basis, g)
    return total


@dataclass(frozen=True)
class TriadOptimizer:
    """Settings for the optional search over measurement/basis triads."""

    coarse_points: int = 12
    refine_tol: float = 1e-4


def naqi_value(rho, g: str = "l1", optimizer: TriadOptimizer | None = None,
               sharpness: float = 1.0) -> CriterionValue:
    """3-setting imaginarity steering value against ceiling gamma^g.

    By default evaluates the canonical triads (Alice along x, y, z with the
    matched Bob bases).  With ``optimizer`` set, additionally searches over
    rigid rotations of both triads and returns the best value found - a
    deterministic lower bound on the (unspecified) global supremum.
    """
    a = require_state(rho, dim=4)
    if g not in NAQI_BOUNDS:
        raise ValueError(f"g must be one of {sorted(NAQI_BOUNDS)}, got {g!r}")
    value = _naqi_sum(a, _NAQI_PAIRING, g, sharpness)
    if optimizer is not None:
        value = max(value, _naqi_optimize(a, g, sharpness, optimizer))
    return CriterionValue(value, NAQI_BOUNDS[g])


def _rotation(angles: np.ndarray) -> np.ndarray:
    """z-y-z Euler rotation matrix."""
    ca, sa = np.cos(angles[0]), np.sin(angles[0])
    cb, sb = np.cos(angles[1]), np.sin(angles[1])
    cc, sc = np.cos(angles[2]), np.sin(angles[2])
    rz1 = np.array([[ca, -sa, 0], [sa, ca, 0], [0, 0, 1]])
    ry = np.array([[cb, 0, sb], [0, 1, 0], [-sb, 0, cb]])
    rz2 = np.array([[cc, -sc, 0], [sc, cc, 0], [0, 0, 1]])
    return rz1 @ ry @ rz2


def _naqi_optimize(rho: np.ndarray, g: str, sharpness: float,
                   opt: TriadOptimizer) -> float:
    """Coarse per-triad grids followed by coordinate descent on all 6 angles."""

    def evaluate(angles: np.ndarray) -> float:
        # Bob's extractor must stay orthogonal to his basis axis, so both
        # members of each pair rotate rigidly with their own triad; the
        # extractor is Bob's rotated copy of Alice's canonical direction.
        ra, rb = _rotation(angles[:3]), _rotation(angles[3:])
        total = 0.0
        for d, axis in _NAQI_PAIRING:
            basis = QubitBasis.from_axis_extractor(rb @ axis, rb @ d)
            ens = _conditional_ensembles(rho, ra @ d, sharpness)
            for out in ens.outcomes():
                if out.rho is None:
                    continue
                total += out.probability * imaginarity_measure(out.rho, basis, g)
        return total

    m = opt.coarse_points
    grid = [np.linspace(0.0, 2.0 * np.pi, m, endpoint=False),
            np.linspace(0.0, np.pi, m),
            np.linspace(0.0, 2.0 * np.pi, m, endpoint=False)]
    best = np.zeros(6)
    best_val = evaluate(best)
    for triad in (0, 3):  # coarse stage: Alice's angles first, then Bob's
        for a0 in grid[0]:
            for a1 in grid[1]:
                for a2 in grid[2]:
                    cand = best.copy()
                    cand[triad:triad + 3] = (a0, a1, a2)
                    val = evaluate(cand)
                    if val > best_val + 1e-15:
                        best_val, best = val, cand
    step = np.pi / m
    while step > opt.refine_tol:
        improved = False
        for idx in range(6):
            for delta in (step, -step):
                cand = best.copy()
                cand[idx] += delta
                val = evaluate(cand)
                if val > best_val + 1e-15:
                    best_val, best = val, cand
                    improved = True
        if not improved:
            step /= 2.0
    return best_val


# ---------------------------------------------------------------------------
# Threshold scans
# ---------------------------------------------------------------------------

_CRITERIA = {
    "isi": (lambda rho: isi_operational(rho), ISI_BOUND),
    "cffw": (lambda rho: cffw_value(rho), CFFW_BOUND),
    "naqc_l1": (lambda rho: naqc_value(rho, "l1").value, NAQC_BOUNDS["l1"]),
    "naqc_rel_entropy": (lambda rho: naqc_value(rho, "rel_entropy").value,
                         NAQC_BOUNDS["rel_entropy"]),
    "naqc_skew": (lambda rho: naqc_value(rho, "skew").value, NAQC_BOUNDS["skew"]),
    "naqi_l1": (lambda rho: naqi_value(rho, "l1").value, NAQI_BOUNDS["l1"]),
    "naqi_rel_entropy": (lambda rho: naqi_value(rho, "rel_entropy").value,
                         NAQI_BOUNDS["rel_entropy"]),
}


def bisect_threshold(excess, lo: float = 0.0, hi: float = 1.0,
                     tol: float = 1e-6) -> float:
    """Root of a sign-changing scalar function by pre-scan plus bisection.

    A 21-point pre-scan guards against non-monotone inputs: exactly one sign
    change of ``excess`` is required on [lo, hi].
    """
    grid = np.linspace(lo, hi, 21)
    values = np.array([excess(p) for p in grid])
    signs = values > 0
    changes = np.nonzero(signs[1:] != signs[:-1])[0]
    if len(changes) == 0:
        raise ValueError("no threshold in range")
    if len(changes) > 1:
        raise ValueError("criterion is not monotone on the scan range")
    a, b = grid[changes[0]], grid[changes[0] + 1]
    fa = values[changes[0]]
    while b - a > tol:
        mid = 0.5 * (a + b)
        fm = excess(mid)
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def threshold_scan(family, criterion: str, lo: float = 0.0, hi: float = 1.0,
                   tol: float = 1e-6) -> float:
    """Bisect for the family parameter where the criterion meets its bound.

    ``family`` maps a scalar in [lo, hi] to a two-qubit state.
    """
    if criterion not in _CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}")
    evaluate, bound = _CRITERIA[criterion]
    return bisect_threshold(lambda p: evaluate(family(p)) - bound, lo, hi, tol)
