"""Bulk property suites backing the ``audit`` CLI command.

Each suite draws a deterministic sample set, evaluates one of the package's
structural guarantees, and reports the worst-case residual.  All suites are
vectorized so the default sample counts finish in seconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imaginarity import QubitBasis, robustness_batch
from .states import rng_from_seed, sample_states
from .steering import isi_operational_batch
from .witness import min_expectation_batch

SQRT2 = math.sqrt(2.0)

_PAULI4 = None


def _param_quadruple(rhos: np.ndarray):
    """(n1, n2, t11, t22) for a stack of two-qubit states."""
    global _PAULI4
    if _PAULI4 is None:
        from .linalg import SI, SX, SY, tensor_product
        _PAULI4 = (tensor_product(SI, SX), tensor_product(SI, SY),
                   tensor_product(SX, SX), tensor_product(SY, SY))
    return tuple(np.einsum("ab,nba->n", op, rhos).real for op in _PAULI4)


@dataclass(frozen=True)
class AuditResult:
    suite: str
    samples: int
    worst: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.tolerance


def suite_separable(n: int = 100_000, seed: int = 0) -> AuditResult:
    """No separable state exceeds the sqrt(2) steering ceiling."""
    rhos = sample_states("separable4", n, seed)
    worst = float(np.max(isi_operational_batch(rhos)) - SQRT2)
    return AuditResult("separable", n, worst, 1e-9)


def suite_convexity(n: int = 10_000, seed: int = 0) -> AuditResult:
    """I2 of a mixture never exceeds the mixture of I2 values."""
    rho1 = sample_states("mixed4", n, seed)
    rho2 = sample_states("mixed4", n, seed + 1)
    alphas = rng_from_seed(seed + 2).choice(np.arange(1, 10) / 10.0, size=n)
    mix = alphas[:, None, None] * rho1 + (1 - alphas)[:, None, None] * rho2
    excess = (isi_operational_batch(mix)
              - alphas * isi_operational_batch(rho1)
              - (1 - alphas) * isi_operational_batch(rho2))
    return AuditResult("convexity", n, float(np.max(excess)), 1e-9)


def suite_duality(n: int = 10_000, seed: int = 0) -> AuditResult:
    """min over the 16 witnesses of Tr[W rho] equals sqrt(2) - I2."""
    rhos = sample_states("mixed4", n, seed)
    n1, n2, t11, t22 = _param_quadruple(rhos)
    mins = min_expectation_batch(n1, n2, t11, t22)
    residual = np.abs(mins - (SQRT2 - isi_operational_batch(rhos)))
    return AuditResult("duality", n, float(np.max(residual)), 1e-9)


def suite_complementarity(n: int = 100_000, seed: int = 0) -> AuditResult:
    """Robustness in the x and y bases never sums past sqrt(2)."""
    qubits = sample_states("qubit", n, seed)
    total = (robustness_batch(qubits, QubitBasis.x())
             + robustness_batch(qubits, QubitBasis.y()))
    return AuditResult("complementarity", n, float(np.max(total) - SQRT2), 1e-9)


def suite_closed_form(n: int = 10_000, seed: int = 0) -> AuditResult:
    """Operational I2 agrees with the 4-parameter closed form."""
    rhos = sample_states("mixed4", n, seed)
    n1, n2, t11, t22 = _param_quadruple(rhos)
    closed = (np.maximum(np.abs(n1), np.abs(t11))
              + np.maximum(np.abs(n2), np.abs(t22)))
    residual = np.abs(isi_operational_batch(rhos) - closed)
    return AuditResult("closed_form", n, float(np.max(residual)), 1e-9)


SUITES = {
    "separable": suite_separable,
    "convexity": suite_convexity,
    "duality": suite_duality,
    "complementarity": suite_complementarity,
    "closed_form": suite_closed_form,
}


def run_suites(names=None, n: int | None = None, seed: int = 0) -> list[AuditResult]:
    """Run the named suites (all by default) with optional sample override."""
    results = []
    for name in names or SUITES:
        fn = SUITES[name]
        results.append(fn(seed=seed) if n is None else fn(n=n, seed=seed))
    return results
