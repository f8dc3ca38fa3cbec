"""Tripartite reductions and the monogamy trade-off of imaginarity steering.

For the canonical pure three-qubit state the two bipartite cuts satisfy
I2(rho_AB) + I2(rho_AC) <= 2 sqrt(2): whenever Alice steers Bob's imaginarity
past the classical ceiling, she cannot simultaneously steer Charlie's.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

import numpy as np

from .states import TripartiteParams

SQRT2 = math.sqrt(2.0)
MONOGAMY_BOUND = 2.0 * SQRT2

# Analytic maximizer of the sum: eta0 = 1/sqrt(2), eta2 = eta3 = 1/2.
MAXIMIZER = TripartiteParams(eta=(1.0 / SQRT2, 0.0, 0.5, 0.5, 0.0), theta=0.0)

_ZERO_PROB = 1e-12
_BLOCK = 1 << 16


def reduced_pair(p: TripartiteParams) -> tuple[np.ndarray, np.ndarray]:
    """(rho_AB, rho_AC): the two reduced states of the canonical pure state.

    Built from their explicit matrix forms; agrees with partial-tracing the
    8-dimensional projector.
    """
    e0, e1, e2, e3, e4 = p.eta
    ph = np.exp(1j * p.theta)

    rho_ab = np.zeros((4, 4), dtype=complex)
    rho_ab[0, 0] = e0 * e0
    rho_ab[0, 2] = np.conj(ph) * e0 * e1
    rho_ab[2, 0] = ph * e0 * e1
    rho_ab[0, 3] = rho_ab[3, 0] = e0 * e3
    rho_ab[2, 2] = e1 * e1 + e2 * e2
    rho_ab[2, 3] = ph * e1 * e3 + e2 * e4
    rho_ab[3, 2] = np.conj(rho_ab[2, 3])
    rho_ab[3, 3] = e3 * e3 + e4 * e4

    rho_ac = np.zeros((4, 4), dtype=complex)
    rho_ac[0, 0] = e0 * e0
    rho_ac[0, 2] = np.conj(ph) * e0 * e1
    rho_ac[2, 0] = ph * e0 * e1
    rho_ac[0, 3] = rho_ac[3, 0] = e0 * e2
    rho_ac[2, 2] = e1 * e1 + e3 * e3
    rho_ac[2, 3] = ph * e1 * e2 + e3 * e4
    rho_ac[3, 2] = np.conj(rho_ac[2, 3])
    rho_ac[3, 3] = e2 * e2 + e4 * e4
    return rho_ab, rho_ac


def conditional_probability(p: TripartiteParams, alice_axis: str,
                            outcome: int) -> float:
    """p(+-|x) = 1/2 +- eta0 eta1 cos(theta); p(+-|y) uses sin(theta)."""
    e0, e1 = p.eta[0], p.eta[1]
    trig = math.cos(p.theta) if alice_axis == "x" else math.sin(p.theta)
    return 0.5 + outcome * e0 * e1 * trig


def tripartite_conditional_imaginarity(p: TripartiteParams, pair: str,
                                       alice_axis: str, outcome: int) -> float:
    """Closed-form conditional imaginarity for one branch.

    ``pair`` selects Bob ("AB") or Charlie ("AC"); ``alice_axis`` is Alice's
    measurement direction ("x" or "y") and the imaginarity is evaluated in the
    complementary basis (y for x, x for y).  ``outcome`` is +1 or -1.
    Zero-probability branches contribute 0 via the unnormalized route, so 0
    is returned when the denominator vanishes.
    """
    if pair not in ("AB", "AC"):
        raise ValueError(f"pair must be 'AB' or 'AC', got {pair!r}")
    if alice_axis not in ("x", "y"):
        raise ValueError(f"alice_axis must be 'x' or 'y', got {alice_axis!r}")
    if outcome not in (+1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome!r}")
    e0, e1, e2, e3, e4 = p.eta
    own, other = (e3, e2) if pair == "AB" else (e2, e3)
    if alice_axis == "x":
        numer = abs(other * e4 + own * (e1 * math.cos(p.theta) + outcome * e0))
    else:
        numer = abs(own * (e1 * math.sin(p.theta) + outcome * e0))
    denom = 2.0 * conditional_probability(p, alice_axis, outcome)
    if denom <= _ZERO_PROB:
        return 0.0
    return 2.0 * numer / denom


class MonogamySum(NamedTuple):
    i2_ab: float
    i2_ac: float
    total: float


def monogamy_sum(p: TripartiteParams) -> MonogamySum:
    """I2 for both cuts, assembled from the closed-form branch terms.

    Each probability-weighted term p(a|A) * I_R(rho_a) collapses to the
    absolute numerator of the conditional imaginarity, so no branch ever
    divides by a small probability.
    """
    e0, e1, e2, e3, e4 = p.eta
    c, s = math.cos(p.theta), math.sin(p.theta)
    i2 = []
    for own, other in ((e3, e2), (e2, e3)):  # AB then AC
        val = 0.0
        for sign in (+1.0, -1.0):
            val += abs(own * (e1 * s + sign * e0))            # Alice along y
            val += abs(other * e4 + own * (e1 * c + sign * e0))  # Alice along x
        i2.append(val)
    return MonogamySum(i2_ab=i2[0], i2_ac=i2[1], total=i2[0] + i2[1])


def monogamy_sum_batch(etas: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Vectorized I2(AB) + I2(AC) for arrays of parameters.

    ``etas`` has shape (n, 5) with unit rows, ``thetas`` shape (n,).
    """
    e0, e1, e2, e3, e4 = (etas[:, i] for i in range(5))
    c, s = np.cos(thetas), np.sin(thetas)
    total = np.zeros(len(thetas))
    for own, other in ((e3, e2), (e2, e3)):
        for sign in (1.0, -1.0):
            total += np.abs(own * (e1 * s + sign * e0))
            total += np.abs(other * e4 + own * (e1 * c + sign * e0))
    return total


class ScanResult(NamedTuple):
    max_sum: float
    argmax: TripartiteParams
    samples: int


def _sample_block(seed_seq: np.random.SeedSequence, size: int):
    """eta from normalized |Gaussian| on the positive orthant of the 4-sphere,
    theta uniform on [0, pi]."""
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    etas = np.abs(rng.standard_normal((size, 5)))
    etas /= np.linalg.norm(etas, axis=1)[:, None]
    thetas = rng.uniform(0.0, np.pi, size)
    return etas, thetas


def _scan_block(args):
    seed_seq, size = args
    etas, thetas = _sample_block(seed_seq, size)
    totals = monogamy_sum_batch(etas, thetas)
    best = int(np.argmax(totals))
    return float(totals[best]), etas[best], float(thetas[best])


def monogamy_scan(n_samples: int, seed: int,
                  include_maximizer: bool = False,
                  workers: int | None = None) -> ScanResult:
    """Monte-Carlo maximum of I2(AB) + I2(AC) over random parameters.

    Samples are drawn in blocks with per-block seeds spawned from ``seed``,
    and the reduction runs in block order, so the result is identical for any
    worker count.  ``workers`` defaults to the IMSTEER_THREADS environment
    variable (else 1).  With ``include_maximizer`` the analytic maximizer is
    appended as a final deterministic sample.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if workers is None:
        workers = max(1, int(os.environ.get("IMSTEER_THREADS", "1")))
    sizes = [_BLOCK] * (n_samples // _BLOCK)
    if n_samples % _BLOCK:
        sizes.append(n_samples % _BLOCK)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(seeds, sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_block, jobs))
    else:
        results = [_scan_block(job) for job in jobs]

    best_val = -math.inf
    best_eta = None
    best_theta = 0.0
    for val, eta, theta in results:  # block order: deterministic reduction
        if val > best_val:
            best_val, best_eta, best_theta = val, eta, theta
    if include_maximizer:
        exact = monogamy_sum(MAXIMIZER).total
        if exact > best_val:
            best_val = exact
            best_eta = np.array(MAXIMIZER.eta)
            best_theta = MAXIMIZER.theta
    # renormalize exactly so the params record validates
    eta = np.asarray(best_eta, dtype=float)
    eta /= np.linalg.norm(eta)
    argmax = TripartiteParams(eta=tuple(eta), theta=best_theta)
    return ScanResult(max_sum=best_val, argmax=argmax,
                      samples=n_samples + (1 if include_maximizer else 0))
