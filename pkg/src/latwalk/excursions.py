"""Excursion local times at a fixed site between returns to the origin.

The count of visits to x during one excursion has the geometric-type law

    P(Y = 0) = 1 - p(x),   P(Y = k) = (1 - p(x))^(k-1) p(x)^2,  k >= 1,

with p(x) the hit-before-return probability.  The Monte Carlo sampler here
does not rely on that law: it walks excursions exactly in the near field
and resolves far-field "x before 0" races with harmonic values from the
Dirichlet solver, which keeps the per-sample cost bounded (raw excursion
durations have a log-tail, so plain truncation would visibly bias the law).
"""

from __future__ import annotations

import numpy as np

from . import kernels, potential


class ExcursionDomainError(ValueError):
    pass


def excursion_pmf(p: float, k_max: int) -> np.ndarray:
    """pmf of Y on {0, 1, ..., k_max} (tail mass beyond k_max excluded)."""
    if not 0.0 < p <= 1.0:
        raise ExcursionDomainError(f"p must lie in (0, 1], got {p}")
    q = 1.0 - p
    pmf = np.empty(k_max + 1)
    pmf[0] = q
    pmf[1:] = q ** np.arange(k_max) * p * p
    return pmf


def excursion_tail(p: float, k: int) -> float:
    """P(Y >= k); closed form q^(k-1) * p for k >= 1."""
    if not 0.0 < p <= 1.0:
        raise ExcursionDomainError(f"p must lie in (0, 1], got {p}")
    if k <= 0:
        return 1.0
    return (1.0 - p) ** (k - 1) * p


def excursion_mean(p: float, k_cap: int = 10_000) -> float:
    """Numeric mean of Y (the law has mean exactly 1 for every p)."""
    pmf = excursion_pmf(p, k_cap)
    return float(np.dot(np.arange(k_cap + 1), pmf))


def excursion_mgf_at_zstar(p: float, tol: float = 1e-14) -> tuple[float, float]:
    """(E exp(z* Y), z*) at z* = log(2 / (1 + q)), summed numerically.

    Checks q e^{z*} = 2q/(1+q) < 1 before summing; the series value equals
    1 + p, which the caller is expected to assert rather than assume.
    """
    if not 0.0 < p <= 1.0:
        raise ExcursionDomainError(f"p must lie in (0, 1], got {p}")
    q = 1.0 - p
    zstar = np.log(2.0 / (1.0 + q))
    ratio = q * np.exp(zstar)
    if not ratio < 1.0:
        raise ExcursionDomainError(f"q e^z = {ratio} not < 1")
    total = q
    term = p * p * np.exp(zstar)
    k = 1
    while term > tol * max(total, 1.0):
        total += term
        term *= ratio
        k += 1
        if k > 10_000_000:
            raise RuntimeError("mgf series failed to converge")
    return float(total + term / (1.0 - ratio)), float(zstar)


def sample_excursion_counts(count: int, master_seed: int, target=(1, 0),
                            ring: int = 48, id_base: int = 0,
                            solve_radius: int = 256):
    """Monte Carlo draws of Y(target) over independent excursions.

    Returns (counts, teleports): per-sample visit counts and the number of
    far-field Bernoulli resolutions used (0 for excursions that stayed
    inside the ring).
    """
    tx, ty = int(target[0]), int(target[1])
    if (tx, ty) == (0, 0):
        raise ExcursionDomainError("target must differ from the origin")
    if max(abs(tx), abs(ty)) >= ring:
        raise ExcursionDomainError("target must lie inside the ring")
    h_grid = potential.far_field_table((tx, ty), ring, solve_radius=solve_radius)
    return kernels.k_excursion_counts(
        np.uint64(master_seed), np.int64(id_base), np.int64(count),
        np.int64(tx), np.int64(ty), np.int64(ring), h_grid)
