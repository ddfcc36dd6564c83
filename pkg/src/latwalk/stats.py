"""Goodness-of-fit statistics with an explicit inconclusive verdict."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special, stats as sps


class InconclusiveError(ValueError):
    """Raised when the data cannot support the requested test."""


@dataclass(frozen=True)
class KSResult:
    distance: float
    p_value: float
    n: int


def ks_test(samples, cdf) -> KSResult:
    """One-sample Kolmogorov-Smirnov against a callable CDF.

    Asymptotic p-value from the Kolmogorov distribution; at least 20
    samples are required, otherwise the verdict would be noise.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n < 20:
        raise InconclusiveError(f"KS needs >= 20 samples, got {n}")
    F = np.asarray(cdf(x), dtype=float)
    up = np.arange(1, n + 1) / n
    lo = np.arange(n) / n
    d = float(max(np.max(up - F), np.max(F - lo)))
    p = float(special.kolmogorov(d * np.sqrt(n)))
    return KSResult(d, p, n)


def lattice_ks_distance(samples, cdf, scale: float) -> float:
    """Integer-threshold KS distance for lattice-valued samples.

    Compares P(X < m) with cdf(m / scale) over integer thresholds m >= 1.
    This is the finite-n form of limit laws stated as
    P(X < x * scale) -> F(x): an integer-valued X has atoms that make the
    plain KS distance stay bounded away from 0 at any desk-scale n, while
    the thresholded comparison converges.
    """
    x = np.asarray(samples)
    if x.size < 20:
        raise InconclusiveError(f"need >= 20 samples, got {x.size}")
    m_hi = int(x.max()) + 2
    ms = np.arange(1, m_hi + 1)
    emp = np.searchsorted(np.sort(x), ms, side="left") / x.size
    return float(np.max(np.abs(emp - cdf(ms / scale))))


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    p_value: float
    dof: int
    bins: int


def chi_square_test(counts, pmf, min_expected: float = 5.0) -> ChiSquareResult:
    """Pearson chi-square of observed counts against a pmf, tail-pooled.

    Bins are pooled from the right until every retained bin has expected
    count >= min_expected; residual pmf mass joins the last bin.  All mass
    in one bin is inconclusive (no degrees of freedom).
    """
    obs = np.asarray(counts, dtype=float)
    p = np.asarray(pmf, dtype=float)
    if len(p) < len(obs):
        raise ValueError("pmf shorter than observed support")
    n = obs.sum()
    exp_full = p * n
    exp_full[len(obs) - 1] += max(0.0, (1.0 - p.sum())) * n
    exp_full = exp_full[: len(obs)]
    k = len(obs)
    while k > 1 and exp_full[k - 1 :].sum() < min_expected:
        k -= 1
    obs_p = np.concatenate([obs[: k - 1], [obs[k - 1 :].sum()]]) if k < len(obs) \
        else obs.copy()
    exp_p = np.concatenate([exp_full[: k - 1], [exp_full[k - 1 :].sum()]]) if k < len(obs) \
        else exp_full.copy()
    keep = exp_p >= min_expected
    if keep.sum() < 2:
        raise InconclusiveError("fewer than 2 bins meet the expected-count floor")
    obs_p, exp_p = obs_p[keep], exp_p[keep]
    exp_p *= obs_p.sum() / exp_p.sum()
    stat = float(np.sum((obs_p - exp_p) ** 2 / exp_p))
    dof = obs_p.size - 1
    return ChiSquareResult(stat, float(sps.chi2.sf(stat, dof)), dof, obs_p.size)


def total_variation(counts, pmf) -> float:
    """TV distance between an empirical histogram and a pmf on its support."""
    obs = np.asarray(counts, dtype=float)
    obs = obs / obs.sum()
    p = np.asarray(pmf, dtype=float)[: obs.size]
    extra = max(0.0, 1.0 - p.sum())
    return 0.5 * (float(np.abs(obs - p).sum()) + extra)


def counts_from_samples(samples, k_max: int | None = None) -> np.ndarray:
    x = np.asarray(samples, dtype=np.int64)
    if k_max is None:
        k_max = int(x.max())
    return np.bincount(np.clip(x, 0, k_max), minlength=k_max + 1)
