"""The Cauchy walk: diagonal local times of the planar walk, two ways.

Rotating the planar simple walk gives two independent 1-d simple walks
V = x + y and Z = x - y.  Observing V at the successive zeros of Z yields
a heavy-tailed walk R_k = V_{rho_k} with even steps distributed as

    P(U = 0) = 1 - 2/pi,   P(U = 2k) = (2/pi) / (4k^2 - 1),  k != 0,

in the domain of attraction of the Cauchy law.  The embedded sampler walks
(V, Z) until Z returns to zero; the direct sampler inverts the closed-form
CDF (the telescoping tail P(|U| > 2K) = (2/pi)/(2K+1) makes the inversion
exact, no truncation anywhere).  Local times of R are, pathwise, the
diagonal local times of the planar walk at the return clock:
eta(2l, n) = xi((l, l), rho_n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels, rng


@dataclass(frozen=True)
class CauchyStepLaw:
    """Closed-form law of one Cauchy-walk step (support: even integers)."""

    @property
    def p_zero(self) -> float:
        return 1.0 - 2.0 / np.pi

    def pmf(self, u: int) -> float:
        if u == 0:
            return self.p_zero
        if u % 2:
            return 0.0
        k = abs(u) // 2
        return (2.0 / np.pi) / (4.0 * k * k - 1.0)

    def pmf_array(self, k_max: int) -> np.ndarray:
        """pmf over steps 0, +/-2, ..., +/-2k_max ordered by value."""
        vals = self.support(k_max)
        return np.array([self.pmf(v) for v in vals])

    @staticmethod
    def support(k_max: int) -> np.ndarray:
        return np.arange(-2 * k_max, 2 * k_max + 1, 2)

    def tail_mass(self, k: int) -> float:
        """P(|U| > 2k); telescoping partial fractions give (2/pi)/(2k+1)."""
        if k < 0:
            return 1.0
        return (2.0 / np.pi) / (2.0 * k + 1.0)

    def sample(self, count: int, seed: int, walker_id: int = 0) -> np.ndarray:
        """Exact inverse-CDF draws (two uniforms per sample)."""
        key = rng.walker_key(seed, walker_id)
        raw = rng.raw_draws(key, 1, 2 * count)
        u = rng.uniform01(raw[0::2])
        v = rng.uniform01(raw[1::2])
        out = np.zeros(count, dtype=np.int64)
        nz = u >= self.p_zero
        sign = np.where(v[nz] < 0.5, -1, 1)
        w = np.where(v[nz] < 0.5, 1.0 - 2.0 * v[nz], 2.0 * v[nz] - 1.0)
        # P(|U| <= 2k | U != 0) = 1 - 1/(2k+1): invert for the magnitude;
        # the cap only guards the measure-zero w == 1 draw against overflow
        kf = np.ceil((1.0 / np.maximum(1.0 - w, 2.0 ** -64) - 1.0) / 2.0)
        k = np.minimum(kf, 2.0 ** 62).astype(np.int64)
        k = np.maximum(k, 1)
        out[nz] = sign * 2 * k
        return out


def sample_embedded(count: int, seed: int, cap: int = 10 ** 6, id_base: int = 0):
    """Embedded draws of U (independent excursions of Z; V displacement).

    Returns (steps U, truncated flags, per-sample joint steps).  Truncated
    samples (Z not back at zero within the cap) carry U = 0 and must be
    excluded from distribution tests; the flag array counts them.
    """
    return kernels.k_embedded_cauchy(np.uint64(seed), np.int64(id_base),
                                     np.int64(count), np.int64(cap))


@dataclass
class CoupledRun:
    """A planar walk and its Cauchy shadow, sharing one stream."""

    rho: np.ndarray          # return times of Z (rho_1, ..., rho_m)
    r_values: np.ndarray     # R_k = V at rho_k
    positions: np.ndarray    # planar path S_0..S_budget, shape (budget+1, 2)
    budget: int
    complete: bool           # m returns found within the budget


def coupled_run(seed: int, walker_id: int, n_returns: int,
                budget: int = 10 ** 7) -> CoupledRun:
    """Drive the planar walk until Z has returned n_returns times.

    Everything derives from the canonical d=2 stream, so planar local
    times and Cauchy local times can be cross-checked pathwise.
    """
    from .walk import WalkConfig, path_positions

    pos = path_positions(WalkConfig(seed, walker_id, 2, budget))
    v = pos[:, 0] + pos[:, 1]
    z = pos[:, 0] - pos[:, 1]
    zeros = np.nonzero(z[1:] == 0)[0] + 1
    complete = len(zeros) >= n_returns
    zeros = zeros[:n_returns]
    return CoupledRun(zeros, v[zeros], pos, budget, complete)


def eta_local_time(run: CoupledRun, site: int, n: int) -> int:
    """eta(site, n): visits of the Cauchy walk to an even site within n steps."""
    return int(np.sum(run.r_values[:n] == site))


def eta_max(run: CoupledRun, n: int) -> int:
    """eta(n) = max_y eta(y, n); 0 for an empty walk."""
    if n == 0 or len(run.r_values) == 0:
        return 0
    _, counts = np.unique(run.r_values[:n], return_counts=True)
    return int(counts.max())


def cauchy_local_time_ledger(n: int, seed: int, walker_id: int = 0):
    """Ledger of the Cauchy walk's local times after n direct steps.

    Sites are the (even) integers the walk visits; the ledger shares the
    common CSV dump.  Direct sampling makes large n cheap: reaching the
    same walk length through the embedding would cost ~n^2 joint steps.
    """
    from .ledger import LocalTimeLedger

    law = CauchyStepLaw()
    r = np.cumsum(law.sample(n, seed, walker_id))
    ledger = LocalTimeLedger(1)
    if n:
        sites, counts = np.unique(r, return_counts=True)
        for s, c in zip(sites, counts):
            ledger.counts[(int(s),)] = int(c)
        ledger.total_recorded = int(counts.sum())
    return ledger


def max_local_time_cauchy(n: int, seed: int, walker_id: int = 0,
                          via: str = "direct", budget: int = 10 ** 9):
    """eta(n): the maximal local time of the Cauchy walk within n steps.

    ``direct`` samples the step law exactly.  ``embedded`` drives the
    planar walk and returns (eta, complete); when the step budget runs out
    before n diagonal returns the result covers only the returns seen and
    is flagged partial -- the walk's return clock has infinite mean, so
    large n is only reachable directly.
    """
    if via == "direct":
        if n == 0:
            return 0, True
        ledger = cauchy_local_time_ledger(n, seed, walker_id)
        return ledger.max_local_time()[1], True
    if via == "embedded":
        run = coupled_run(seed, walker_id, n, budget=budget)
        return eta_max(run, n), run.complete
    raise ValueError(f"unknown route {via!r}")
