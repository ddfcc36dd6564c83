"""Simple symmetric random walk on Z^d driven by counter-based streams."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rng

MAX_STEPS = 1 << 40  # |coordinate| <= n keeps int64 arithmetic overflow-free


class WalkConfigError(ValueError):
    pass


@dataclass(frozen=True)
class StepLaw:
    """Uniform law over the 2d signed unit steps of Z^d."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise WalkConfigError(f"dimension must be >= 1, got {self.d}")

    @property
    def n_outcomes(self) -> int:
        return 2 * self.d

    def decode(self, idx: int) -> tuple[int, int]:
        """Outcome index -> (axis, sign); each index has probability 1/(2d)."""
        return idx >> 1, 1 - 2 * (idx & 1)

    def sample(self, u: int) -> tuple[int, int]:
        """Decode one raw 64-bit draw into a signed unit step."""
        return self.decode(rng.step_index(u, self.n_outcomes))


@dataclass(frozen=True)
class WalkConfig:
    """One walker: (seed, walker_id) fixes the whole path."""

    seed: int
    walker_id: int
    d: int
    n: int

    def __post_init__(self):
        if self.d < 1:
            raise WalkConfigError(f"dimension must be >= 1, got {self.d}")
        if not 0 <= self.n <= MAX_STEPS:
            raise WalkConfigError(
                f"step count {self.n} outside supported range [0, 2**40]")

    @property
    def key(self) -> int:
        return rng.walker_key(self.seed, self.walker_id)

    @property
    def law(self) -> StepLaw:
        return StepLaw(self.d)


def run_path(cfg: WalkConfig, observer=None) -> np.ndarray:
    """Walk n steps from the origin; return the final site.

    ``observer(t, site)`` is invoked exactly once per step with t = 1..n and
    the current site as a read-only length-d int64 view (copy it to keep it).
    """
    law = cfg.law
    key = cfg.key
    site = np.zeros(cfg.d, dtype=np.int64)
    m = law.n_outcomes
    for t in range(1, cfg.n + 1):
        axis, sign = law.decode(rng.step_index(rng.raw_draw(key, t), m))
        site[axis] += sign
        if observer is not None:
            observer(t, site)
    return site


def decoded_steps(cfg: WalkConfig, t0: int = 1, count: int | None = None):
    """Vectorized (axis, sign) arrays for steps t0 .. t0+count-1."""
    if count is None:
        count = cfg.n - t0 + 1
    idx = rng.step_index(rng.raw_draws(cfg.key, t0, count), 2 * cfg.d)
    return (idx >> 1).astype(np.int64), (1 - 2 * (idx & 1)).astype(np.int64)


def path_positions(cfg: WalkConfig) -> np.ndarray:
    """All positions S_0..S_n as an (n+1, d) int64 array (vectorized)."""
    axis, sign = decoded_steps(cfg)
    pos = np.zeros((cfg.n + 1, cfg.d), dtype=np.int64)
    for a in range(cfg.d):
        inc = np.where(axis == a, sign, 0)
        pos[1:, a] = np.cumsum(inc)
    return pos
