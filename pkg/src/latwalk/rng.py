"""Counter-based random number streams for reproducible walker ensembles.

Every walker owns an independent stream addressed by ``(master_seed,
walker_id)``.  The raw 64-bit draw for step ``t`` (steps are 1-indexed) is

    draw(t) = mix64(walker_key + t * GOLDEN)

where ``walker_key = mix64(master_seed ^ mix64(walker_id * GOLDEN))`` and
``mix64`` is the SplitMix64 finalizer (Steele/Lea/Flood; a bijection on
64-bit words).  Because the draw is a pure function of ``(key, t)`` the
same stream can be produced scalar-by-scalar, as a numpy vector, or inside
a compiled kernel, and any step is randomly accessible.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer (bijective)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def walker_key(master_seed: int, walker_id: int) -> int:
    """Derive the stream key of one walker from the master seed."""
    return mix64((master_seed ^ mix64((walker_id * GOLDEN) & MASK64)) & MASK64)


def raw_draw(key: int, t: int) -> int:
    """64-bit draw for step t (t >= 1) of the stream with the given key."""
    return mix64((key + t * GOLDEN) & MASK64)


def raw_draws(key: int, t0: int, count: int) -> np.ndarray:
    """Vector of draws for steps t0, t0+1, ..., t0+count-1 (uint64)."""
    t = np.arange(t0, t0 + count, dtype=np.uint64)
    z = np.uint64(key) + t * np.uint64(GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def step_index(u, n_outcomes: int):
    """Map uniform 64-bit draws to indices in [0, n_outcomes).

    Multiply-high reduction (Lemire); the bias is n_outcomes / 2**64 and is
    irrelevant at the supported path lengths (n <= 2**40).  Works on scalars
    and uint64 arrays.
    """
    if isinstance(u, np.ndarray):
        m = np.uint64(n_outcomes)
        lo = (u & np.uint64(0xFFFFFFFF)) * m
        hi = (u >> np.uint64(32)) * m
        return ((hi + (lo >> np.uint64(32))) >> np.uint64(32)).astype(np.int64)
    return ((u & MASK64) * n_outcomes) >> 64


def uniform01(u):
    """Map 64-bit draws to floats in [0, 1) with 53-bit resolution."""
    if isinstance(u, np.ndarray):
        return (u >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)
    return (u >> 11) * (2.0 ** -53)
