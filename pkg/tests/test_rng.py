import numpy as np

from latwalk import rng


def test_mix64_is_deterministic_and_spreads():
    vals = {rng.mix64(i) for i in range(1000)}
    assert len(vals) == 1000
    assert rng.mix64(12345) == rng.mix64(12345)


def test_scalar_matches_vector_stream():
    key = rng.walker_key(987654321, 17)
    vec = rng.raw_draws(key, 1, 64)
    for t in range(1, 65):
        assert int(vec[t - 1]) == rng.raw_draw(key, t)


def test_walker_keys_differ():
    keys = {rng.walker_key(1, w) for w in range(10_000)}
    assert len(keys) == 10_000


def test_uniform01_range():
    u = rng.uniform01(rng.raw_draws(rng.walker_key(3, 0), 1, 10_000))
    assert np.all((0.0 <= u) & (u < 1.0))


def test_step_index_bounds_scalar_and_vector():
    key = rng.walker_key(5, 5)
    draws = rng.raw_draws(key, 1, 1000)
    for m in (2, 4, 6, 12):
        idx = rng.step_index(draws, m)
        assert idx.min() >= 0 and idx.max() < m
        for t in (1, 7, 999):
            assert rng.step_index(rng.raw_draw(key, t), m) == int(idx[t - 1])


def test_step_frequencies_d1():
    # d=1: outcomes {+1, -1}, each probability 1/2
    idx = rng.step_index(rng.raw_draws(rng.walker_key(11, 0), 1, 10 ** 6), 2)
    ones = int(np.sum(idx == 0))
    sigma = np.sqrt(1e6 * 0.25)
    assert abs(ones - 500_000) < 3 * sigma


def test_step_frequencies_d2():
    # 10^6 draws: each of the 4 outcomes within 3 sigma of 250000
    idx = rng.step_index(rng.raw_draws(rng.walker_key(12, 0), 1, 10 ** 6), 4)
    counts = np.bincount(idx, minlength=4)
    sigma = np.sqrt(1e6 * 0.25 * 0.75)
    assert np.all(np.abs(counts - 250_000) < 3 * sigma)


def test_step_frequencies_d3():
    # each of the 6 outcomes has probability 1/6
    idx = rng.step_index(rng.raw_draws(rng.walker_key(13, 0), 1, 10 ** 6), 6)
    counts = np.bincount(idx, minlength=6)
    expect = 1e6 / 6
    sigma = np.sqrt(1e6 * (1 / 6) * (5 / 6))
    assert np.all(np.abs(counts - expect) < 3 * sigma)
