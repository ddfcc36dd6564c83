"""Compiled kernels against the uncompiled reference paths, shared seeds."""

import numpy as np

from latwalk import kernels, rng
from latwalk.ledger import LocalTimeLedger
from latwalk.projections import OneDProjection
from latwalk.walk import WalkConfig, decoded_steps, path_positions


def test_mix_matches_python():
    for v in (0, 1, 12345, 2 ** 63 + 17):
        assert int(kernels._mix(np.uint64(v))) == rng.mix64(v)


def test_origin_visits_match_reference():
    for d in (1, 2, 3):
        ids = np.arange(5, dtype=np.int64)
        fast = kernels.k_origin_visits(np.uint64(404), ids, np.int64(5000),
                                       np.int64(d))
        for w in ids:
            pos = path_positions(WalkConfig(404, int(w), d, 5000))
            slow = int(np.sum(np.all(pos[1:] == 0, axis=1)))
            assert slow == fast[w], (d, w)


def test_visits_1d_matches_projection():
    inc = OneDProjection((1, -2, 1)).increments()
    ids = np.arange(4, dtype=np.int64)
    fast = kernels.k_visits_1d(np.uint64(11), ids, np.int64(4000), inc)
    for w in ids:
        cfg = WalkConfig(11, int(w), 3, 4000)
        axis, sign = decoded_steps(cfg)
        z = np.cumsum(inc[2 * axis + (sign < 0)])
        assert int(np.sum(z == 0)) == fast[w]


def test_linear_max_matches_ledger_with_ball():
    from latwalk.subsets import Ball, Hyperplane, Intersection
    ids = np.arange(4, dtype=np.int64)
    spec = Hyperplane((1, -1))
    inc = OneDProjection((1, -1)).increments()
    mx, vis = kernels.k_linear_max(np.uint64(88), ids, np.int64(4000),
                                   np.int64(2), inc, False,
                                   np.zeros_like(inc), np.int64(49))
    target = Intersection((Ball(7), spec))
    for w in ids:
        led = LocalTimeLedger(2, target)
        led.record_path(path_positions(WalkConfig(88, int(w), 2, 4000)))
        assert led.max_local_time()[1] == mx[w]
        assert led.total_recorded == vis[w]


def test_ball_kernels_match_ledger():
    from latwalk.subsets import Ball
    ids = np.arange(4, dtype=np.int64)
    mx2 = kernels.k_ball_max_d2(np.uint64(3), ids, np.int64(3000),
                                np.int64(25), np.int64(5))
    mx3 = kernels.k_ball_max_dict(np.uint64(3), ids, np.int64(3000),
                                  np.int64(3), np.int64(25))
    for w in ids:
        led2 = LocalTimeLedger(2, Ball(5))
        led2.record_path(path_positions(WalkConfig(3, int(w), 2, 3000)))
        assert led2.max_local_time()[1] == mx2[w]
        led3 = LocalTimeLedger(3, Ball(5))
        led3.record_path(path_positions(WalkConfig(3, int(w), 3, 3000)))
        assert led3.max_local_time()[1] == mx3[w]


def test_lil_kernel_matches_numpy():
    ids = np.arange(3, dtype=np.int64)
    fast = kernels.k_lil_max(np.uint64(9), ids, np.int64(20_000), np.int64(2),
                             np.int64(100))
    for w in ids:
        pos = path_positions(WalkConfig(9, int(w), 2, 20_000))
        t = np.arange(100, 20_001)
        s2 = np.einsum("ij,ij->i", pos[100:], pos[100:])
        ratio = np.sqrt(2 * s2 / (2 * t * np.log(np.log(t))))
        assert abs(float(ratio.max()) - fast[w]) < 1e-12


def test_embedded_cauchy_matches_python():
    fast_u, fast_tr, fast_steps = kernels.k_embedded_cauchy(
        np.uint64(21), np.int64(0), np.int64(60), np.int64(10 ** 5))
    for i in range(60):
        key = rng.walker_key(21, i)
        v = z = 0
        t = 1
        while t <= 10 ** 5:
            c = rng.raw_draw(key, t) >> 62
            b0, b1 = c & 1, c >> 1
            v += 1 - 2 * b0
            z += 1 - 2 * (b0 ^ b1)
            if z == 0:
                break
            t += 1
        if t > 10 ** 5:
            assert fast_tr[i] == 1
        else:
            assert fast_tr[i] == 0
            assert fast_u[i] == v
            assert fast_steps[i] == t


def test_return_at_least_matches_reference():
    ids = np.arange(500, dtype=np.int64)
    a, k = 4, 30
    fast = kernels.k_return_at_least(np.uint64(6), ids, np.int64(a), np.int64(k))
    for w in range(0, 500, 37):
        pos = path_positions(WalkConfig(6, w, 2, a + k - 1))
        returned = np.any(np.all(pos[a + 1: a + k] == 0, axis=1))
        assert fast[w] == (0 if returned else 1)


def test_alpha_chain_matches_reference():
    ids = np.arange(100, dtype=np.int64)
    a, u_cap, k_max = 3, 40, 5
    inc = np.array([1, -1], dtype=np.int64)
    fast = kernels.k_alpha_chain(np.uint64(14), ids, np.int64(a),
                                 np.int64(u_cap), np.int64(k_max), False, inc)
    for w in range(0, 100, 11):
        key = rng.walker_key(14, int(w))
        x = y = 0
        t = 1
        total = done = 0
        while done < k_max and total < u_cap:
            for _ in range(a):
                c = rng.raw_draw(key, t) >> 62
                t += 1
                sign = 1 - 2 * (c & 1)
                if c >> 1:
                    y += sign
                else:
                    x += sign
            alpha = 0
            while total + alpha < u_cap:
                c = rng.raw_draw(key, t) >> 62
                t += 1
                alpha += 1
                sign = 1 - 2 * (c & 1)
                if c >> 1:
                    y += sign
                else:
                    x += sign
                if x == 0 and y == 0:
                    break
            total += alpha
            if total >= u_cap:
                break
            done += 1
        assert fast[w] == done


def test_excursion_kernel_deterministic():
    from latwalk import excursions
    a = excursions.sample_excursion_counts(500, 5, ring=16, solve_radius=64)
    b = excursions.sample_excursion_counts(500, 5, ring=16, solve_radius=64)
    assert np.array_equal(a[0], b[0])
    assert np.array_equal(a[1], b[1])
