"""Compiled kernels for the heavy ensemble runs.

Every kernel reproduces exactly the streams of :mod:`latwalk.rng`: the raw
draw for step t of walker w is ``mix64(walker_key(master, w) + t*GOLDEN)``
and the step decode is the multiply-high reduction, so compiled, numpy and
pure-python paths generate identical walks from identical seeds.

Site keys inside kernels pack coordinates into 21-bit fields of one int64
(supported for d <= 3); a walker whose coordinate leaves +/-2^20 reports -1
and the caller must fall back to the uncompiled path.
"""

from __future__ import annotations

import os

os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")

import numpy as np
from numba import njit, prange, types
from numba.typed import Dict

U = np.uint64
GAMMA = U(0x9E3779B97F4A7C15)
_M1 = U(0xBF58476D1CE4E5B9)
_M2 = U(0x94D049BB133111EB)
PACK_BITS = 21
PACK_BIAS = 1 << 20
BLOCK = 4096


@njit(cache=True, inline="always")
def _mix(z):
    z = (z ^ (z >> U(30))) * _M1
    z = (z ^ (z >> U(27))) * _M2
    return z ^ (z >> U(31))


@njit(cache=True, inline="always")
def _key(master, walker_id):
    return _mix(U(master) ^ _mix(U(walker_id) * GAMMA))


@njit(cache=True, inline="always")
def _draw(key, t):
    return _mix(key + U(t) * GAMMA)


@njit(cache=True, inline="always")
def _mulhi(u, m):
    lo = (u & U(0xFFFFFFFF)) * m
    hi = (u >> U(32)) * m
    return (hi + (lo >> U(32))) >> U(32)


@njit(cache=True, inline="always")
def _uniform(u):
    return (u >> U(11)) * (2.0 ** -53)


@njit(cache=True, parallel=True)
def k_origin_visits(master, walker_ids, n, d):
    """xi(0, n) per walker, d <= 3."""
    out = np.zeros(walker_ids.shape[0], dtype=np.int64)
    two_d = U(2 * d)
    for w in prange(walker_ids.shape[0]):
        key = _key(master, walker_ids[w])
        x = np.int64(0)
        y = np.int64(0)
        z = np.int64(0)
        hits = np.int64(0)
        buf = np.empty(BLOCK, dtype=np.uint64)
        t = np.int64(1)
        while t <= n:
            m = min(BLOCK, n - t + 1)
            for i in range(m):
                buf[i] = _draw(key, t + i)
            for i in range(m):
                c = _mulhi(buf[i], two_d)
                sign = np.int64(1) - np.int64(2) * np.int64(c & U(1))
                ax = np.int64(c >> U(1))
                if d == 1:
                    x += sign
                    hits += np.int64(x == 0)
                elif d == 2:
                    x += sign * (1 - ax)
                    y += sign * ax
                    hits += np.int64((x | y) == 0)
                else:
                    x += sign * np.int64(ax == 0)
                    y += sign * np.int64(ax == 1)
                    z += sign * np.int64(ax == 2)
                    hits += np.int64((x | y | z) == 0)
            t += m
        out[w] = hits
    return out


@njit(cache=True, parallel=True)
def k_linear_max(master, walker_ids, n, d, inc_a, use_b, inc_b, r2):
    """Max and total of visit counts over sites where the linear forms vanish.

    inc_a/inc_b: per-outcome increments of the projected walks (length 2d).
    r2 >= 0 additionally requires ||site||^2 <= r2 (ball intersection).
    Returns (max_count, visits); max_count = -1 flags packing overflow.
    """
    nw = walker_ids.shape[0]
    mx = np.zeros(nw, dtype=np.int64)
    vis = np.zeros(nw, dtype=np.int64)
    two_d = U(2 * d)
    for w in prange(nw):
        key = _key(master, walker_ids[w])
        pos = np.zeros(d, dtype=np.int64)
        za = np.int64(0)
        zb = np.int64(0)
        counts = Dict.empty(types.int64, types.int64)
        best = np.int64(0)
        nv = np.int64(0)
        ok = True
        for t in range(1, n + 1):
            c = _mulhi(_draw(key, t), two_d)
            sign = np.int64(1) - np.int64(2) * np.int64(c & U(1))
            ax = np.int64(c >> U(1))
            idx = np.int64(c)
            pos[ax] += sign
            za += inc_a[idx]
            if use_b:
                zb += inc_b[idx]
            if za == 0 and (not use_b or zb == 0):
                if r2 >= 0:
                    s2 = np.int64(0)
                    for j in range(d):
                        s2 += pos[j] * pos[j]
                    if s2 > r2:
                        continue
                packed = np.int64(0)
                for j in range(d):
                    v = pos[j]
                    if v >= PACK_BIAS or v <= -PACK_BIAS:
                        ok = False
                        break
                    packed = (packed << PACK_BITS) | (v + PACK_BIAS)
                if not ok:
                    break
                nv += 1
                cnt = counts.get(packed, np.int64(0)) + 1
                counts[packed] = cnt
                if cnt > best:
                    best = cnt
        mx[w] = best if ok else np.int64(-1)
        vis[w] = nv
    return mx, vis


@njit(cache=True, parallel=True)
def k_ball_max_d2(master, walker_ids, n, r2, grid_r):
    """Max visit count over sites of the d=2 ball (dense grid ledger)."""
    nw = walker_ids.shape[0]
    out = np.zeros(nw, dtype=np.int64)
    width = 2 * grid_r + 1
    for w in prange(nw):
        key = _key(master, walker_ids[w])
        grid = np.zeros(width * width, dtype=np.int32)
        x = np.int64(0)
        y = np.int64(0)
        best = np.int64(0)
        for t in range(1, n + 1):
            c = _draw(key, t) >> U(62)
            sign = np.int64(1) - np.int64(2) * np.int64(c & U(1))
            ax = np.int64(c >> U(1))
            x += sign * (1 - ax)
            y += sign * ax
            if x * x + y * y <= r2:
                j = (x + grid_r) * width + (y + grid_r)
                grid[j] += 1
                if grid[j] > best:
                    best = np.int64(grid[j])
        out[w] = best
    return out


@njit(cache=True, parallel=True)
def k_ball_max_dict(master, walker_ids, n, d, r2):
    """Max visit count over ball sites, dict ledger (d <= 3)."""
    nw = walker_ids.shape[0]
    out = np.zeros(nw, dtype=np.int64)
    two_d = U(2 * d)
    for w in prange(nw):
        key = _key(master, walker_ids[w])
        pos = np.zeros(d, dtype=np.int64)
        counts = Dict.empty(types.int64, types.int64)
        best = np.int64(0)
        ok = True
        for t in range(1, n + 1):
            c = _mulhi(_draw(key, t), two_d)
            sign = np.int64(1) - np.int64(2) * np.int64(c & U(1))
            pos[np.int64(c >> U(1))] += sign
            s2 = np.int64(0)
            for j in range(d):
                s2 += pos[j] * pos[j]
            if s2 <= r2:
                packed = np.int64(0)
                for j in range(d):
                    v = pos[j]
                    if v >= PACK_BIAS or v <= -PACK_BIAS:
                        ok = False
                        break
                    packed = (packed << PACK_BITS) | (v + PACK_BIAS)
                if not ok:
                    break
                cnt = counts.get(packed, np.int64(0)) + 1
                counts[packed] = cnt
                if cnt > best:
                    best = cnt
        out[w] = best if ok else np.int64(-1)
    return out


@njit(cache=True, parallel=True)
def k_visits_1d(master, walker_ids, n, inc):
    """Local time at 0 of the 1-d projected walk (increments per outcome)."""
    nw = walker_ids.shape[0]
    out = np.zeros(nw, dtype=np.int64)
    two_d = U(inc.shape[0])
    for w in prange(nw):
        key = _key(master, walker_ids[w])
        z = np.int64(0)
        hits = np.int64(0)
        for t in range(1, n + 1):
            z += inc[np.int64(_mulhi(_draw(key, t), two_d))]
            hits += np.int64(z == 0)
        out[w] = hits
    return out


@njit(cache=True, parallel=True)
def k_lil_max(master, walker_ids, n, d, t_min):
    """Per walker max over t in [t_min, n] of sqrt(d)*||S_t|| / sqrt(2t lnln t).

    lnln(t) varies slowly, so each block uses its start value as a cheap
    upper-bound filter and only computes the exact ratio on candidates.
    """
    nw = walker_ids.shape[0]
    out = np.zeros(nw, dtype=np.float64)
    two_d = U(2 * d)
    for w in prange(nw):
        key = _key(master, walker_ids[w])
        pos = np.zeros(d, dtype=np.int64)
        best = 0.0
        t = np.int64(1)
        while t <= n:
            m = min(BLOCK, n - t + 1)
            ll0 = np.log(np.log(max(t, t_min))) if max(t, t_min) > 2 else 0.1
            for i in range(m):
                ti = t + i
                c = _mulhi(_draw(key, ti), two_d)
                sign = np.int64(1) - np.int64(2) * np.int64(c & U(1))
                pos[np.int64(c >> U(1))] += sign
                if ti >= t_min:
                    s2 = np.int64(0)
                    for j in range(d):
                        s2 += pos[j] * pos[j]
                    if d * np.float64(s2) > best * 2.0 * ti * ll0:
                        r = d * np.float64(s2) / (2.0 * ti * np.log(np.log(ti)))
                        if r > best:
                            best = r
            t += m
        out[w] = np.sqrt(best)
    return out


@njit(cache=True, parallel=True)
def k_excursion_counts(master, id_base, count, tx, ty, ring, h_grid):
    """Visits to (tx, ty) during one excursion of the planar walk from 0.

    Far-field trick: once the walk leaves the ring (sup-norm > ring), the
    race "(tx,ty) before 0" is resolved by a Bernoulli draw with the
    precomputed harmonic value h_grid[x+ring+1, y+ring+1]; on success the
    walk restarts at the target (strong Markov), else the excursion ends.
    Returns (counts, teleports) per sample.
    """
    ys = np.zeros(count, dtype=np.int64)
    tele = np.zeros(count, dtype=np.int64)
    off = ring + 1
    for i in prange(count):
        key = _key(master, id_base + i)
        x = np.int64(0)
        y = np.int64(0)
        yv = np.int64(0)
        tl = np.int64(0)
        t = np.int64(1)
        alive = True
        while alive:
            c = _draw(key, t) >> U(62)
            t += 1
            sign = np.int64(1) - np.int64(2) * np.int64(c & U(1))
            ax = np.int64(c >> U(1))
            x += sign * (1 - ax)
            y += sign * ax
            if x == tx and y == ty:
                yv += 1
            elif x == 0 and y == 0:
                alive = False
            elif max(abs(x), abs(y)) > ring:
                u = _uniform(_draw(key, t))
                t += 1
                if u < h_grid[x + off, y + off]:
                    x = tx
                    y = ty
                    yv += 1
                    tl += 1
                else:
                    alive = False
        ys[i] = yv
        tele[i] = tl
    return ys, tele


@njit(cache=True, parallel=True)
def k_embedded_cauchy(master, id_base, count, cap):
    """Embedded Cauchy steps U_i = V displacement over one Z excursion.

    V, Z are the rotated coordinates of the canonical planar walk.  Samples
    exceeding the step cap are flagged truncated.  Returns (U, truncated,
    steps_used).
    """
    us = np.zeros(count, dtype=np.int64)
    trunc = np.zeros(count, dtype=np.uint8)
    steps = np.zeros(count, dtype=np.int64)
    for i in prange(count):
        key = _key(master, id_base + i)
        v = np.int64(0)
        z = np.int64(0)
        t = np.int64(1)
        while t <= cap:
            c = _draw(key, t) >> U(62)
            b0 = np.int64(c & U(1))
            b1 = np.int64(c >> U(1))
            v += 1 - 2 * b0
            z += 1 - 2 * (b0 ^ b1)
            if z == 0:
                break
            t += 1
        if t > cap:
            trunc[i] = 1
            steps[i] = cap
        else:
            us[i] = v
            steps[i] = t
    return us, trunc, steps


@njit(cache=True, parallel=True)
def k_return_at_least(master, walker_ids, warmup, k):
    """Indicator of T_warmup >= k: no visit to 0 in steps warmup+1..warmup+k-1."""
    nw = walker_ids.shape[0]
    out = np.zeros(nw, dtype=np.uint8)
    for w in prange(nw):
        key = _key(master, walker_ids[w])
        x = np.int64(0)
        y = np.int64(0)
        hit = False
        for t in range(1, warmup + k):
            c = _draw(key, t) >> U(62)
            sign = np.int64(1) - np.int64(2) * np.int64(c & U(1))
            ax = np.int64(c >> U(1))
            x += sign * (1 - ax)
            y += sign * ax
            if t > warmup and (x | y) == 0:
                hit = True
                break
        out[w] = np.uint8(0 if hit else 1)
    return out


@njit(cache=True, parallel=True)
def k_alpha_chain(master, walker_ids, a, u_cap, k_max, d1, inc):
    """Completed alpha_i(a) count before their running sum reaches u_cap.

    The chain alternates a fixed stretch of a steps with a wait for the next
    return to 0 (duration alpha_i); 2-d canonical walk when d1 is false,
    1-d projected walk with the given increments when true.  A trial stops
    once the alpha-sum reaches u_cap or k_max excursions complete, so the
    per-trial step cost is bounded by k_max*a + u_cap.
    """
    nw = walker_ids.shape[0]
    out = np.zeros(nw, dtype=np.int64)
    two_d = U(inc.shape[0])
    for w in prange(nw):
        key = _key(master, walker_ids[w])
        x = np.int64(0)
        y = np.int64(0)
        t = np.int64(1)
        total = np.int64(0)
        done = np.int64(0)
        while done < k_max and total < u_cap:
            for _ in range(a):
                u = _draw(key, t)
                t += 1
                if d1:
                    x += inc[np.int64(_mulhi(u, two_d))]
                else:
                    c = u >> U(62)
                    sign = np.int64(1) - np.int64(2) * np.int64(c & U(1))
                    ax = np.int64(c >> U(1))
                    x += sign * (1 - ax)
                    y += sign * ax
            alpha = np.int64(0)
            while total + alpha < u_cap:
                u = _draw(key, t)
                t += 1
                alpha += 1
                if d1:
                    x += inc[np.int64(_mulhi(u, two_d))]
                    if x == 0:
                        break
                else:
                    c = u >> U(62)
                    sign = np.int64(1) - np.int64(2) * np.int64(c & U(1))
                    ax = np.int64(c >> U(1))
                    x += sign * (1 - ax)
                    y += sign * ax
                    if (x | y) == 0:
                        break
            # an alpha that pushes the sum to the cap is not a completed
            # excursion below u, even if the return was observed
            total += alpha
            if total >= u_cap:
                break
            done += 1
        out[w] = done
    return out
