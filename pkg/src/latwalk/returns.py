"""Return probabilities, first-return laws, Green values, escape constants.

Three independent routes to P_n(0,0) are kept alive on purpose:

* closed-form combinatorics (products of central binomial ratios, and the
  squared-trinomial sum in d=3) -- the fast table;
* exact convolution of the step distribution on a truncated lattice, in
  rational arithmetic for small n;
* characteristic-function quadrature: the periodic trapezoid rule applied
  to mean(phi^n), phi(theta) = (1/d) sum cos theta_i, which is exact once
  the per-axis grid exceeds n.

The first-return law f solves the renewal identity
P_n = sum_{k=1..n} f_k P_{n-k}; everything downstream (truncated escape
probabilities gamma_d(n), the law of xi(0,n), finite-n limit-law
comparisons) is derived from P and f.  The never-return probability gamma_d is
1/G_d with the Green value G_d = integral_0^inf exp(-t) I_0(t/d)^d dt
evaluated by quadrature plus an asymptotic tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit
from scipy import integrate, special


class RecurrenceError(ValueError):
    """gamma_d / lambda_d requested for a recurrent walk (d <= 2)."""


class QuadratureError(RuntimeError):
    pass


_MAX_EXACT_N = 64


def _binom_ratio_table(m_max: int) -> np.ndarray:
    """r_m = C(2m, m) / 4^m via the stable product recursion."""
    r = np.empty(m_max + 1)
    r[0] = 1.0
    for m in range(1, m_max + 1):
        r[m] = r[m - 1] * (2 * m - 1) / (2 * m)
    return r


@njit(cache=True)
def _trinomial_square_sums(m_max):
    """q_m = sum over j+k<=m of (m! / (j! k! (m-j-k)!) / 3^m)^2."""
    T = np.zeros((m_max + 1, m_max + 1))
    T[0, 0] = 1.0
    q = np.empty(m_max + 1)
    q[0] = 1.0
    for m in range(1, m_max + 1):
        for j in range(m, -1, -1):
            for k in range(m - j, -1, -1):
                v = T[j, k]
                if j > 0:
                    v += T[j - 1, k]
                if k > 0:
                    v += T[j, k - 1]
                T[j, k] = v / 3.0
        s = 0.0
        for j in range(m + 1):
            for k in range(m - j + 1):
                s += T[j, k] * T[j, k]
        q[m] = s
    return q


def return_probability_table(d: int, n_max: int) -> np.ndarray:
    """P_k(0,0) for k = 0..n_max (closed-form route; d <= 3)."""
    m_max = n_max // 2
    r = _binom_ratio_table(m_max)
    if d == 1:
        even = r
    elif d == 2:
        even = r * r
    elif d == 3:
        even = r * _trinomial_square_sums(m_max)
    else:
        raise NotImplementedError(f"return tables support d <= 3, got d={d}")
    P = np.zeros(n_max + 1)
    P[0::2] = even
    return P


def return_probability(d: int, n: int) -> float:
    if n < 0:
        raise ValueError("n must be >= 0")
    return float(return_probability_table(d, n)[n])


def exact_return_probability(d: int, n: int) -> Fraction:
    """P_n(0,0) as an exact rational (combinatorial closed forms, d <= 3)."""
    if n % 2:
        return Fraction(0)
    m = n // 2
    r = Fraction(1)
    for i in range(1, m + 1):
        r = r * (2 * i - 1) / (2 * i)
    if d == 1:
        return r
    if d == 2:
        return r * r
    if d == 3:
        fact = [Fraction(1)]
        for i in range(1, m + 1):
            fact.append(fact[-1] * i)
        q = Fraction(0)
        for j in range(m + 1):
            for k in range(m - j + 1):
                t = fact[m] / (fact[j] * fact[k] * fact[m - j - k])
                q += t * t
        return r * q / Fraction(3) ** (2 * m)
    raise NotImplementedError(f"exact return probability supports d <= 3, got d={d}")


def lattice_step_pmf(d: int, exact: bool):
    """Step pmf of the simple walk as a dense lattice array plus offset."""
    one = Fraction(1, 2 * d) if exact else 1.0 / (2 * d)
    shape = (3,) * d
    pmf = np.zeros(shape, dtype=object if exact else float)
    for axis in range(d):
        for s in (0, 2):
            idx = [1] * d
            idx[axis] = s
            pmf[tuple(idx)] = one
    return pmf


def convolution_return_prob(d: int, n: int, exact: bool = True):
    """P_n(0,0) by n-fold convolution on the truncated lattice.

    Exact rational arithmetic when ``exact``; guarded to n <= 64 because the
    grid has (2n+1)^d cells.
    """
    if n > _MAX_EXACT_N:
        raise ValueError(f"convolution route limited to n <= {_MAX_EXACT_N}")
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1, 2 * d) if exact else 1.0 / (2 * d)
    shape = (2 * n + 1,) * d if n else (1,) * d
    cur = np.full(shape, zero, dtype=object if exact else float)
    center = (n,) * d if n else (0,) * d
    cur[center] = Fraction(1) if exact else 1.0
    for _ in range(n):
        nxt = np.full(shape, zero, dtype=object if exact else float)
        for axis in range(d):
            for shift in (1, -1):
                nxt += np.roll(cur, shift, axis=axis) * one
        cur = nxt
    return cur[center]


def quadrature_return_prob(d: int, n: int, points: int | None = None) -> float:
    """P_n(0,0) as the trapezoid-rule average of phi(theta)^n.

    phi^n is a trigonometric polynomial of per-axis degree n, so the
    periodic trapezoid rule with N >= n+1 points per axis is exact up to
    rounding; fewer points raise QuadratureError.
    """
    N = points if points is not None else max(n + 1, 64)
    if N <= n:
        raise QuadratureError(f"need more than n={n} points per axis, got {N}")
    theta = 2.0 * np.pi * np.arange(N) / N
    c = np.cos(theta)
    if d == 1:
        return float(np.mean(c ** n))
    if d == 2:
        phi = (c[:, None] + c[None, :]) / 2.0
        return float(np.mean(phi ** n))
    if d == 3:
        acc = 0.0
        for i in range(N):
            phi = (c[i] + c[:, None] + c[None, :]) / 3.0
            acc += np.sum(phi ** n)
        return float(acc / N ** 3)
    raise NotImplementedError(f"quadrature supports d <= 3, got d={d}")


def first_return_law(d: int, n_max: int, exact: bool = False):
    """First-return probabilities f_1..f_n_max (index 0 unused, = 0).

    Renewal inversion of P: f_n = P_n - sum_{k<n} f_k P_{n-k}.  With
    ``exact`` the P's come from the rational convolution route (n <= 64).
    """
    if exact:
        P = [exact_return_probability(d, k) for k in range(n_max + 1)]
        f = [Fraction(0)] * (n_max + 1)
        for n in range(1, n_max + 1):
            f[n] = P[n] - sum(f[k] * P[n - k] for k in range(1, n))
        return f
    P = return_probability_table(d, n_max)
    f = np.zeros(n_max + 1)
    for n in range(1, n_max + 1):
        f[n] = P[n] - np.dot(f[1:n], P[n - 1:0:-1])
    return f


def first_return_law_fft(d: int, n_max: int) -> np.ndarray:
    """f up to large n_max via Newton power-series reciprocal (float route).

    F(z) = 1 - 1/P(z); used for desk-scale pilots at n ~ 10^6 where the
    O(n^2) recursion is too slow.
    """
    size = 1
    while size < n_max + 1:
        size *= 2
    P = return_probability_table(d, size - 1)
    Q = np.array([1.0 / P[0]])
    n = 1
    while n < size:
        n2 = min(2 * n, size)
        PQ = np.fft.irfft(np.fft.rfft(P[:n2], 2 * n2) * np.fft.rfft(Q, 2 * n2), 2 * n2)[:n2]
        R = -PQ
        R[0] += 2.0
        Q = np.fft.irfft(np.fft.rfft(Q, 2 * n2) * np.fft.rfft(R, 2 * n2), 2 * n2)[:n2]
        n = n2
    f = -Q[: n_max + 1]
    f[0] = 0.0
    return f


def renewal_residual(P, f) -> float:
    """max_n |P_n - (f * P)_n|; the renewal identity's defect."""
    n_max = min(len(P), len(f)) - 1
    Pf = np.asarray(P, dtype=float)
    ff = np.asarray(f, dtype=float)
    conv = np.convolve(ff[: n_max + 1], Pf[: n_max + 1])[: n_max + 1]
    return float(np.max(np.abs(Pf[1 : n_max + 1] - conv[1 : n_max + 1])))


def green_truncated(d: int, n: int) -> float:
    """g(n) = sum_{k<=n} P_k(0,0) for the simple walk."""
    return float(np.sum(return_probability_table(d, n)))


def green_truncated_table(d: int, n_max: int) -> np.ndarray:
    return np.cumsum(return_probability_table(d, n_max))


def green_truncated_general(step_law: dict, n_max: int) -> np.ndarray:
    """g(n), n <= n_max, for a 2-d walk given as {(dx, dy): prob}.

    Characteristic-function route: the trapezoid average of phi^k is exact
    for grids larger than k * max|step|; intended for the small-support
    reduced walks, with n_max kept moderate.
    """
    smax = max(max(abs(dx), abs(dy)) for dx, dy in step_law)
    N = n_max * smax + 1
    if N > 4096:
        raise ValueError("general Green table too large; reduce n_max")
    theta = 2.0 * np.pi * np.arange(N) / N
    phi = np.zeros((N, N))
    for (dx, dy), p in step_law.items():
        phi += p * np.cos(dx * theta[:, None] + dy * theta[None, :])
    # symmetric law -> phi real
    g = np.empty(n_max + 1)
    cur = np.ones_like(phi)
    acc = 1.0
    g[0] = 1.0
    for k in range(1, n_max + 1):
        cur *= phi
        acc += float(cur.mean())
        g[k] = acc
    return g


def green_at_origin(d: int, t_split: float = 1e6) -> float:
    """G_d = sum_k P_k(0,0) via the Laplace-Bessel integral (d >= 3).

    integrand i0e(t/d)^d == exp(-t) I_0(t/d)^d; the [t_split, inf) tail uses
    the asymptotic expansion of i0e through 1/t^2, whose next term is below
    1e-18 relative at the default split.
    """
    if d <= 2:
        raise RecurrenceError(f"Green value diverges for d={d} (recurrent walk)")

    def integrand(t):
        return special.i0e(t / d) ** d

    total = 0.0
    edges = [0.0, 50.0, 5e3, t_split]
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = integrate.quad(integrand, lo, hi, limit=400,
                                  epsabs=1e-13, epsrel=1e-12)
        if err > 1e-9:
            raise QuadratureError(f"Green quadrature residual {err:.2e} on [{lo},{hi}]")
        total += val
    pref = (d / (2.0 * np.pi)) ** (d / 2.0)
    p = d / 2.0
    T = t_split
    tail = T ** (1 - p) / (p - 1)
    tail += (d * d / 8.0) * T ** (-p) / p
    tail += (d ** 3 * (d + 8) / 128.0) * T ** (-p - 1) / (p + 1)
    return total + pref * tail


@dataclass(frozen=True)
class EscapeConstants:
    """gamma_d(n) truncations, never-return probability, and lambda_d."""

    d: int
    gamma_n: np.ndarray  # gamma_n[n] valid for n >= 1; gamma_n[0] = nan
    gamma: float
    lam: float


def truncated_escape_probabilities(d: int, n_max: int) -> np.ndarray:
    """gamma_d(n) = P(no return to 0 in the first n-1 steps), n = 1..n_max."""
    f = first_return_law(d, n_max)
    out = np.empty(n_max + 1)
    out[0] = np.nan
    out[1:] = 1.0 - np.concatenate([[0.0], np.cumsum(f[1:n_max])])
    return out


def escape_constants(d: int, n_max: int = 1000) -> EscapeConstants:
    """Escape probability gamma_d, lambda_d, and the gamma_d(n) table.

    The constants come from the Green quadrature for any d >= 3; the
    gamma_d(n) truncation table rides on the first-return law and is only
    filled for d = 3 (NaN otherwise).
    """
    if d <= 2:
        raise RecurrenceError(
            f"gamma_d = 0 and lambda_d undefined for recurrent d={d}")
    gamma = 1.0 / green_at_origin(d)
    lam = -1.0 / np.log1p(-gamma)
    if d == 3:
        gamma_n = truncated_escape_probabilities(d, n_max)
    else:
        gamma_n = np.full(n_max + 1, np.nan)
    return EscapeConstants(d, gamma_n, gamma, lam)


def renewal_xi_law(d: int, n: int, exact: bool = False):
    """Distribution of xi(0, n): pmf over 0..m_max plus the tail function.

    P(xi >= m) is the total mass at times <= n of the m-fold convolution of
    the first-return law.  ``exact`` uses rational arithmetic (n <= 32);
    the float route is supported to n = 10^3 by the O(n^2) inversion and
    beyond that switches to the FFT inversion.
    """
    if exact:
        if n > 32:
            raise ValueError("exact xi law limited to n <= 32")
        f = first_return_law(d, n, exact=True)
        tails = []
        cur = list(f)
        while True:
            tp = sum(cur[1 : n + 1])
            if tp == 0:
                break
            tails.append(tp)
            nxt = [Fraction(0)] * (n + 1)
            for i in range(1, n + 1):
                if cur[i] == 0:
                    continue
                for j in range(1, n + 1 - i):
                    nxt[i + j] += cur[i] * f[j]
            cur = nxt
        pmf = []
        prev = Fraction(1)
        for tp in tails:
            pmf.append(prev - tp)
            prev = tp
        pmf.append(prev)
        return pmf
    f = first_return_law(d, n) if n <= 1000 else first_return_law_fft(d, n)
    L = n + 1
    F = np.fft.rfft(f[:L], 2 * L)
    cur = f[:L].copy()
    tails = [float(cur.sum())]
    while tails[-1] > 1e-14 and len(tails) < 2000:
        cur = np.fft.irfft(np.fft.rfft(cur, 2 * L) * F, 2 * L)[:L]
        tails.append(float(cur.sum()))
    tail = np.array(tails)
    pmf = np.empty(len(tail) + 1)
    pmf[0] = 1.0 - tail[0]
    pmf[1:-1] = tail[:-1] - tail[1:]
    pmf[-1] = tail[-1]
    return pmf
