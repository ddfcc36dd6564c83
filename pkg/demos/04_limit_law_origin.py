"""Distribution of the origin's local time against its limit laws.

d=2: xi(0,n)/log n approaches an exponential with rate pi; the empirical
law (Monte Carlo), the exact finite-n law (renewal convolution) and the
limit are compared at integer thresholds.  d=3: the total local time is
geometric with the escape probability as its parameter.
"""

import numpy as np

from latwalk import kernels, returns, stats

n, walkers = 10 ** 5, 4000
print(f"d=2: {walkers} walkers, n={n:,}")
xi = kernels.k_origin_visits(np.uint64(41), np.arange(walkers, dtype=np.int64),
                             np.int64(n), np.int64(2))
ln = np.log(n)
exact = returns.renewal_xi_law(2, n)
limit = lambda x: 1.0 - np.exp(-np.pi * x)
print(f"  atom at zero: empirical {np.mean(xi == 0):.4f}  "
      f"exact {exact[0]:.4f}  (the limit law has none)")
d_emp = stats.lattice_ks_distance(xi, limit, ln)
cum = np.cumsum(exact)
ms = np.arange(1, len(exact) + 1)
d_exact = float(np.max(np.abs(cum - limit(ms / ln))))
print(f"  threshold distance to the limit: empirical {d_emp:.4f}, "
      f"exact finite-n law {d_exact:.4f} (vanishes like 1/log n)")

print(f"\nd=3: total local time vs geometric(gamma_3), {walkers} walkers")
xi3 = kernels.k_origin_visits(np.uint64(42), np.arange(walkers, dtype=np.int64),
                              np.int64(10 ** 4), np.int64(3))
gamma = returns.escape_constants(3, n_max=4).gamma
kmax = int(xi3.max())
pmf = gamma * (1 - gamma) ** np.arange(kmax + 1)
res = stats.chi_square_test(stats.counts_from_samples(xi3, kmax), pmf)
print(f"  chi-square: statistic={res.statistic:.2f}, dof={res.dof}, "
      f"p={res.p_value:.3f}")
for k in range(5):
    print(f"  P(xi={k}): empirical {np.mean(xi3 == k):.4f}  "
          f"geometric {pmf[k]:.4f}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    xs = np.linspace(0, 3, 200)
    fig, ax = plt.subplots(figsize=(6, 4))
    sorted_x = np.sort(xi / ln)
    ax.step(sorted_x, np.arange(1, len(sorted_x) + 1) / len(sorted_x),
            label=f"empirical CDF (n={n:,})", where="post")
    ax.plot(xs, limit(xs), "k--", label="exponential limit")
    ax.set_xlabel("local time at the origin / log n")
    ax.set_ylabel("CDF")
    ax.legend()
    fig.tight_layout()
    fig.savefig("demo04_origin_law.png", dpi=120)
    print("\nwrote demo04_origin_law.png")
except ImportError:
    print("\nmatplotlib unavailable; skipped the plot")
