"""The Cauchy walk two ways: closed-form sampling vs planar embedding.

The direct sampler inverts the exact CDF (telescoping tail, no
truncation); the embedded sampler watches the rotated planar walk until
its second coordinate returns to zero.  A coupled run checks the local
time identity between the Cauchy walk and the planar diagonal pathwise.
"""

import numpy as np

from latwalk.cauchy import CauchyStepLaw, coupled_run, eta_local_time, \
    eta_max, sample_embedded
from latwalk.ledger import LocalTimeLedger
from latwalk.subsets import Line2D

law = CauchyStepLaw()
print(f"step law: P(U=0) = 1 - 2/pi = {law.p_zero:.6f}; "
      f"P(U=+/-2) = {law.pmf(2):.6f}; P(|U| > 20) = {law.tail_mass(10):.6f}")

direct = law.sample(300_000, seed=5)
emb, trunc, steps = sample_embedded(300_000, seed=6, cap=10 ** 5)
keep = emb[trunc == 0]
print(f"embedded: {int(trunc.sum())} of 300000 samples truncated at the cap, "
      f"excluded; mean joint steps per sample {steps.mean():.0f}")
print(f"{'step':>6} {'closed form':>12} {'direct MC':>12} {'embedded MC':>12}")
for v in (0, 2, 4, 8, 20):
    print(f"{v:>6} {law.pmf(v):>12.5f} {np.mean(direct == v):>12.5f} "
          f"{np.mean(keep == v):>12.5f}")
sup = law.support(10)
tv = 0.5 * sum(abs(np.mean(direct == v) - np.mean(keep == v)) for v in sup)
print(f"total variation (direct vs embedded, |U| <= 20): {tv:.4f}")

run = coupled_run(seed=2, walker_id=0, n_returns=200, budget=500_000)
rho_n = run.rho[-1]
led = LocalTimeLedger(2, restriction=Line2D(1, -1))
led.record_path(run.positions[: rho_n + 1])
site, count = led.max_local_time()
print(f"\ncoupled run: 200 diagonal returns by step {rho_n:,}")
print(f"  max local time of the Cauchy walk: {eta_max(run, 200)}")
print(f"  max diagonal local time of the planar walk: {count} at {site}")
print(f"  eta(2l, n) == xi((l,l), rho_n) for every visited l: "
      f"{all(eta_local_time(run, 2 * s[0], 200) == c for s, c in led.counts.items())}")
