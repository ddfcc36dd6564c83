"""Walks, visit ledgers and subset restrictions, at a glance.

Simulates a planar walk, tallies local times on the whole plane and on
restricted subsets, and shows the ledger CSV dump format.
"""

import numpy as np

from latwalk import LocalTimeLedger, WalkConfig, parse_subset, path_positions

cfg = WalkConfig(seed=7, walker_id=0, d=2, n=200_000)
pos = path_positions(cfg)
print(f"walk: d=2, n={cfg.n:,}, final site {tuple(pos[-1])}, "
      f"max |coordinate| {np.abs(pos).max()}")

full = LocalTimeLedger(2)
full.record_path(pos)
site, count = full.max_local_time()
print(f"most visited site overall: {site} with {count} visits "
      f"(distinct sites: {len(full.counts):,})")

for text in ("line:1,-1", "ball:10", "and(ball:30,line:1,-1)"):
    spec = parse_subset(text).canonicalize()
    led = LocalTimeLedger(2, restriction=spec)
    led.record_path(pos)
    site, count = led.max_local_time()
    print(f"restricted to {text:24s} max {count:4d} at {site} "
          f"(subset visits: {led.total_recorded})")

diag = LocalTimeLedger(2, restriction=parse_subset("line:1,-1"))
diag.record_path(pos[:2_000])
print("\nledger dump (first steps only, rows x1,x2,count, lexicographic):")
print(diag.to_csv())
