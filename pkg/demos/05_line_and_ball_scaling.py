"""Scaling of maximal local times on lines, balls and intersections (d=2).

Normalized by (log n)^2 and compared against the theoretical envelopes;
one coupled pair of runs demonstrates samplewise subset monotonicity.
"""

import numpy as np

from latwalk.experiments import (ExperimentConfig, run_experiment,
                                 samplewise_violations, scaling_report,
                                 write_record)

schedule = (10 ** 4, 10 ** 5, 10 ** 6)

studies = [
    ExperimentConfig("line-d2", 2, "line:1,-1", schedule, 60, 1001,
                     normalization="log2"),
    ExperimentConfig("ball-power-d2", 2, "ball:n^0.4", schedule, 60, 1002,
                     normalization="log2", alpha=0.4),
    ExperimentConfig("ball-line-d2", 2, "and(ball:n^0.4,line:1,-1)", schedule, 60,
                     1001, normalization="log2", alpha=0.4),
]

records = {}
for cfg in studies:
    rec = run_experiment(cfg)
    records[cfg.study] = rec
    rep = scaling_report(rec)
    lo, hi = rep.widened
    print(f"{cfg.study:8s} subset={cfg.subset:28s} "
          f"normalized means={tuple(round(m, 4) for m in rep.norm_means)}")
    print(f"         envelope (widened x{cfg.widen:g}): "
          f"[{lo:.4f}, {hi:.4f}] -> {rep.verdict}; "
          f"cross-decade ratio {rep.cross_decade_ratio:.2f}")

line = records["line-d2"]
both = records["ball-line-d2"]
viol = samplewise_violations(both, line)
print(f"\nball-and-line vs line on the same paths: {viol} monotonicity "
      f"violations across {sum(len(v) for v in line.values)} walker-runs")

paths = write_record(line, "demo_results", stem="line_scaling")
print(f"persisted line study: {paths[0].name}, {paths[1].name} in demo_results/")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots(figsize=(6, 4))
    for tag, rec in records.items():
        rep = scaling_report(rec)
        ax.semilogx(rep.ns, rep.norm_means, "o-", label=tag)
    ax.axhline(1 / (8 * np.pi), color="gray", ls=":", lw=1)
    ax.axhline(1 / (2 * np.pi), color="gray", ls=":", lw=1)
    ax.set_xlabel("n")
    ax.set_ylabel("max local time / (log n)^2")
    ax.legend()
    fig.tight_layout()
    fig.savefig("demo05_scaling.svg")
    print("wrote demo05_scaling.svg")
except ImportError:
    print("matplotlib unavailable; skipped the plot")
