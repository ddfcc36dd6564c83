"""Acceptance suite: one check per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
The Monte Carlo budgets follow the stated criteria (two checks walk ~10^10
lattice steps; expect a couple of minutes total on a small machine).
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from latwalk import bounds, cauchy, excursions, experiments, kernels, \
    potential, projections, returns, stats
from latwalk.experiments import ExperimentConfig, run_experiment, \
    samplewise_violations, scaling_report
from latwalk.ledger import LocalTimeLedger
from latwalk.subsets import Codim2, Hyperplane, Line2D
from latwalk.walk import WalkConfig, decoded_steps, path_positions

MASTER = 20_240_809


def _report(num, ok, detail):
    print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_1_oracle_exactness():
    t0 = time.monotonic()
    p2 = returns.return_probability(2, 2)
    p4 = returns.return_probability(2, 4)
    f = returns.first_return_law(2, 4, exact=True)
    P = returns.return_probability_table(2, 2048)
    ff = returns.first_return_law(2, 2048)
    residual = returns.renewal_residual(P, ff)
    dt = time.monotonic() - t0
    ok = (p2 == 0.25 and p4 == 9 / 64
          and f[2] == Fraction(1, 4) and f[4] == Fraction(5, 64)
          and residual < 1e-12 and dt < 1.0)
    _report(1, ok, f"P2={p2}, P4={p4}, f2={f[2]}, f4={f[4]}, "
                   f"renewal residual={residual:.2e}, runtime={dt:.2f}s")


def test_criterion_2_escape_constants():
    returns.escape_constants(3, n_max=8)  # warm the compiled trinomial table
    t0 = time.monotonic()
    esc = returns.escape_constants(3, n_max=1000)
    dt = time.monotonic() - t0
    bracket = bool(np.all(esc.gamma_n[1:] > esc.gamma))
    ok = (0.6590 <= esc.gamma <= 0.6600
          and 0.925 <= esc.lam <= 0.932
          and esc.lam < 1.0 and bracket and dt < 10.0)
    _report(2, ok, f"gamma_3={esc.gamma:.6f} in [0.6590,0.6600], "
                   f"lambda_3={esc.lam:.6f} in [0.925,0.932], lambda_3<1, "
                   f"gamma_3 < gamma_3(n) for n<=1000: {bracket}, "
                   f"runtime={dt:.1f}s")


def test_criterion_3_local_time_limit_law_d2():
    # the statistic is integer-valued with an O(1/log n) atom at 0
    # (about 0.19 at n = 10^6), so the limit law is tested at integer
    # thresholds: P(xi < m) against 1 - exp(-pi m / log n), sup over m
    n, walkers = 10 ** 6, 10 ** 4
    t0 = time.monotonic()
    ids = np.arange(walkers, dtype=np.int64)
    xi = kernels.k_origin_visits(np.uint64(MASTER), ids, np.int64(n), np.int64(2))
    dt = time.monotonic() - t0
    cdf = lambda x: 1.0 - np.exp(-np.pi * x)
    d_lattice = stats.lattice_ks_distance(xi, cdf, np.log(n))
    d_plain = stats.ks_test(xi / np.log(n), cdf).distance
    ok = d_lattice < 0.05
    _report(3, ok, f"threshold-KS={d_lattice:.4f} < 0.05 at n=1e6, 1e4 walkers "
                   f"(plain KS={d_plain:.3f}, atom P(xi=0)={np.mean(xi == 0):.3f}; "
                   f"sim {walkers * n:.0e} steps in {dt:.0f}s)")


def test_criterion_4_geometric_total_local_time_d3():
    n, walkers = 10 ** 5, 10 ** 5
    t0 = time.monotonic()
    ids = np.arange(walkers, dtype=np.int64)
    xi = kernels.k_origin_visits(np.uint64(MASTER + 1), ids, np.int64(n),
                                 np.int64(3))
    dt = time.monotonic() - t0
    gamma = returns.escape_constants(3, n_max=4).gamma
    kmax = int(xi.max())
    pmf = gamma * (1 - gamma) ** np.arange(kmax + 1)
    res = stats.chi_square_test(stats.counts_from_samples(xi, kmax), pmf)
    ok = res.p_value > 0.01
    _report(4, ok, f"chi-square vs geometric(gamma_3): p={res.p_value:.3f} > 0.01 "
                   f"(dof={res.dof}, tail-pooled; sim {walkers * n:.0e} steps "
                   f"in {dt:.0f}s)")


def test_criterion_5_excursion_law_and_sum_bound():
    p_or = potential.hit_before_return((1, 0))
    ys, tele = excursions.sample_excursion_counts(10 ** 6, MASTER + 2)
    counts = stats.counts_from_samples(ys)
    pmf = excursions.excursion_pmf(p_or.value, int(ys.max()))
    tv = stats.total_variation(counts, pmf)
    chi = stats.chi_square_test(counts, pmf)
    lem = bounds.excursion_sum_tail_check(Fraction(1, 2), 10, 4)
    ok = (0.497 <= p_or.value <= 0.503 and tv < 0.02 and chi.p_value > 0.01
          and lem.verdict is bounds.Verdict.PASS)
    _report(5, ok, f"p(1,0)={p_or.value:.5f} in [0.497,0.503]; excursion law "
                   f"TV={tv:.4f} < 0.02, chi-square p={chi.p_value:.3f} "
                   f"(1e6 excursions, {int(tele.sum())} far-field resolutions); "
                   f"sum-tail {lem.estimate:.2e} <= e^-5={lem.bound:.2e}")


def _random_nonzero(rng, d):
    while True:
        a = tuple(int(v) for v in rng.integers(-5, 6, size=d))
        if any(a):
            return a


def test_criterion_6_projection_invariants():
    rng = np.random.default_rng(606)
    n = 10 ** 4
    viol_1d = viol_2d = viol_red = 0
    cases = 0
    t0 = time.monotonic()
    while cases < 1000:
        d = int(rng.integers(2, 6))
        a = Hyperplane(_random_nonzero(rng, d)).canonicalize().a
        cfg = WalkConfig(MASTER + 3 + cases, 0, d, n)
        pos = path_positions(cfg)
        axis, sign = decoded_steps(cfg)
        out = 2 * axis + (sign < 0)
        if cases % 2 == 0:
            z = np.cumsum(projections.OneDProjection(a).increments()[out])
            member = pos[1:] @ np.asarray(a) == 0
            viol_1d += int(np.sum(member != (z == 0)))
        else:
            b = _random_nonzero(rng, d)
            try:
                spec = Codim2(a, b).canonicalize()
            except ValueError:
                continue
            proj = projections.TwoDProjection.from_codim2(spec)
            red = projections.subgroup_basis(proj.pairs)
            z2 = np.cumsum(proj.increments()[out], axis=0)
            zr = np.cumsum(red.increments()[out], axis=0)
            member = spec.contains_many(pos[1:])
            tilde = (z2[:, 0] == 0) & (z2[:, 1] == 0)
            hat = (zr[:, 0] == 0) & (zr[:, 1] == 0)
            viol_2d += int(np.sum(member != tilde))
            viol_red += int(np.sum(tilde != hat))
        cases += 1
    dt = time.monotonic() - t0
    ok = viol_1d == viol_2d == viol_red == 0
    _report(6, ok, f"1000 random (d, coefficients) cases x 1e4 steps: "
                   f"zero-set violations 1d={viol_1d}, 2d={viol_2d}, "
                   f"reduction={viol_red} (runtime {dt:.0f}s)")


def test_criterion_7_cauchy_walk():
    law = cauchy.CauchyStepLaw()
    mass = law.pmf_array(1000).sum() + law.tail_mass(1000)
    tail_exact = all(
        abs((1.0 - law.pmf_array(K).sum()) - law.tail_mass(K)) < 1e-12
        for K in (1, 10, 100))
    direct = law.sample(10 ** 6, seed=MASTER + 4)
    emb, trunc, _ = cauchy.sample_embedded(10 ** 6, seed=MASTER + 5, cap=10 ** 6)
    keep = emb[trunc == 0]
    sup = law.support(10)
    pd = np.array([np.mean(direct == v) for v in sup])
    pe = np.array([np.mean(keep == v) for v in sup])
    tv = 0.5 * float(np.abs(pd - pe).sum())
    sup40 = law.support(20)
    table = np.array([[int(np.sum(direct == v)) for v in sup40],
                      [int(np.sum(keep == v)) for v in sup40]])
    table = table[:, table.min(axis=0) > 0]
    from scipy.stats import chi2_contingency
    chi_p = float(chi2_contingency(table).pvalue)
    coupled_ok = True
    for seed in (0, 2, 3):
        run = cauchy.coupled_run(seed, 0, 150, budget=400_000)
        assert run.complete
        rho_n = run.rho[149]
        led = LocalTimeLedger(2, restriction=Line2D(1, -1))
        led.record_path(run.positions[: rho_n + 1])
        for site, count in led.counts.items():
            if cauchy.eta_local_time(run, 2 * site[0], 150) != count:
                coupled_ok = False
        if cauchy.eta_max(run, 150) != led.max_local_time()[1]:
            coupled_ok = False
    ok = (tv < 0.01 and chi_p > 0.01 and abs(mass - 1.0) < 1e-12
          and tail_exact and coupled_ok)
    _report(7, ok, f"direct-vs-embedded TV={tv:.4f} < 0.01 on {{0,..,+/-20}} "
                   f"at 1e6 samples ({int(trunc.sum())} truncated, excluded), "
                   f"chi-square p={chi_p:.3f}; pmf mass 1{mass - 1.0:+.1e}, "
                   f"telescoped tail exact: {tail_exact}; "
                   f"pathwise eta identity: {coupled_ok}")


def test_criterion_8_envelope_and_scaling_suites():
    line_cfg = ExperimentConfig("line-d2", 2, "line:1,-1",
                                (10 ** 4, 10 ** 5, 10 ** 6), 100, MASTER + 6,
                                normalization="log2")
    rep_line = scaling_report(run_experiment(line_cfg))
    lo, hi = 1 / (16 * np.pi), 1 / np.pi
    line_ok = all(lo <= m <= hi for m in rep_line.norm_means) and \
        all(lo <= m <= hi for m in rep_line.norm_medians)

    axis_cfg = ExperimentConfig("codim2-axis", 3, "codim2:1,0,0;0,1,0",
                                (10 ** 4, 10 ** 6, 10 ** 8), 24, MASTER + 7,
                                normalization="loglog")
    rep_axis = scaling_report(run_experiment(axis_cfg))
    axis_ok = rep_axis.cross_decade_ratio < 3.0

    base = dict(d=2, schedule=(10 ** 4, 10 ** 5, 10 ** 6), walkers=60,
                seed=MASTER + 8, normalization="log2")
    rec_line = run_experiment(ExperimentConfig("line-d2", subset="line:1,-1", **base))
    rec_both = run_experiment(ExperimentConfig(
        "ball-line-d2", subset="and(ball:n^0.4,line:1,-1)", alpha=0.4, **base))
    viol = samplewise_violations(rec_both, rec_line)
    rep_both = scaling_report(rec_both)
    ok = line_ok and axis_ok and viol == 0 and rep_both.within_envelope
    _report(8, ok,
            f"line means={tuple(round(m, 4) for m in rep_line.norm_means)} in "
            f"[{lo:.4f},{hi:.4f}]: {line_ok}; codim-2 loglog cross-decade "
            f"ratio={rep_axis.cross_decade_ratio:.2f} < 3: {axis_ok}; "
            f"ball-and-line samplewise violations={viol}; intersection "
            f"envelope: {rep_both.within_envelope}")


def test_criterion_9_reproducibility():
    cfg = ExperimentConfig("line-d2", 2, "line:1,-1", (1000, 10_000), 16,
                           MASTER + 9, normalization="log2")
    rec1, rec2 = run_experiment(cfg), run_experiment(cfg)
    csv_same = rec1.to_csv() == rec2.to_csv()
    hash_same = rec1.content_hash() == rec2.content_hash()
    m1, m2 = rec1.manifest(), rec2.manifest()
    m1.pop("wall_time_s"), m2.pop("wall_time_s")
    cfg3 = ExperimentConfig("origin-geometric", 3, "ball:0", (2000,), 64, MASTER + 10,
                            statistic="distribution", normalization="log2")
    rec3, rec4 = run_experiment(cfg3), run_experiment(cfg3)
    d3_same = rec3.to_csv() == rec4.to_csv()
    ok = csv_same and hash_same and m1 == m2 and d3_same
    _report(9, ok, f"rerun bit-identical: csv={csv_same}, "
                   f"hash={hash_same}, manifest={m1 == m2}, d3 ensemble={d3_same}")
