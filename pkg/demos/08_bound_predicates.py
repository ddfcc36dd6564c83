"""All inequality-bound predicates in one table.

Exact checks pass or fail outright; Monte Carlo checks carry a Wilson
interval and may also return INCONCLUSIVE; unspecified constants are
fitted and reported.
"""

from fractions import Fraction

from latwalk import bounds

checks = [
    bounds.excursion_sum_tail_check(Fraction(1, 2), 10, 4),
    bounds.delayed_return_tail_check(trials=200_000),
    bounds.return_chain_tail_check_2d(trials=10_000),
    bounds.return_chain_tail_check_1d(trials=10_000),
    bounds.origin_tail_upper_check(walkers=50_000),
    bounds.origin_tail_lower_check(walkers=50_000),
    bounds.gaussian_tail_check_1d(walkers=30_000),
    bounds.exponential_tail_check_2d(walkers=50_000),
]

print(f"{'predicate':36s} {'estimate':>11} {'bound':>11} "
      f"{'margin':>10} {'fitted C':>9}  verdict")
for c in checks:
    fitted = f"{c.fitted_constant:9.3f}" if c.fitted_constant is not None else "        -"
    print(f"{c.name:36s} {c.estimate:>11.4g} {c.bound:>11.4g} "
          f"{c.margin:>10.3g} {fitted}  {c.verdict.value}")
