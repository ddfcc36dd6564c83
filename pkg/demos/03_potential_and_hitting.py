"""The planar potential kernel and hit-before-return probabilities.

The kernel table is exact (rational + rational multiple of 4/pi); the
series and quadrature routes back it independently.  Hitting
probabilities come from Dirichlet solves with bracketing boundary data,
and the reciprocal relation p(x) = 1/(2 a(x)) is observed, not assumed.
"""

from latwalk import potential

print("potential kernel a(x), exact values (r + s*4/pi):")
for site in [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (5, 0)]:
    r, s = potential.potential_kernel_pair(site)
    print(f"  a{site} = {float(r):+.0f} + {float(s):+.4f} * 4/pi "
          f"= {potential.potential_kernel(site):.8f}")

print("\nindependent routes at (2, 1):")
print(f"  exact      {potential.potential_kernel((2, 1)):.10f}")
print(f"  series     {potential.potential_kernel_series((2, 1)):.10f}")
print(f"  quadrature {potential.potential_kernel_quadrature((2, 1)):.10f}")

print("\nhit-before-return probabilities (boxes with bracketing boundaries):")
for site in [(1, 0), (1, 1), (2, 0), (3, 0), (5, 0)]:
    hit = potential.hit_before_return(site, radii=(16, 32, 64))
    recip = 1.0 / (2.0 * potential.potential_kernel(site))
    print(f"  p{site} = {hit.value:.5f}  bracket [{hit.bracket_low:.3f}, "
          f"{hit.bracket_high:.3f}]  1/(2a) = {recip:.5f}")

c = potential.hit_bound_constant(max_norm=8)
print(f"\nfitted lower-bound constant: p(x) >= {c:.3f} / log||x|| "
      f"over 2 <= ||x|| <= 8")
