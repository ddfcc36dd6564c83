"""Return probabilities, first returns, escape constants, Green growth.

Everything here is computed, not simulated: closed forms, renewal
inversion, and quadrature, with the cross-route agreement printed.
"""

import numpy as np

from latwalk import returns

print("return probabilities at the origin, three routes (d=2):")
for n in (2, 4, 8, 16):
    table = returns.return_probability(2, n)
    conv = float(returns.convolution_return_prob(2, n, exact=True))
    quad = returns.quadrature_return_prob(2, n)
    print(f"  n={n:3d}: closed-form {table:.12f}  convolution {conv:.12f}  "
          f"quadrature {quad:.12f}")

f = returns.first_return_law(2, 10, exact=True)
print(f"\nfirst-return law (d=2, exact): f2={f[2]}, f4={f[4]}, f6={f[6]}")
P = returns.return_probability_table(2, 2048)
ff = returns.first_return_law(2, 2048)
print(f"renewal identity residual over n<=2048: {returns.renewal_residual(P, ff):.2e}")

print("\nescape constants (d >= 3, Green value by quadrature):")
for d in (3, 4, 5):
    esc = returns.escape_constants(d, n_max=8)
    print(f"  d={d}: gamma={esc.gamma:.6f}  lambda={esc.lam:.6f}")
esc3 = returns.escape_constants(3, n_max=200)
print(f"  truncations: gamma_3(1)={esc3.gamma_n[1]:.4f} "
      f"gamma_3(3)={esc3.gamma_n[3]:.4f} gamma_3(200)={esc3.gamma_n[200]:.6f} "
      f"-> all above gamma_3={esc3.gamma:.6f}: "
      f"{bool(np.all(esc3.gamma_n[1:] > esc3.gamma))}")

print("\ntruncated Green value g(n) and its log-slope (d=2):")
prev = None
for n in (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5):
    g = returns.green_truncated(2, n)
    line = f"  g({n:>6,}) = {g:.5f}"
    if prev is not None:
        slope = (g - prev[1]) / (np.log(n) - np.log(prev[0]))
        line += f"   slope since n={prev[0]:,}: {slope:.5f} (1/pi = {1/np.pi:.5f})"
    print(line)
    prev = (n, g)

print("\nlaw of the local time at the origin by renewal convolution (d=2, n=100):")
pmf = returns.renewal_xi_law(2, 100)
print("  P(xi=k):", "  ".join(f"{k}:{p:.4f}" for k, p in enumerate(pmf[:6])))
