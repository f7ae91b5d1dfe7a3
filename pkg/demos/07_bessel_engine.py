"""The special-function engine behind the scattering oracles.

J comes from Miller's backward recurrence, Y0/Y1 from Neumann series
over those J values, higher Y from the forward recurrence.  Everything
is cross-checked here against the exact-rational series oracle (same
package, independent code path) and the Wronskian identity.
"""

import math

import numpy as np

from fdtdlab.analytic import bessel_j, bessel_y, hankel2
from fdtdlab.oracles import series_bessel_j, series_bessel_y

print("spot values")
print(f"  J0(1) = {bessel_j(0, 1.0):.16f}   (oracle {series_bessel_j(0, 1.0):.16f})")
print(f"  Y0(1) = {bessel_y(0, 1.0):.16f}   (oracle {series_bessel_y(0, 1.0):.16f})")
print(f"  H2_3(2.5) = {hankel2(3, 2.5):.12f}")

rng = np.random.default_rng(123)
worst = 0.0
worst_at = None
for _ in range(60):
    m = int(rng.integers(0, 21))
    x = float(rng.uniform(0.05, 50.0))
    ref_j = series_bessel_j(m, x)
    ref_y = series_bessel_y(m, x)
    err = max(abs(bessel_j(m, x) - ref_j) / max(1.0, abs(ref_j)),
              abs(bessel_y(m, x) - ref_y) / max(1.0, abs(ref_y)))
    if err > worst:
        worst, worst_at = err, (m, x)
print(f"\n60 random points, m <= 20, 0 < x <= 50:")
print(f"  worst error vs the exact-rational oracle: {worst:.3e} "
      f"at m={worst_at[0]}, x={worst_at[1]:.3f}")

worst_w = max(abs(bessel_j(m + 1, x) * bessel_y(m, x)
                  - bessel_j(m, x) * bessel_y(m + 1, x) - 2 / (math.pi * x))
              for m in range(0, 21, 4) for x in (0.5, 3.0, 17.0, 49.0))
print(f"  worst Wronskian deviation: {worst_w:.3e}")

print("\nnear the origin Y_m features the (m-1)! blow-up; relative "
      "accuracy holds:")
for m, x in ((20, 0.5), (40, 0.001)):
    print(f"  Y_{m}({x}) = {bessel_y(m, x):.6e}")
