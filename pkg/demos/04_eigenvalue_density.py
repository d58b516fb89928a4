# # Density of the rescaled real eigenvalues
#
# A real eigenvalue x of the product is mapped to lambda = sign(x) |x|^(1/m).
# In the limit the lambdas follow a density on (-1, 1) that vanishes at the
# origin, is flat at small alpha and triangular at large alpha.

import numpy as np

from ginprod.ginibre import SimulationConfig, run_simulation
from ginprod.stats import compare_to_density, histogram_lambda
from ginprod.theory import density_curve, density_limit

for alpha in (0.01, 1.0, 100.0):
    curve = density_curve(alpha, 4001)
    print(f"alpha={alpha:6g}: rho(0.25)={density_limit(0.25, alpha):.4f} "
          f"rho(0.75)={density_limit(0.75, alpha):.4f} mass={curve.trapezoid_mass():.7f}")

# A histogram of simulated lambdas at N = m = 30 against the alpha = 1 curve.

run = run_simulation(SimulationConfig(N=30, m=30, samples=200, seed=3), threads=2)
h = histogram_lambda(run, 15)
sup, chi = compare_to_density(h, 1.0)
for c, d in zip(h.centers, h.density):
    print(f"{c:+.3f}  {d:.3f}  {density_limit(c, 1.0):.3f}  " + "#" * int(round(40 * d)))
print(f"sup-norm {sup:.3f}, chi-square {chi:.1f} over {h.counts.size} bins, dropped {h.dropped}")
