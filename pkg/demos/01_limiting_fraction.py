# # Limiting fraction of real eigenvalues
#
# Take m = alpha N real Gaussian N x N matrices and multiply them.  As N grows
# the fraction of real eigenvalues of the product settles at c(alpha), and the
# variance of the count divided by its mean settles at r(alpha).

import numpy as np

from ginprod.theory import c_closed, c_integral, r_ratio, s_alt, s_direct, theory_point

# Both ends of the alpha axis are easy to picture.  Few factors per row look
# like a single Ginibre matrix, where only a vanishing fraction of eigenvalues
# is real.  Many factors push every eigenvalue onto the real line.

for alpha in (1e-3, 0.1, 1.0, 10.0, 100.0):
    tp = theory_point(alpha)
    print(f"alpha={alpha:8g}  c={tp.c:.6f}  s={tp.s:.6f}  r={tp.r:.6f}")

# c has a closed form and an integral representation; s has two integral
# forms.  They agree to quadrature accuracy across six decades of alpha.

grid = np.geomspace(1e-3, 1e3, 20)
print("max |c_closed - c_integral| =", max(abs(c_closed(a) - c_integral(a)) for a in grid))
print("max |s_direct - s_alt|      =", max(abs(s_direct(a) - s_alt(a)) for a in grid))

# For small alpha the variance-to-mean ratio approaches its single-matrix
# value 2 - sqrt(2); at alpha = 1 it is close to 0.45.

print("r(1e-4) =", r_ratio(1e-4), " 2 - sqrt(2) =", 2 - np.sqrt(2))
print("r(1)    =", r_ratio(1.0))
