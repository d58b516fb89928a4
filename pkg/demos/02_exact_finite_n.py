# # Exact statistics at finite N
#
# At finite N the mean and variance of the real-eigenvalue count are finite
# sums of the coefficients b_{j,k}, each a contour integral of a ratio of
# gamma functions.

from ginprod.exact import (
    BjkRequest,
    b_asymptotic,
    b_coeff,
    expected_real_count,
    moment,
    variance_real_count,
)
from ginprod.theory import c_closed, r_ratio

# Two coefficients have simple closed forms.

print("b_{1,1}(m=1) =", b_coeff(BjkRequest(1, 1, 1)), " (sqrt 2 / 2)")
print("b_{1,1}(m=2) =", b_coeff(BjkRequest(1, 1, 2)), " (pi / 4)")

# A single 2 x 2 matrix has sqrt(2) real eigenvalues on average, and a product
# of 500 4 x 4 matrices is almost surely fully real.

print("E_2(1)   =", expected_real_count(2, 1))
print("E_4(500) =", expected_real_count(4, 500), " V/E =",
      variance_real_count(4, 500) / expected_real_count(4, 500))

# The finite-N fraction approaches c(alpha), with an error that halves when N
# doubles.

for alpha in (0.2, 1.0, 5.0):
    gaps = [expected_real_count(N, round(alpha * N)) / N - c_closed(alpha) for N in (50, 100)]
    print(f"alpha={alpha}: E/N - c at N=50, 100: {gaps[0]:.4f}, {gaps[1]:.4f}")

E = expected_real_count(50, 50)
print("V/E at N=m=50:", variance_real_count(50, 50) / E, " r(1) =", r_ratio(1.0))

# Deep in the table, b_{j,j+l} looks like an error function in l.

for t in (0.2, 0.5, 0.8):
    j = t * 100
    print(f"t={t}: b={b_coeff(BjkRequest(j, j, 200)):.5f}  large-N value={b_asymptotic(t, 0, 1.0):.5f}")

# Moments of the real eigenvalues; the zeroth is the mean count.

print("M_0, M_2 at N=20, m=2:", moment(20, 2, 0), moment(20, 2, 2))
