import math

import mpmath as mp
import numpy as np
import pytest

from ginprod.theory import (
    DensityCurve,
    TheoryPoint,
    c_closed,
    c_complement,
    c_integral,
    c_tail_residual,
    density_curve,
    density_limit,
    density_mass,
    r_ratio,
    s_alt,
    s_direct,
    theory_point,
)

# mpmath quadrature at 40 digits
C_1 = 0.5807214799493322369
S_REF = {0.2: 0.2271710532523121512, 1.0: 0.4511256340763799633, 5.0: 0.8006297445259864470}
LOG_GRID = np.geomspace(1e-3, 1e3, 20)


def _mp_one_minus_c(alpha):
    # closed form at 60 digits; quadrature of the peaked erfc integrand is
    # the less reliable oracle at large alpha
    mp.mp.dps = 60
    a = mp.mpf(alpha)
    return (1 + a / 4) * mp.erfc(mp.sqrt(a / 8)) - mp.sqrt(a / (2 * mp.pi)) * mp.exp(-a / 8)


def test_c_closed_examples():
    assert c_closed(0) == 0.0
    assert abs(c_closed(1.0) - C_1) <= 1e-15
    assert 1 - c_closed(1e3) < 1e-40


def test_c_closed_rejects_negative():
    with pytest.raises(ValueError):
        c_closed(-0.1)


@pytest.mark.parametrize("alpha", [0.1, 1.0, 8.0, 10.0])
def test_c_integral_matches_closed_form(alpha):
    assert abs(c_integral(alpha) - c_closed(alpha)) <= 1e-9


def test_c_small_alpha_limit():
    a = 1e-6
    assert abs(c_integral(a) / math.sqrt(2 * a / math.pi) - 1) <= 0.01


@pytest.mark.parametrize("alpha", [0.5, 8.0, 20.0, 31.9, 32.0, 200.0, 1000.0, 4000.0])
def test_c_complement_relative_accuracy(alpha):
    ref = float(_mp_one_minus_c(alpha))
    assert abs(c_complement(alpha) - ref) <= 1e-12 * ref


def test_c_complement_agrees_with_quadrature():
    mp.mp.dps = 30
    ref = mp.quad(lambda t: mp.erfc(mp.sqrt(mp.mpf(50) / (8 * t))), [0, 0.5, 1])
    assert abs(c_complement(50.0) / float(ref) - 1) <= 1e-12


def test_c_tail_residual_shrinks_like_one_over_alpha():
    # relative deviation of the leading tail term behaves like -24 / alpha
    devs = []
    for a in (40.0, 80.0, 200.0, 1000.0):
        one_minus_c = c_complement(a)
        dev = (one_minus_c - c_tail_residual(a)) / one_minus_c
        assert abs(dev) <= 30.0 / a
        devs.append(abs(dev))
    assert devs == sorted(devs, reverse=True)
    assert abs(1000.0 * devs[-1] - 24.0) <= 1.0


def test_c_tail_residual_requires_large_alpha():
    with pytest.raises(ValueError):
        c_tail_residual(19.9)


@pytest.mark.parametrize("alpha", sorted(S_REF))
def test_s_against_mpmath(alpha):
    assert abs(s_direct(alpha) - S_REF[alpha]) <= 1e-10
    assert abs(s_alt(alpha) - S_REF[alpha]) <= 1e-10


def test_s_limits():
    a = 1e-6
    assert abs(s_direct(a) / math.sqrt(a / math.pi) - 1) <= 0.01
    assert abs(s_direct(100.0) - 1.0) <= 1e-4
    assert s_alt(1e-5) < 3e-3
    assert abs(s_alt(200.0) - 1.0) <= 1e-6


def test_dual_representations_on_log_grid():
    for a in LOG_GRID:
        assert abs(c_closed(a) - c_integral(a)) <= 1e-9
        assert abs(s_direct(a) - s_alt(a)) <= 1e-8


def test_c_and_s_increase_and_stay_bounded():
    # past alpha ~ 100 both round to 1.0 in double precision
    grid = np.geomspace(1e-3, 1e2, 20)
    c = [c_closed(a) for a in grid]
    s = [s_direct(a) for a in grid]
    assert all(x < y for x, y in zip(c, c[1:]))
    assert all(x < y for x, y in zip(s, s[1:]))
    assert all(0 < v < 1 for v in c)
    assert all(0 < v <= 1 for v in s)


def test_r_ratio_examples():
    assert abs(r_ratio(1.0) - 0.45) <= 0.01
    assert abs(r_ratio(1e-4) - (2 - math.sqrt(2))) <= 2e-2
    assert 0 <= r_ratio(100.0) <= 1e-3


def test_r_ratio_refined_small_alpha():
    # the refinement study behind the 2e-2 tolerance: the gap is about 1e-3
    assert abs(r_ratio(1e-4) - (2 - math.sqrt(2))) <= 2e-3


def test_r_decreases_across_grid():
    r = [r_ratio(a) for a in np.geomspace(1e-3, 1e2, 12)]
    assert all(x > y for x, y in zip(r, r[1:]))
    assert all(v >= 0 for v in r)


def test_theory_point_consistency():
    tp = theory_point(2.0)
    assert isinstance(tp, TheoryPoint)
    assert abs(tp.r - (2 - 2 * tp.s / tp.c)) <= 1e-12
    assert tp.c == c_closed(2.0)


@pytest.mark.parametrize("fn", [c_integral, s_direct, s_alt, r_ratio, theory_point])
def test_nonpositive_alpha_rejected(fn):
    for bad in (0.0, -1.0, float("inf"), float("nan")):
        with pytest.raises(ValueError):
            fn(bad)


def test_density_examples():
    assert density_limit(0.0, 1.0) == 0.0
    assert density_limit(0.3, 1.0) == density_limit(-0.3, 1.0)
    assert abs(density_limit(0.5, 200.0) - 0.5) <= 1e-3
    assert density_limit(1.0, 1.0) == 0.0
    assert density_limit(-1.5, 1.0) == 0.0


def test_density_vectorized_and_nonnegative():
    lam = np.linspace(-2, 2, 101)
    vals = density_limit(lam, 3.0)
    assert vals.shape == lam.shape
    assert np.all(vals >= 0)


@pytest.mark.parametrize("alpha", [0.2, 1.0, 5.0, 200.0])
def test_density_curve_normalized(alpha):
    curve = density_curve(alpha, 2001)
    assert isinstance(curve, DensityCurve)
    assert abs(curve.trapezoid_mass() - 1.0) <= 1e-6
    assert np.array_equal(curve.values, curve.values[::-1])
    assert curve.values[1000] == 0.0 and curve.lambdas[1000] == 0.0


def test_density_curve_small_alpha_needs_finer_grid():
    # the profile bends on the scale sqrt(alpha/8) ~ 0.035 at alpha = 0.01, so
    # 2001 nodes leave a second-order trapezoid error near 2e-6
    errs = [abs(density_curve(0.01, n).trapezoid_mass() - 1.0) for n in (2001, 4001, 8001)]
    assert errs[1] <= 1e-6
    assert 3.0 <= errs[0] / errs[1] <= 5.0 and 3.0 <= errs[1] / errs[2] <= 5.0


def test_density_small_alpha_is_flat():
    curve = density_curve(0.01, 2001)
    band = (np.abs(curve.lambdas) >= 0.1) & (np.abs(curve.lambdas) <= 0.9)
    assert np.max(np.abs(curve.values[band] - 0.5)) <= 0.02


def test_density_monotone_in_abs_lambda():
    curve = density_curve(5.0, 2001)
    right = curve.values[1000:]
    assert np.all(np.diff(right) > 0)


@pytest.mark.parametrize("n", [2, 4, 1, 0, 2.5])
def test_density_curve_rejects_bad_grid(n):
    with pytest.raises(ValueError):
        density_curve(1.0, n)


def test_density_mass_matches_quadrature():
    mp.mp.dps = 30
    c = C_1
    ref = mp.quad(lambda x: x * mp.erf(mp.sqrt(1.0 / 8) / x), [0.2, 0.5]) / c
    assert abs(density_mass(0.2, 0.5, 1.0) - float(ref)) <= 1e-13
    assert abs(density_mass(-1, 1, 3.0) - 1.0) <= 1e-14
    assert density_mass(-0.4, -0.1, 2.0) == pytest.approx(density_mass(0.1, 0.4, 2.0), rel=1e-14)
    assert density_mass(1.0, 3.0, 2.0) == 0.0
