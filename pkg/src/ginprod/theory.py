"""Limiting (N -> infinity, m = alpha N) real-eigenvalue statistics.

Notation: ``alpha`` is the ratio m/N.  In all t-integrals the substitution
``a = sqrt(alpha / (8 t))`` is used for the scaled error-function argument.

c(alpha)
    limiting fraction of real eigenvalues, E_N / N -> c.
s(alpha)
    limiting value of the normalised double kernel integral.
r(alpha) = 2 - 2 s / c
    limiting variance-to-mean ratio of the real-eigenvalue count.
rho(lambda; alpha)
    limiting density of the Lyapunov-rescaled real eigenvalues on (-1, 1).
"""

import math
from dataclasses import dataclass

import numpy as np

from .specfn import erf, erfc, integrate_unit

__all__ = [
    "TheoryPoint",
    "DensityCurve",
    "c_closed",
    "c_complement",
    "c_integral",
    "c_tail_residual",
    "s_direct",
    "s_alt",
    "r_ratio",
    "theory_point",
    "density_limit",
    "density_curve",
    "density_mass",
]

# erfc(6.2) ~ 1.6e-18; interval probabilities past this many standard
# deviations cannot affect a 1e-14 result
_TAIL_Z = 6.2
_INTEGRAL_TOL = 1e-11
# c_complement switches to the continued-fraction form here (y = 2)
_CF_ALPHA = 32.0
_CF_DEPTH = 100


@dataclass(frozen=True)
class TheoryPoint:
    alpha: float
    c: float
    s: float
    r: float


@dataclass(frozen=True)
class DensityCurve:
    lambdas: np.ndarray
    values: np.ndarray
    alpha: float

    def trapezoid_mass(self):
        return float(np.trapezoid(self.values, self.lambdas))


def _check_alpha(alpha):
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ValueError(f"alpha must be positive and finite, got {alpha!r}")


def c_closed(alpha):
    """Closed form of c(alpha) in elementary functions and erf.

    ``alpha = 0`` is accepted and gives exactly 0.  For alpha >= 8 the value
    is assembled as ``1 - c_complement(alpha)``, which avoids subtracting
    two O(alpha) terms.
    """
    if alpha == 0:
        return 0.0
    _check_alpha(alpha)
    if alpha >= 8.0:
        return 1.0 - c_complement(alpha)
    y = math.sqrt(alpha / 8.0)
    return (1.0 + alpha / 4.0) * erf(y) - alpha / 4.0 + math.sqrt(alpha / (2.0 * math.pi)) * math.exp(-alpha / 8.0)


def c_complement(alpha):
    """``1 - c(alpha)`` without cancellation against 1.

    Past alpha = 32 the two terms of the closed form cancel to relative
    order 16 / alpha^2.  There the continued fraction of erfc at
    y = sqrt(alpha / 8) is used instead: with tails
    ``t_n = y + ((n + 1) / 2) / t_(n+1)`` the difference collapses
    algebraically to ``exp(-y^2) / (sqrt(pi) t_0 t_1 t_2)``.
    """
    if alpha == 0:
        return 1.0
    _check_alpha(alpha)
    y = math.sqrt(alpha / 8.0)
    if alpha < _CF_ALPHA:
        return (1.0 + alpha / 4.0) * erfc(y) - math.sqrt(alpha / (2.0 * math.pi)) * math.exp(-alpha / 8.0)
    t = y
    tails = [0.0, 0.0, 0.0]
    for n in range(_CF_DEPTH, -1, -1):
        t = y + 0.5 * (n + 1) / t
        if n < 3:
            tails[n] = t
    return math.exp(-y * y) / (math.sqrt(math.pi) * tails[0] * tails[1] * tails[2])


def c_integral(alpha, tol=_INTEGRAL_TOL):
    """c(alpha) as the t-integral of erf(sqrt(alpha / 8t)) over (0, 1)."""
    _check_alpha(alpha)
    return integrate_unit(lambda t: erf(np.sqrt(alpha / (8.0 * t))), tol=tol)


def c_tail_residual(alpha):
    """Leading large-alpha prediction for ``1 - c(alpha)``.

    The next correction is relative ``-24 / alpha``, so at alpha = 40 the
    prediction still overshoots by about 55%.
    """
    if alpha < 20:
        raise ValueError(f"large-alpha expansion requires alpha >= 20, got {alpha!r}")
    return 16.0 * math.sqrt(2.0 / math.pi) * math.exp(-alpha / 8.0) / alpha ** 1.5


def _truncation(a):
    # smallest K with (2K - 1) a >= _TAIL_Z, over all nodes
    return int(math.ceil((_TAIL_Z / float(np.min(a)) + 1.0) / 2.0)) + 1


def _interval_prob_squares(t, alpha):
    # sum_k P(2k-1 <= X <= 2k+1)^2 with X ~ N(0, 4t/alpha), folded by symmetry
    a = np.sqrt(alpha / (8.0 * t))
    K = _truncation(a)
    k = np.arange(1, K + 1)
    hi = erfc(np.outer(a, 2 * k - 1))
    lo = erfc(np.outer(a, 2 * k + 1))
    p = 0.5 * (hi - lo)
    p0 = erf(a)
    return p0 * p0 + 2.0 * np.sum(p * p, axis=1)


def s_direct(alpha, tol=_INTEGRAL_TOL):
    """s(alpha) as the t-integral of the summed squared interval probabilities.

    For each t the variable is X ~ Normal(0, 4t/alpha) and the intervals are
    [2k-1, 2k+1], k in Z.  Terms whose lower edge lies more than ~6 standard
    deviations out are dropped.
    """
    _check_alpha(alpha)
    return integrate_unit(lambda t: _interval_prob_squares(t, alpha), tol=tol)


def _erf_product_sum(t, alpha):
    # (1/2) sum_k erf((2k-1)a) [erf((2k-1)a) - erf((2k+1)a)], k from -K to K
    a = np.sqrt(alpha / (8.0 * t))
    K = _truncation(a)
    k = np.arange(-K, K + 1)
    e_lo = erf(np.outer(a, 2 * k - 1))
    e_hi = erf(np.outer(a, 2 * k + 1))
    return 0.5 * np.sum(e_lo * (e_lo - e_hi), axis=1)


def s_alt(alpha, tol=_INTEGRAL_TOL):
    """s(alpha) from the erf-product representation, summed over k unfolded."""
    _check_alpha(alpha)
    return integrate_unit(lambda t: _erf_product_sum(t, alpha), tol=tol)


def r_ratio(alpha):
    """Limiting variance-to-mean ratio ``2 - 2 s(alpha) / c(alpha)``."""
    _check_alpha(alpha)
    return 2.0 - 2.0 * s_direct(alpha) / c_closed(alpha)


def theory_point(alpha):
    _check_alpha(alpha)
    c = c_closed(alpha)
    s = s_direct(alpha)
    return TheoryPoint(alpha=float(alpha), c=c, s=s, r=2.0 - 2.0 * s / c)


def _density(lam, alpha, c, closed):
    lam = np.asarray(lam, dtype=float)
    absl = np.abs(lam)
    inside = absl <= 1.0 if closed else absl < 1.0
    out = np.zeros_like(absl)
    pos = inside & (absl > 0)
    out[pos] = absl[pos] * erf(math.sqrt(alpha / 8.0) / absl[pos]) / c
    return out


def density_limit(lam, alpha):
    """Limiting density of rescaled real eigenvalues.

    ``|lambda| erf(sqrt(alpha/8) / |lambda|) / c(alpha)`` on the open interval
    (-1, 1) and zero elsewhere (including lambda = 0, where it vanishes
    continuously).
    """
    _check_alpha(alpha)
    out = _density(lam, alpha, c_closed(alpha), closed=False)
    if np.ndim(lam) == 0:
        return out.item()
    return out


def density_curve(alpha, grid_points=2001):
    """Tabulate the limiting density on a uniform grid over [-1, 1].

    The endpoints carry the one-sided limits at +-1 so that the trapezoid
    rule sees the continuous profile instead of a jump.
    """
    _check_alpha(alpha)
    if int(grid_points) != grid_points or grid_points < 3 or grid_points % 2 == 0:
        raise ValueError(f"grid_points must be an odd integer >= 3, got {grid_points!r}")
    # mirrored so the grid, and hence the values, are exactly symmetric
    right = np.linspace(0.0, 1.0, int(grid_points) // 2 + 1)
    lam = np.concatenate([-right[:0:-1], right])
    values = _density(lam, alpha, c_closed(alpha), closed=True)
    return DensityCurve(lambdas=lam, values=values, alpha=float(alpha))


def density_mass(lo, hi, alpha):
    """Limiting probability mass of the rescaled real eigenvalues in [lo, hi].

    Uses the scaling identity  int_0^x |l| erf(sqrt(alpha/8)/|l|) dl
    = x^2 c(alpha / x^2) / 2  for 0 < x <= 1, so no quadrature is needed.
    """
    _check_alpha(alpha)
    if not lo <= hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    c = c_closed(alpha)

    def cdf(x):
        # mass of [0, x] for x >= 0, extended oddly
        ax = min(abs(x), 1.0)
        if ax == 0.0:
            return 0.0
        return math.copysign(ax * ax * c_closed(alpha / (ax * ax)) / (2.0 * c), x)

    return cdf(hi) - cdf(lo)
