"""Exact finite-N real-eigenvalue statistics through the b_{j,k} coefficients.

The coefficient is the Mellin-Barnes integral

    b_{j,k} = -1/(2 pi i) int_C F(s) ds / s,
    F(s) = (Gamma(j - 1/2 + s) Gamma(k - s) / (Gamma(j - 1/2) Gamma(k)))^m,

with C a vertical line crossing the real axis in (1/2 - j, 0).  Shifting the
line across the simple pole at s = 0 (residue F(0) = 1) gives the equivalent

    b_{j,k} = 1 - 1/(2 pi i) int_{Re s = sigma} F(s) ds / s,   0 < sigma < k.

The automatic contour runs through the real saddle of |F(s)/s| on whichever
side of the origin has the smaller peak, so large-m integrals never cancel
catastrophically.  On a vertical line the integrand is conjugate symmetric
and peaks at Im s = 0.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import polygamma

from .errors import NumericalError
from .specfn import erf, gauss_legendre, log_gamma_complex

__all__ = [
    "BjkRequest",
    "ContourSpec",
    "ExactReport",
    "b_coeff",
    "b_asymptotic",
    "auto_contour",
    "b_table",
    "expected_real_count",
    "variance_real_count",
    "moment",
    "rescaled_moment",
    "exact_report",
]

# truncate the contour where |F/s| has fallen below this fraction of its peak
_EDGE_RATIO = 1e-18
_LOG_EDGE = math.log(_EDGE_RATIO)
_MAX_HEIGHT = 1e7
_PANELS = 24
_NODES = 20
# keep the saddle search this far from the poles bounding each side
_POLE_GAP = 1e-12
_IMAG_RTOL = 1e-9
_IMAG_ATOL = 1e-12


@dataclass(frozen=True)
class BjkRequest:
    j: float
    k: float
    m: int

    def __post_init__(self):
        if not (math.isfinite(self.j) and self.j >= 1):
            raise ValueError(f"j must be >= 1, got {self.j!r}")
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValueError(f"k must be > 0, got {self.k!r}")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")


@dataclass(frozen=True)
class ContourSpec:
    """Vertical contour Re s = offset, truncated to |Im s| <= half_height.

    Each half of the line is cut into ``panels`` Gauss-Legendre panels whose
    edges are sinh-graded, fine near the real axis and coarse far out.
    A positive offset means the line passes right of the pole at 0.
    """

    offset: float
    half_height: float
    panels: int = _PANELS
    nodes_per_panel: int = _NODES

    def __post_init__(self):
        if not math.isfinite(self.offset) or self.offset == 0:
            raise ValueError(f"offset must be finite and nonzero, got {self.offset!r}")
        if not (self.half_height > 0 and math.isfinite(self.half_height)):
            raise ValueError(f"half_height must be positive, got {self.half_height!r}")
        if int(self.panels) != self.panels or self.panels < 1:
            raise ValueError(f"panels must be a positive integer, got {self.panels!r}")
        if int(self.nodes_per_panel) != self.nodes_per_panel or self.nodes_per_panel < 1:
            raise ValueError(f"nodes_per_panel must be a positive integer, got {self.nodes_per_panel!r}")


@dataclass(frozen=True)
class ExactReport:
    N: int
    m: int
    expected_count: float
    variance: float
    moments: tuple

    @property
    def var_over_mean(self):
        return self.variance / self.expected_count


def _check_strip(req, sigma):
    if not (0.5 - req.j < sigma < req.k) or sigma == 0:
        raise ValueError(
            f"contour offset {sigma!r} outside the strip ({0.5 - req.j}, 0) U (0, {req.k})")


def _log_abs_real(req, sigma):
    # log |F(sigma) / sigma| on the real axis
    a, k, m = req.j - 0.5, req.k, req.m
    phi = math.lgamma(a + sigma) + math.lgamma(k - sigma) - math.lgamma(a) - math.lgamma(k)
    return m * phi - math.log(abs(sigma))


def _curvature(req, sigma):
    a, k = req.j - 0.5, req.k
    return req.m * float(polygamma(1, a + sigma) + polygamma(1, k - sigma)) + 1.0 / sigma ** 2


def _log_integrand(req, s):
    # log(F(s) / s) for complex s, vectorized
    a, k, m = req.j - 0.5, req.k, req.m
    norm = math.lgamma(a) + math.lgamma(k)
    phi = log_gamma_complex(a + s) + log_gamma_complex(k - s) - norm
    return m * phi - np.log(s)


def _saddle(req, lo, hi):
    width = hi - lo
    res = minimize_scalar(lambda x: _log_abs_real(req, x),
                          bounds=(lo + _POLE_GAP * width, hi - _POLE_GAP * width),
                          method="bounded", options={"xatol": 1e-10 * width})
    return float(res.x), float(res.fun)


def _edge_height(req, sigma, peak, start):
    y = start
    while True:
        val = _log_integrand(req, complex(sigma, y)).real
        if val - peak < _LOG_EDGE:
            return y
        y *= 1.5
        if y > _MAX_HEIGHT:
            raise NumericalError("b_coeff: integrand does not decay along the contour",
                                 j=req.j, k=req.k, m=req.m, offset=sigma)


def auto_contour(req):
    """Contour through the lower of the two real saddles of |F(s)/s|.

    On each side of the origin the real-axis profile of log|F/s| is convex,
    so its minimum is the saddle point of the vertical integral.  Both sides
    are searched and the one with the smaller integral scale is used.
    """
    left = _saddle(req, 0.5 - req.j, 0.0)
    right = _saddle(req, 0.0, req.k)
    best = None
    for sigma, peak in (left, right):
        width = 1.0 / math.sqrt(_curvature(req, sigma))
        scale = peak + math.log(width)
        if best is None or scale < best[0]:
            best = (scale, sigma, peak, width)
    _, sigma, peak, width = best
    height = _edge_height(req, sigma, peak, width)
    return ContourSpec(offset=sigma, half_height=height)


def _half_line_nodes(contour, width):
    # sinh-graded panel edges on [0, T], Gauss-Legendre nodes inside each
    T = contour.half_height
    U = math.asinh(T / width)
    edges = width * np.sinh(np.linspace(0.0, U, contour.panels + 1))
    edges[-1] = T
    ys, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        rule = gauss_legendre(contour.nodes_per_panel, lo, hi)
        ys.append(rule.nodes)
        ws.append(rule.weights)
    return np.concatenate(ys), np.concatenate(ws)


def _contour_integral(req, contour):
    # J = 1/(2 pi i) int F(s)/s ds along Re s = offset, returned as complex
    sigma = contour.offset
    _check_strip(req, sigma)
    peak = _log_abs_real(req, sigma)
    edge = _log_integrand(req, complex(sigma, contour.half_height)).real
    if edge - peak >= _LOG_EDGE:
        raise NumericalError("b_coeff: truncation bound not met at half_height",
                             j=req.j, k=req.k, m=req.m, offset=sigma,
                             half_height=contour.half_height, edge_log_ratio=edge - peak)
    width = 1.0 / math.sqrt(_curvature(req, sigma))
    y, w = _half_line_nodes(contour, width)
    y = np.concatenate([-y[::-1], y])
    w = np.concatenate([w[::-1], w])
    vals = np.exp(_log_integrand(req, sigma + 1j * y))
    return complex(np.dot(w, vals)) / (2.0 * math.pi)


def b_coeff(req, contour=None):
    """Evaluate b_{j,k} for ``req`` by quadrature along a vertical contour.

    Parameters
    ----------
    req : BjkRequest
    contour : ContourSpec, optional
        Explicit contour.  Offsets in (1/2 - j, 0) use the integral as is;
        offsets in (0, k) add back the residue at the origin.  By default
        :func:`auto_contour` picks the line.

    Raises
    ------
    ValueError
        Offset outside the analytic strip.
    NumericalError
        The integrand at +-half_height is not below 1e-18 of its peak, or the
        assembled integral has a non-negligible imaginary part.
    """
    if contour is None:
        return _b_cached(req.j, req.k, req.m)
    return _b_eval(req, contour)


def _b_eval(req, contour):
    J = _contour_integral(req, contour)
    if abs(J.imag) > _IMAG_RTOL * abs(J.real) + _IMAG_ATOL:
        raise NumericalError("b_coeff: imaginary residual too large",
                             j=req.j, k=req.k, m=req.m, imag=J.imag, real=J.real)
    if contour.offset < 0:
        return -J.real
    return 1.0 - J.real


@lru_cache(maxsize=500_000)
def _b_cached(j, k, m):
    req = BjkRequest(j, k, m)
    return _b_eval(req, auto_contour(req))


def b_asymptotic(t, l, alpha):
    """Large-N value of b_{j, j+l} at j = tN/2, m = alpha N."""
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0, 1), got {t!r}")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    return 0.5 * (1.0 + erf((2 * l + 1) * math.sqrt(alpha / (8.0 * t))))


def _check_nm(N, m):
    if int(N) != N or N < 2 or N % 2:
        raise ValueError(f"N must be an even integer >= 2, got {N!r}")
    if int(m) != m or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    return int(N), int(m)


def b_table(n, m):
    """Matrix ``B[a-1, c-1] = b_{a,c}`` for integer indices 1 <= a, c <= n."""
    B = np.empty((n, n))
    for a in range(1, n + 1):
        for c in range(1, n + 1):
            B[a - 1, c - 1] = _b_cached(float(a), float(c), int(m))
    return B


def _expected_from_table(B):
    return 2.0 * math.fsum(np.diag(B)) - 2.0 * math.fsum(np.diag(B, -1))


def expected_real_count(N, m):
    """Mean number of real eigenvalues of a product of m real Ginibre N x N matrices."""
    N, m = _check_nm(N, m)
    n = N // 2
    diag = [_b_cached(float(j), float(j), m) for j in range(1, n + 1)]
    sub = [_b_cached(float(j + 1), float(j), m) for j in range(1, n)]
    return 2.0 * math.fsum(diag) - 2.0 * math.fsum(sub)


def variance_real_count(N, m):
    """Variance of the number of real eigenvalues.

    Assembled from the full table of b_{a,c}, 1 <= a, c <= N/2, as twice the
    mean minus twice the double integral of the squared kernel, the latter
    reduced to three quadratic forms in the table.
    """
    N, m = _check_nm(N, m)
    n = N // 2
    B = b_table(n, m)
    E = _expected_from_table(B)
    s1 = float(np.sum(B * B.T))
    A = B[1:, :-1]
    s2 = float(np.sum(A * A.T))
    s3 = float(np.sum(B.T[:-1, :] * B[1:, :]))
    return 2.0 * E - 2.0 * (2.0 * s1 + 2.0 * s2 - 4.0 * s3)


def _moment_sum(N, m, shift, log_prefactor):
    # sum over the four families of (gamma ratio)^m b terms for index shift
    n = N // 2
    lg = math.lgamma
    first = []
    for j in range(n):
        r1 = m * (lg(j + shift + 1.0) - lg(j + 1.0)) + log_prefactor
        r2 = m * (lg(j + shift + 0.5) - lg(j + 0.5)) + log_prefactor
        first.append(math.exp(r1) * _b_cached(j + 1.0, j + shift + 1.0, m))
        first.append(math.exp(r2) * _b_cached(j + shift + 1.0, j + 1.0, m))
    second = []
    for j in range(n - 1):
        r1 = m * (lg(j + shift + 1.0) - lg(j + 1.0)) + log_prefactor
        r2 = m * (lg(j + shift + 1.5) - lg(j + 1.5)) + log_prefactor
        second.append(math.exp(r1) * _b_cached(j + 2.0, j + shift + 1.0, m))
        second.append(math.exp(r2) * _b_cached(j + shift + 2.0, j + 1.0, m))
    return math.fsum(first) - math.fsum(second)


def _check_order(order):
    if int(order) != order or order < 0:
        raise ValueError(f"order must be a nonnegative integer, got {order!r}")
    return int(order)


def moment(N, m, order):
    """Moment of the one-point function of real eigenvalues, int x^order R(x) dx.

    Odd orders vanish by symmetry.  Order 0 goes through the general sums
    and agrees with :func:`expected_real_count`.
    """
    N, m = _check_nm(N, m)
    order = _check_order(order)
    if order % 2:
        return 0.0
    k = order // 2
    return _moment_sum(N, m, float(k), m * k * math.log(2.0 / N))


def rescaled_moment(N, m, order):
    """Moment of the rescaled real eigenvalues lambda = sign(x) |x|^(1/m).

    The index shift is order / (2m), generally not an integer.  Order 0 runs
    through the same sums and reproduces the expected count.
    """
    N, m = _check_nm(N, m)
    order = _check_order(order)
    if order % 2:
        return 0.0
    k = order // 2
    return _moment_sum(N, m, k / m, k * math.log(2.0 / N))


def exact_report(N, m, max_moment=0):
    N, m = _check_nm(N, m)
    max_moment = _check_order(max_moment)
    if max_moment % 2:
        raise ValueError(f"max_moment must be even, got {max_moment!r}")
    E = expected_real_count(N, m)
    V = variance_real_count(N, m)
    moments = tuple((p, moment(N, m, p)) for p in range(max_moment + 1))
    return ExactReport(N=N, m=m, expected_count=E, variance=V, moments=moments)
