"""Aggregation of simulated spectra and comparison with the limiting density."""

import math
from dataclasses import dataclass

import numpy as np

from .theory import density_limit, density_mass

__all__ = [
    "SummaryStats",
    "Histogram",
    "summarize_counts",
    "histogram_lambda",
    "compare_to_density",
]


@dataclass(frozen=True)
class SummaryStats:
    """Sample statistics of the real-eigenvalue count.

    ``variance`` uses divisor ``samples - 1``.  ``var_over_mean_se`` is the
    delta-method standard error of ``var_over_mean`` from the sample third
    and fourth central moments.
    """

    samples: int
    mean: float
    variance: float
    std_error_mean: float
    var_over_mean: float
    var_over_mean_se: float


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    dropped: int = 0

    @property
    def widths(self):
        return np.diff(self.edges)

    @property
    def centers(self):
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def total(self):
        return int(self.counts.sum())

    @property
    def empty(self):
        return self.total == 0


def _counts_of(spectra):
    return np.array([s if isinstance(s, (int, np.integer)) else s.count for s in spectra],
                    dtype=float)


def summarize_counts(spectra):
    """Mean, unbiased variance and derived errors of the per-sample counts.

    ``spectra`` holds RealSpectrum objects or plain integer counts.
    """
    x = _counts_of(spectra)
    L = x.size
    if L < 2:
        raise ValueError(f"need at least 2 samples, got {L}")
    mean = math.fsum(x) / L
    d = x - mean
    var = math.fsum(d * d) / (L - 1)
    se = math.sqrt(var / L)
    if mean == 0.0:
        return SummaryStats(L, mean, var, se, math.nan, math.nan)
    ratio = var / mean
    mu2 = math.fsum(d * d) / L
    mu3 = math.fsum(d ** 3) / L
    mu4 = math.fsum(d ** 4) / L
    v = (mu4 - mu2 * mu2) / mean ** 2 - 2.0 * mu2 * mu3 / mean ** 3 + mu2 ** 3 / mean ** 4
    return SummaryStats(L, mean, var, se, ratio, math.sqrt(max(v, 0.0) / L))


def histogram_lambda(spectra, bins, lo=-1.0, hi=1.0):
    """Normalized histogram of all rescaled eigenvalues on ``[lo, hi]``.

    Bins are uniform and left-closed; the last bin also holds ``hi``.
    Values outside the range are dropped and counted in ``dropped``.  The
    density integrates to one over the retained values (all zeros when
    nothing is retained).
    """
    if int(bins) != bins or bins < 1:
        raise ValueError(f"bins must be a positive integer, got {bins!r}")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"need finite lo < hi, got [{lo}, {hi}]")
    lam = np.fromiter((x for s in spectra for x in s.lambdas), dtype=float)
    edges = np.linspace(lo, hi, int(bins) + 1)
    inside = (lam >= lo) & (lam <= hi)
    idx = np.floor((lam[inside] - lo) / (hi - lo) * bins).astype(int)
    idx = np.minimum(idx, int(bins) - 1)
    counts = np.bincount(idx, minlength=int(bins))
    total = counts.sum()
    widths = np.diff(edges)
    density = counts / (total * widths) if total else np.zeros(int(bins))
    return Histogram(edges=edges, counts=counts, density=density,
                     dropped=int(lam.size - inside.sum()))


def compare_to_density(h, alpha):
    """Distance between a histogram and the limiting density for ``alpha``.

    Returns ``(sup_norm, chi_square)``: the largest gap between the
    histogram density and the limiting density at bin centers, and the
    Pearson statistic of the bin counts against the expected counts from
    the limiting bin masses.  Bins with zero expected mass (outside [-1, 1])
    are left out of the Pearson sum.
    """
    sup = float(np.max(np.abs(h.density - density_limit(h.centers, alpha))))
    n = h.total
    chi = 0.0
    for a, b, obs in zip(h.edges[:-1], h.edges[1:], h.counts):
        expected = n * density_mass(a, b, alpha)
        if expected > 0:
            chi += (obs - expected) ** 2 / expected
    return sup, chi
