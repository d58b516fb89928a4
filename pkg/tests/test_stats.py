import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ginprod.exact import expected_real_count, variance_real_count
from ginprod.ginibre import RealSpectrum, SimulationConfig, run_simulation
from ginprod.stats import Histogram, compare_to_density, histogram_lambda, summarize_counts
from ginprod.theory import density_limit, density_mass


def _spec(*lams, index=0):
    return RealSpectrum(sample_index=index, count=len(lams), lambdas=tuple(lams))


def test_summary_examples():
    st_ = summarize_counts([2, 2, 2])
    assert st_.mean == 2.0 and st_.variance == 0.0 and st_.var_over_mean == 0.0
    st_ = summarize_counts([0, 4])
    assert st_.mean == 2.0 and st_.variance == 8.0
    assert st_.std_error_mean == 2.0


def test_summary_accepts_spectra():
    st_ = summarize_counts([_spec(0.1, 0.2), _spec(), _spec(0.3, -0.3, 0.5, 0.6)])
    assert st_.samples == 3 and st_.mean == 2.0


def test_summary_needs_two_samples():
    with pytest.raises(ValueError):
        summarize_counts([4])


def test_summary_zero_mean():
    st_ = summarize_counts([0, 0, 0])
    assert st_.mean == 0.0 and math.isnan(st_.var_over_mean)


@settings(max_examples=60)
@given(st.lists(st.integers(0, 50), min_size=2, max_size=40), st.randoms())
def test_summary_permutation_invariant(counts, rnd):
    shuffled = list(counts)
    rnd.shuffle(shuffled)
    a, b = summarize_counts(counts), summarize_counts(shuffled)
    assert a.mean == b.mean and a.variance == b.variance
    assert a.var_over_mean_se == b.var_over_mean_se or (math.isnan(a.var_over_mean_se)
                                                        and math.isnan(b.var_over_mean_se))


def test_summary_matches_numpy():
    x = np.random.default_rng(0).integers(0, 20, size=101)
    st_ = summarize_counts(list(x))
    assert st_.mean == pytest.approx(x.mean(), rel=1e-14)
    assert st_.variance == pytest.approx(x.var(ddof=1), rel=1e-13)


def test_histogram_single_value():
    h = histogram_lambda([_spec(0.5)], 2, 0.0, 1.0)
    assert list(h.counts) == [0, 1]
    assert np.array_equal(h.density, [0.0, 2.0])
    assert h.dropped == 0


def test_histogram_empty_input():
    h = histogram_lambda([], 4)
    assert isinstance(h, Histogram)
    assert h.empty and np.all(h.counts == 0) and np.all(h.density == 0)


def test_histogram_bin_edges_convention():
    h = histogram_lambda([_spec(-1.0, 0.0, 1.0, 1.2, -1.01)], 2)
    # left-closed bins, the last one also closed on the right
    assert list(h.counts) == [1, 2]
    assert h.dropped == 2


def test_histogram_rejects_bad_range():
    for args in ((0,), (2, 1.0, 1.0), (2, 1.0, -1.0), (2.5,)):
        with pytest.raises(ValueError):
            histogram_lambda([_spec(0.1)], *args)


@settings(max_examples=60)
@given(st.lists(st.lists(st.floats(-1.5, 1.5), max_size=6), min_size=1, max_size=10),
       st.integers(1, 30))
def test_histogram_mass_conservation(samples, bins):
    spectra = [_spec(*lams) for lams in samples]
    h = histogram_lambda(spectra, bins)
    n_all = sum(len(lams) for lams in samples)
    assert h.total + h.dropped == n_all
    if not h.empty:
        assert abs(np.sum(h.density * h.widths) - 1.0) <= 1e-12


def _binned_limit(alpha, bins):
    edges = np.linspace(-1, 1, bins + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return Histogram(edges=edges, counts=np.full(bins, 1000), density=density_limit(centers, alpha))


def test_compare_exact_histogram_has_zero_sup():
    sup, _ = compare_to_density(_binned_limit(1.0, 20), 1.0)
    assert sup == 0.0


def test_compare_shift_raises_sup():
    h = _binned_limit(2.0, 20)
    delta = 0.07
    bumped = Histogram(edges=h.edges, counts=h.counts, density=h.density + delta * (np.arange(20) == 3))
    sup, _ = compare_to_density(bumped, 2.0)
    assert sup >= delta


def test_compare_chi_square_zero_for_expected_counts():
    edges = np.linspace(-1, 1, 11)
    masses = np.array([density_mass(a, b, 1.0) for a, b in zip(edges[:-1], edges[1:])])
    counts = 1e6 * masses
    h = Histogram(edges=edges, counts=counts, density=masses / np.diff(edges))
    _, chi = compare_to_density(h, 1.0)
    assert chi <= 1e-12


def test_compare_skips_bins_outside_support():
    h = histogram_lambda([_spec(0.2, -0.4, 0.9)], 8, -2.0, 2.0)
    sup, chi = compare_to_density(h, 1.0)
    assert math.isfinite(sup) and math.isfinite(chi)


def test_single_matrix_var_over_mean():
    cfg = SimulationConfig(N=20, m=1, samples=10_000, seed=7)
    st_ = summarize_counts(run_simulation(cfg, threads=4))
    assert abs(st_.var_over_mean - (2 - math.sqrt(2))) <= 3 * st_.var_over_mean_se
    exact = variance_real_count(20, 1) / expected_real_count(20, 1)
    assert abs(st_.var_over_mean - exact) <= 3 * st_.var_over_mean_se


def test_mean_matches_exact_at_N50(run_50_50):
    st_ = summarize_counts(run_50_50)
    E = expected_real_count(50, 50)
    assert abs(st_.mean / 50 - E / 50) <= 3 * st_.std_error_mean / 50


def test_histogram_replica_chi_square_finite(run_50_50):
    h = histogram_lambda(run_50_50, 25)
    sup, chi = compare_to_density(h, 1.0)
    assert sup <= 0.12
    assert math.isfinite(chi) and chi > 0
