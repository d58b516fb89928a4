"""Monte Carlo driver: one independent stream and one spectrum per sample."""

import os
from concurrent.futures import ThreadPoolExecutor

from ..errors import NumericalError
from .sampling import StreamFactory, draw_factors, product_of
from .schur import schur_arrays
from .spectrum import extract_real_spectrum, factored_real_spectrum

__all__ = ["SimulationRun", "simulate_sample", "run_simulation", "default_threads"]

THREADS_ENV = "GINPROD_THREADS"


class SimulationRun(list):
    """Spectra of the retained samples, ordered by sample index.

    ``excluded`` counts samples dropped because their Schur computation
    failed, and ``failures`` holds the corresponding errors.
    """

    def __init__(self, spectra, failures=()):
        super().__init__(spectra)
        self.failures = tuple(failures)

    @property
    def excluded(self):
        return len(self.failures)


def default_threads():
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    threads = int(raw)
    if threads < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return threads


def simulate_sample(config, index, streams=None):
    """Spectrum of sample ``index`` under ``config``."""
    stream = streams(index) if streams is not None else StreamFactory(config.seed)(index)
    factors = draw_factors(config.N, config.m, stream)
    if config.resolved_method() == "factored":
        return factored_real_spectrum(factors, max_passes=config.schur_max_sweeps,
                                      sample_index=index)
    P, log_scale = product_of(factors, config.rescale_period)
    _, T = schur_arrays(P, tol=config.schur_tol, max_sweeps=config.schur_max_sweeps)
    return extract_real_spectrum(T, log_scale, config.m, sample_index=index)


def _chunk(config, streams, lo, hi):
    spectra, failures = [], []
    for i in range(lo, hi):
        try:
            spectra.append(simulate_sample(config, i, streams))
        except NumericalError as exc:
            exc.context.setdefault("seed", config.seed)
            exc.context.setdefault("sample_index", i)
            failures.append(exc)
    return spectra, failures


def run_simulation(config, threads=None):
    """Simulate ``config.samples`` independent products.

    Samples are split into contiguous chunks, one per thread; results are
    concatenated in sample order, so the output does not depend on
    ``threads`` (default from the GINPROD_THREADS environment variable, else 1).
    """
    threads = default_threads() if threads is None else int(threads)
    if threads < 1:
        raise ValueError(f"threads must be positive, got {threads!r}")
    streams = StreamFactory(config.seed)
    L = config.samples
    threads = min(threads, L)
    bounds = [(L * t // threads, L * (t + 1) // threads) for t in range(threads)]
    if threads == 1:
        parts = [_chunk(config, streams, 0, L)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _chunk(config, streams, *b), bounds))
    spectra = [s for part, _ in parts for s in part]
    failures = [f for _, part in parts for f in part]
    return SimulationRun(spectra, failures)
