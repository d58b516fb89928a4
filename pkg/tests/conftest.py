import time

import pytest

from ginprod.ginibre import SimulationConfig, run_simulation

FIG_SEED = 20240601


@pytest.fixture(scope="session")
def run_50_50():
    """N = m = 50, 200 samples; shared by the tests that need this run.

    The wall time is kept on the run as ``elapsed``.
    """
    cfg = SimulationConfig(N=50, m=50, samples=200, seed=FIG_SEED)
    t0 = time.perf_counter()
    run = run_simulation(cfg, threads=4)
    run.elapsed = time.perf_counter() - t0
    return run
