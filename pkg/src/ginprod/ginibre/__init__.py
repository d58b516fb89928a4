"""Monte Carlo sampling of products of real Ginibre matrices and the real
parts of their spectra."""

from .sampling import StreamFactory, draw_factors, product_scaled, sample_ginibre, sample_stream
from .schur import balance, hessenberg, real_schur
from .simulate import SimulationRun, default_threads, run_simulation, simulate_sample
from .spectrum import block_structure, extract_real_spectrum, factored_real_spectrum
from .types import RealSpectrum, ScaledProduct, SimulationConfig, SquareMatrix

__all__ = [
    "SquareMatrix",
    "ScaledProduct",
    "RealSpectrum",
    "SimulationConfig",
    "SimulationRun",
    "StreamFactory",
    "sample_stream",
    "sample_ginibre",
    "draw_factors",
    "product_scaled",
    "balance",
    "hessenberg",
    "real_schur",
    "block_structure",
    "extract_real_spectrum",
    "factored_real_spectrum",
    "simulate_sample",
    "run_simulation",
    "default_threads",
]
