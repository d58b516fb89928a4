"""Value types for the Monte Carlo engine."""

from dataclasses import dataclass

import numpy as np

METHODS = ("auto", "product", "factored")


@dataclass(frozen=True)
class SquareMatrix:
    """Dense real square matrix stored row-major in ``values``."""

    dim: int
    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape != (self.dim, self.dim) or self.dim < 1:
            raise ValueError(f"expected a {self.dim}x{self.dim} matrix, got shape {v.shape}")
        if not np.isfinite(v).all():
            raise ValueError("matrix entries must be finite")
        object.__setattr__(self, "values", v)

    @classmethod
    def of(cls, values):
        v = np.asarray(values, dtype=float)
        if v.ndim != 2:
            raise ValueError(f"expected a 2-D array, got {v.ndim}-D")
        return cls(dim=v.shape[0], values=v)


@dataclass(frozen=True)
class ScaledProduct:
    """A matrix product represented as ``exp(log_scale) * matrix``."""

    matrix: SquareMatrix
    log_scale: float


@dataclass(frozen=True)
class RealSpectrum:
    sample_index: int
    count: int
    lambdas: tuple

    def __post_init__(self):
        if self.count != len(self.lambdas):
            raise ValueError("count must equal the number of lambdas")


@dataclass(frozen=True)
class SimulationConfig:
    """Parameters of one Monte Carlo run.

    ``method`` selects how each sample's spectrum is computed: "product"
    multiplies the factors out (renormalizing every ``rescale_period``
    factors) and runs the real Schur iteration on the result; "factored"
    iterates on the factors directly and never forms the product; "auto"
    uses "product" for m = 1 and "factored" otherwise.
    """

    N: int
    m: int
    samples: int
    seed: int
    rescale_period: int = 1
    schur_tol: float = 1e-12
    schur_max_sweeps: int = 1000
    method: str = "auto"

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2 or self.N % 2:
            raise ValueError(f"N must be an even integer >= 2, got {self.N!r}")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        if int(self.samples) != self.samples or self.samples < 1:
            raise ValueError(f"samples must be a positive integer, got {self.samples!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if int(self.rescale_period) != self.rescale_period or self.rescale_period < 1:
            raise ValueError(f"rescale_period must be >= 1, got {self.rescale_period!r}")
        if not 0 < self.schur_tol <= 1e-6:
            raise ValueError(f"schur_tol must lie in (0, 1e-6], got {self.schur_tol!r}")
        if int(self.schur_max_sweeps) != self.schur_max_sweeps or self.schur_max_sweeps < 1:
            raise ValueError(f"schur_max_sweeps must be >= 1, got {self.schur_max_sweeps!r}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")

    @classmethod
    def from_alpha(cls, N, alpha, samples, seed, **kw):
        """Config with m = round(alpha N), at least 1."""
        if not alpha > 0:
            raise ValueError(f"alpha must be positive, got {alpha!r}")
        return cls(N=N, m=max(1, int(round(alpha * N))), samples=samples, seed=seed, **kw)

    def resolved_method(self):
        if self.method != "auto":
            return self.method
        return "product" if self.m == 1 else "factored"
