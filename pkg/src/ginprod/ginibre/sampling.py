"""Gaussian factors and their renormalized product.

Every sample draws from its own counter-based stream: a Philox generator
keyed by the run seed whose counter starts at ``(0, 0, 0, sample_index)``.
Philox advances the first counter word, so streams for different samples
never overlap and a sample's draws do not depend on which worker made them.
"""

import math
import threading

import numpy as np

from ..errors import NumericalError
from .types import ScaledProduct, SquareMatrix

__all__ = ["sample_stream", "StreamFactory", "sample_ginibre", "draw_factors", "product_scaled"]


def sample_stream(seed, index):
    """Fresh generator for sample ``index`` of a run seeded with ``seed``."""
    return np.random.Generator(np.random.Philox(key=int(seed), counter=[0, 0, 0, int(index)]))


class StreamFactory:
    """Reusable source of per-sample streams, one bit generator per thread.

    Resetting the state of an existing Philox is several times cheaper than
    constructing a new one and yields the same draws as
    :func:`sample_stream`.
    """

    def __init__(self, seed):
        self.seed = int(seed)
        self._key = np.random.Philox(key=self.seed).state["state"]["key"]
        self._local = threading.local()

    def __call__(self, index):
        loc = self._local
        if not hasattr(loc, "gen"):
            loc.bitgen = np.random.Philox(key=self.seed)
            loc.gen = np.random.Generator(loc.bitgen)
        loc.bitgen.state = {
            "bit_generator": "Philox",
            "state": {"counter": np.array([0, 0, 0, index], dtype=np.uint64), "key": self._key},
            "buffer": np.zeros(4, dtype=np.uint64),
            "buffer_pos": 4,
            "has_uint32": 0,
            "uinteger": 0,
        }
        return loc.gen


def _gaussian(N, stream):
    return stream.normal(0.0, 1.0 / math.sqrt(N), size=(N, N))


def sample_ginibre(N, stream):
    """N x N matrix of independent Normal(0, 1/N) entries."""
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    return SquareMatrix(dim=int(N), values=_gaussian(int(N), stream))


def draw_factors(N, m, stream):
    """The m factors X_1, ..., X_m in draw order."""
    return [_gaussian(N, stream) for _ in range(m)]


def _renormalize(P, log_scale):
    peak = float(np.max(np.abs(P)))
    if peak == 0.0 or not math.isfinite(peak):
        raise NumericalError("product_scaled: degenerate partial product", peak=peak)
    return P / peak, log_scale + math.log(peak)


def product_of(factors, period):
    """Left-to-right product with renormalization every ``period`` factors."""
    P = None
    log_scale = 0.0
    for i, X in enumerate(factors, start=1):
        P = X.copy() if P is None else P @ X
        if i % period == 0:
            P, log_scale = _renormalize(P, log_scale)
    return P, log_scale


def product_scaled(N, m, stream, period=1, factor=None):
    """Product X_1 X_2 ... X_m of independent Normal(0, 1/N) factors.

    After every ``period``-th factor the running product is divided by its
    largest absolute entry and the log of that entry is added to
    ``log_scale``.  ``factor``, if given, is called as ``factor(N, stream)``
    in place of the Gaussian draw (a hook for deterministic tests).
    """
    if int(m) != m or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    if int(period) != period or period < 1:
        raise ValueError(f"period must be a positive integer, got {period!r}")
    draw = factor if factor is not None else _gaussian
    factors = (np.asarray(draw(N, stream), dtype=float) for _ in range(int(m)))
    P, log_scale = product_of(factors, int(period))
    return ScaledProduct(matrix=SquareMatrix(dim=int(N), values=P), log_scale=log_scale)
