"""Real-eigenvalue statistics of products of real Ginibre matrices.

Three independent routes to the same numbers: limiting formulas in the
regime m = alpha N (:mod:`ginprod.theory`), exact finite-N sums of
Mellin-Barnes coefficients (:mod:`ginprod.exact`), and Monte Carlo
simulation (:mod:`ginprod.ginibre`, summarized by :mod:`ginprod.stats`).
"""

__version__ = "0.1.0"

from .errors import NumericalError

__all__ = ["NumericalError", "__version__"]
