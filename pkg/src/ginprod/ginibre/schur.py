"""Real Schur factorization by Householder Hessenberg reduction and the
Francis implicit double-shift QR iteration.

The iteration works on the whole matrix (not just the active window) and
accumulates the orthogonal factor, so on return ``A = Q T Q^T`` with ``T``
quasi-upper-triangular.  Deflated subdiagonal entries are set to exactly
zero, which makes the block structure of ``T`` unambiguous: a nonzero
``T[i+1, i]`` marks a 2 x 2 block.  Such blocks are left as they are, whether
their eigenvalues are a complex pair or two reals.
"""

import math

import numpy as np
from numba import njit

from ..errors import NumericalError
from .types import SquareMatrix

__all__ = ["balance", "hessenberg", "real_schur", "schur_arrays"]

# exceptional shift every this many iterations without a deflation
_EXCEPTIONAL_EVERY = 10
_RADIX = 2.0


@njit(cache=True, nogil=True)
def _house(x):
    # v (v[0] = 1) and beta with (I - beta v v^T) x = -+ ||x|| e_1
    alpha = x[0]
    sigma = 0.0
    for i in range(1, x.size):
        sigma += x[i] * x[i]
    v = x.copy()
    v[0] = 1.0
    if sigma == 0.0:
        return v, 0.0
    mu = math.sqrt(alpha * alpha + sigma)
    v0 = alpha - mu if alpha <= 0 else -sigma / (alpha + mu)
    beta = 2.0 * v0 * v0 / (sigma + v0 * v0)
    for i in range(1, x.size):
        v[i] = x[i] / v0
    return v, beta


@njit(cache=True, nogil=True)
def _reflect_rows(M, k, v, beta, c0, c1):
    # M[k:k+len(v), c0:c1] <- (I - beta v v^T) M[k:k+len(v), c0:c1]
    nv = v.size
    for j in range(c0, c1):
        s = 0.0
        for i in range(nv):
            s += v[i] * M[k + i, j]
        s *= beta
        for i in range(nv):
            M[k + i, j] -= s * v[i]


@njit(cache=True, nogil=True)
def _reflect_cols(M, k, v, beta, r0, r1):
    # M[r0:r1, k:k+len(v)] <- M[r0:r1, k:k+len(v)] (I - beta v v^T)
    nv = v.size
    for r in range(r0, r1):
        s = 0.0
        for i in range(nv):
            s += M[r, k + i] * v[i]
        s *= beta
        for i in range(nv):
            M[r, k + i] -= s * v[i]


def balance(A):
    """Diagonal similarity ``B = D^-1 A D`` with powers-of-two scalings.

    Row and column norms are equalized in turn until no scaling changes by
    more than a factor of two, as in the classical balancing sweep.  Returns
    ``(B, d)`` with ``d`` the diagonal of ``D``.
    """
    B = np.array(A, dtype=float)
    n = B.shape[0]
    d = np.ones(n)
    converged = False
    while not converged:
        converged = True
        for i in range(n):
            c = float(np.sum(np.abs(B[:, i]))) - abs(B[i, i])
            r = float(np.sum(np.abs(B[i, :]))) - abs(B[i, i])
            if c == 0.0 or r == 0.0:
                continue
            g, f, s = r / _RADIX, 1.0, c + r
            while c < g:
                f *= _RADIX
                c *= _RADIX * _RADIX
            g = r * _RADIX
            while c >= g:
                f /= _RADIX
                c /= _RADIX * _RADIX
            if (c + r) / f < 0.95 * s:
                converged = False
                d[i] *= f
                B[i, :] /= f
                B[:, i] *= f
    return B, d


@njit(cache=True, nogil=True)
def _hessenberg_inplace(H, Q):
    n = H.shape[0]
    for k in range(n - 2):
        v, beta = _house(H[k + 1:, k].copy())
        if beta == 0.0:
            continue
        _reflect_rows(H, k + 1, v, beta, k, n)
        _reflect_cols(H, k + 1, v, beta, 0, n)
        _reflect_cols(Q, k + 1, v, beta, 0, n)
        for i in range(k + 2, n):
            H[i, k] = 0.0


def hessenberg(A):
    """Householder reduction ``A = Q H Q^T`` with ``H`` upper Hessenberg."""
    H = np.array(A, dtype=float)
    Q = np.eye(H.shape[0])
    _hessenberg_inplace(H, Q)
    return Q, H


@njit(cache=True, nogil=True)
def _francis(H, Q, tol, max_sweeps):
    # returns the number of sweeps used, or -1 when the budget ran out
    n = H.shape[0]
    norm = 0.0
    for i in range(n):
        for j in range(n):
            norm = max(norm, abs(H[i, j]))
    hi = n - 1
    stalled = 0
    sweeps = 0
    xyz = np.empty(3)
    xy = np.empty(2)
    while hi > 0:
        # locate the active window [lo, hi]
        lo = hi
        while lo > 0:
            s = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if s == 0.0:
                s = norm
            if abs(H[lo, lo - 1]) <= tol * s:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo >= hi - 1:
            hi = lo - 1
            stalled = 0
            continue
        if sweeps >= max_sweeps:
            return -1
        sweeps += 1
        stalled += 1

        if stalled % _EXCEPTIONAL_EVERY == 0:
            s = abs(H[hi, hi - 1]) + abs(H[hi - 1, hi - 2])
            tr = 1.5 * s
            det = s * s
        else:
            a, b = H[hi - 1, hi - 1], H[hi - 1, hi]
            c, d = H[hi, hi - 1], H[hi, hi]
            tr = a + d
            det = a * d - b * c

        h00, h01, h10, h11 = H[lo, lo], H[lo, lo + 1], H[lo + 1, lo], H[lo + 1, lo + 1]
        x = h00 * h00 + h01 * h10 - tr * h00 + det
        y = h10 * (h00 + h11 - tr)
        z = h10 * H[lo + 2, lo + 1]
        for k in range(lo, hi - 1):
            xyz[0], xyz[1], xyz[2] = x, y, z
            v, beta = _house(xyz)
            if beta != 0.0:
                _reflect_rows(H, k, v, beta, max(lo, k - 1), n)
                _reflect_cols(H, k, v, beta, 0, min(k + 3, hi) + 1)
                _reflect_cols(Q, k, v, beta, 0, n)
            if k > lo:
                H[k + 1, k - 1] = 0.0
                H[k + 2, k - 1] = 0.0
            x = H[k + 1, k]
            y = H[k + 2, k]
            if k < hi - 2:
                z = H[k + 3, k]
        xy[0], xy[1] = x, y
        v, beta = _house(xy)
        if beta != 0.0:
            _reflect_rows(H, hi - 1, v, beta, hi - 2, n)
            _reflect_cols(H, hi - 1, v, beta, 0, hi + 1)
            _reflect_cols(Q, hi - 1, v, beta, 0, n)
        H[hi, hi - 2] = 0.0
    return sweeps


def schur_arrays(M, tol=1e-12, max_sweeps=1000):
    """Array-level ``(Q, T)`` without balancing or input validation."""
    Q, H = hessenberg(M)
    if _francis(H, Q, tol, max_sweeps) < 0:
        raise NumericalError("real_schur: QR iteration did not converge",
                             max_sweeps=max_sweeps, dim=H.shape[0])
    return Q, H


def real_schur(A, tol=1e-12, max_sweeps=1000, balanced=False):
    """Real Schur form ``A = Q T Q^T``.

    Parameters
    ----------
    A : SquareMatrix or array_like
    tol : float
        Relative deflation threshold: ``T[i+1, i]`` is zeroed once it is
        below ``tol * (|T[i, i]| + |T[i+1, i+1]|)``.
    max_sweeps : int
        Budget of QR sweeps over the whole factorization.
    balanced : bool
        Balance first.  The returned ``Q`` then absorbs the diagonal
        scaling, so ``A = Q T Q^-1`` holds but ``Q`` is no longer orthogonal.

    Returns
    -------
    (SquareMatrix, SquareMatrix)
        ``Q`` and ``T``.

    Raises
    ------
    NumericalError
        The sweep budget ran out before every block deflated.
    """
    M = A.values if isinstance(A, SquareMatrix) else np.asarray(A, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"real_schur needs a square matrix, got shape {M.shape}")
    if not np.isfinite(M).all():
        raise ValueError("real_schur needs finite entries")
    d = None
    if balanced:
        M, d = balance(M)
    Q, H = schur_arrays(M, tol, max_sweeps)
    if d is not None:
        Q = d[:, None] * Q
    n = M.shape[0]
    return SquareMatrix(dim=n, values=Q), SquareMatrix(dim=n, values=H)
