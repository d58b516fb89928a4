"""Real eigenvalues of a quasi-triangular form, and of a product held in
factored form.

Eigenvalues x of the product are reported through the Lyapunov rescaling
lambda = sign(x) |x|^(1/m), evaluated as sign * exp(log|x| / m) so that
products far outside the floating-point range are never formed.
"""

import math

import numpy as np

from ..errors import NumericalError
from .types import RealSpectrum, SquareMatrix

__all__ = ["extract_real_spectrum", "block_structure", "factored_real_spectrum"]


def _rescale(sign, log_abs, m):
    if log_abs == -math.inf:
        return 0.0
    return sign * math.exp(log_abs / m)


def _pair_2x2(a, b, c, d):
    # real eigenvalues of [[a, b], [c, d]], larger modulus first, or None
    half_tr = 0.5 * (a + d)
    p = 0.5 * (a - d)
    disc = p * p + b * c
    if disc < 0:
        return None
    root = math.sqrt(disc)
    x1 = half_tr + math.copysign(root, half_tr)
    det = a * d - b * c
    x2 = det / x1 if x1 != 0.0 else half_tr - math.copysign(root, half_tr)
    return [x1, x2]


def _signed_log(x):
    if x == 0.0:
        return 1.0, -math.inf
    return math.copysign(1.0, x), math.log(abs(x))


def block_structure(T):
    """Diagonal blocks of a quasi-triangular array as (start, size) pairs."""
    n = T.shape[0]
    blocks = []
    i = 0
    while i < n:
        if i + 1 < n and T[i + 1, i] != 0.0:
            blocks.append((i, 2))
            i += 2
        else:
            blocks.append((i, 1))
            i += 1
    return blocks


def extract_real_spectrum(T, log_scale, m, sample_index=0):
    """Real eigenvalues of ``exp(log_scale) * T`` for quasi-triangular ``T``.

    1 x 1 blocks give one real eigenvalue each.  A 2 x 2 block gives two
    when its discriminant is nonnegative and none otherwise.  A zero
    eigenvalue maps to lambda = 0.
    """
    M = T.values if isinstance(T, SquareMatrix) else np.asarray(T, dtype=float)
    lambdas = []
    for i, size in block_structure(M):
        if size == 1:
            xs = [M[i, i]]
        else:
            xs = _pair_2x2(M[i, i], M[i, i + 1], M[i + 1, i], M[i + 1, i + 1])
            if xs is None:
                continue
        for x in xs:
            sign, lx = _signed_log(float(x))
            lambdas.append(_rescale(sign, lx + log_scale, m))
    return RealSpectrum(sample_index=sample_index, count=len(lambdas), lambdas=tuple(lambdas))


# Orthogonal iteration on the factors.  Columns p.. of the iterate are taken
# to span an invariant subspace once the lower-left block of W = Q_old^T Q_new
# has fallen below _SPLIT in two consecutive passes.
_SPLIT = 1e-12
# blocks of three or more (clusters of nearly equal moduli) are solved from
# the normalized block product, acceptable while the block's log-modulus
# spread stays below this
_BLOCK_LOG_RANGE = 15.0


def _splits(W):
    n = W.shape[0]
    # lower-left block max for every split point p: max |W[p:, :p]|
    A = np.abs(np.tril(W, -1))
    cum = np.maximum.accumulate(np.maximum.accumulate(A[::-1, :], axis=0)[::-1, :], axis=1)
    return {p for p in range(1, n) if cum[p, p - 1] <= _SPLIT}


def _blocks_from_splits(n, splits):
    edges = [0] + sorted(splits) + [n]
    return [(a, b - a) for a, b in zip(edges[:-1], edges[1:])]


def _blocks_resolved(blocks, Rs):
    big = [(a, size) for a, size in blocks if size > 2]
    if not big:
        return True
    logs = np.sum([np.log(np.abs(np.diag(R))) for R in Rs], axis=0)
    return all(np.ptp(logs[a:a + size]) <= _BLOCK_LOG_RANGE for a, size in big)


def _block_eigs(W, Rs, start, size):
    # real eigenvalues of W_bb R_1,bb ... R_m,bb as (sign, log|x|) pairs
    sl = slice(start, start + size)
    if size == 1:
        sign = math.copysign(1.0, W[start, start])
        log_abs = math.log(abs(W[start, start]))
        for R in Rs:
            r = R[start, start]
            sign *= math.copysign(1.0, r)
            log_abs += math.log(abs(r)) if r != 0.0 else -math.inf
        return [(sign, log_abs)]

    # normalized running product, scale kept in logs
    P = W[sl, sl].copy()
    log_scale = 0.0
    for R in Rs:
        P = P @ R[sl, sl]
        peak = float(np.max(np.abs(P)))
        if peak == 0.0:
            return [(1.0, -math.inf)] * size
        P /= peak
        log_scale += math.log(peak)
    if size == 2:
        # the determinant is known exactly from the factors, so the smaller
        # root does not suffer from cancellation in ad - bc
        det_sign = np.sign(np.linalg.det(W[sl, sl]))
        log_det = math.log(abs(np.linalg.det(W[sl, sl])))
        for R in Rs:
            dR = R[start, start] * R[start + 1, start + 1]
            det_sign *= np.sign(dR)
            log_det += math.log(abs(dR)) if dR != 0.0 else -math.inf
        half_tr = 0.5 * (P[0, 0] + P[1, 1])
        det_scaled = det_sign * math.exp(log_det - 2.0 * log_scale) if log_det > -math.inf else 0.0
        disc = half_tr * half_tr - det_scaled
        if disc < 0:
            return []
        x1 = half_tr + math.copysign(math.sqrt(disc), half_tr)
        s1, l1 = _signed_log(x1)
        if x1 == 0.0:
            return [(1.0, -math.inf), (1.0, -math.inf)]
        # x2 = det / x1 in log form
        s2 = det_sign * s1 if log_det > -math.inf else 1.0
        l2 = log_det - (l1 + log_scale) if log_det > -math.inf else -math.inf
        return [(s1, l1 + log_scale), (float(s2), l2)]
    ev = np.linalg.eigvals(P)
    out = []
    for x in ev[ev.imag == 0].real:
        s, lx = _signed_log(float(x))
        out.append((s, lx + log_scale))
    return out


def factored_real_spectrum(factors, max_passes=1000, sample_index=0):
    """Real eigenvalues of X_1 X_2 ... X_m without forming the product.

    Each pass maps an orthonormal basis Q through the factors from the
    right, re-orthonormalizing after every factor:
    ``X_m Q = Z_m R_m, X_(m-1) Z_m = Z_(m-1) R_(m-1), ...``, so that
    ``Q^T (X_1 ... X_m) Q = W R_1 ... R_m`` with ``W = Q^T Z_1``.  The
    iteration stops once W is block upper triangular, the block pattern
    repeats on consecutive passes, and every block larger than 2 x 2 holds
    only eigenvalues of comparable modulus.  Each diagonal block of the
    product is then ``W_bb R_1,bb ... R_m,bb``.

    Raises
    ------
    NumericalError
        If the pass budget runs out before the block pattern settles.
    """
    m = len(factors)
    n = factors[0].shape[0]
    Q = np.eye(n)
    prev = None
    for passes in range(1, max_passes + 1):
        Z = Q
        Rs = [None] * m
        for i in range(m - 1, -1, -1):
            Z, Rs[i] = np.linalg.qr(factors[i] @ Z)
        W = Q.T @ Z
        Q = Z
        splits = _splits(W)
        blocks = _blocks_from_splits(n, splits)
        stable = prev is not None and splits == prev
        prev = splits
        if stable and _blocks_resolved(blocks, Rs):
            break
    else:
        raise NumericalError("factored_real_spectrum: block pattern did not settle",
                             passes=max_passes, sample_index=sample_index)

    lambdas = []
    for start, size in blocks:
        for sign, log_abs in _block_eigs(W, Rs, start, size):
            lambdas.append(_rescale(sign, log_abs, m))
    return RealSpectrum(sample_index=sample_index, count=len(lambdas), lambdas=tuple(lambdas))
