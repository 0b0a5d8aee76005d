"""Hot numeric kernels, each with a jitted and a pure-numpy implementation.

Dispatch: ``True``/``False`` force a path; ``use_numba=None`` picks the path
that benchmarks faster for that kernel (see ``benchmarks/bench_kernels.py``),
provided numba is installed and ``VECGATE_NO_NUMBA`` is unset. Concretely:
the matmul-shaped kernels (:func:`correlation_sum`, :func:`apply_gate`)
default to the numpy path because BLAS outruns explicit parallel loops
there, while :func:`assign_nearest` — the clustering hot loop, where the
numpy path must materialize difference tensors — defaults to the jitted
path.

Both paths are deterministic for a fixed block size: accumulation order per
output element never depends on thread count. The two paths may differ by
float rounding (different summation orders), never by contract.
"""
from __future__ import annotations

import numpy as np

from ._accel import HAS_NUMBA, numba_enabled

# Rows per streamed block of the correlation accumulation.
BLOCK_ROWS = 4096


def _resolve(use_numba, prefer_numba=True):
    if use_numba is None:
        return prefer_numba and numba_enabled()
    if use_numba and not HAS_NUMBA:
        raise RuntimeError("numba requested but not importable")
    return bool(use_numba)


# --- correlation accumulation ----------------------------------------------

def _correlation_sum_np(X, mu, block):
    n = X.shape[1]
    acc = np.zeros((n, n))
    for start in range(0, X.shape[0], block):
        b = X[start:start + block].astype(np.float64, copy=False) - mu
        acc += b.T @ b
    return acc


if HAS_NUMBA:
    from numba import njit, prange

    @njit(cache=True, parallel=True)
    def _correlation_sum_nb(X, mu, block):  # pragma: no cover - jitted
        m, n = X.shape
        acc = np.zeros((n, n))
        start = 0
        while start < m:
            stop = min(start + block, m)
            for i in prange(n):
                for j in range(i + 1):
                    s = 0.0
                    for r in range(start, stop):
                        s += (X[r, i] - mu[i]) * (X[r, j] - mu[j])
                    acc[i, j] += s
            start = stop
        for i in range(n):
            for j in range(i):
                acc[j, i] = acc[i, j]
        return acc

    @njit(cache=True, parallel=True)
    def _apply_gate_nb(X, U, gains):  # pragma: no cover - jitted
        m, n = X.shape
        out = np.empty((m, n))
        for r in prange(m):
            coords = np.empty(n)
            for i in range(n):
                s = 0.0
                for k in range(n):
                    s += U[k, i] * X[r, k]
                coords[i] = gains[i] * s
            for k in range(n):
                s = 0.0
                for i in range(n):
                    s += U[k, i] * coords[i]
                out[r, k] = s
        return out

    @njit(cache=True, parallel=True)
    def _assign_nearest_nb(X, centroids):  # pragma: no cover - jitted
        m, n = X.shape
        k = centroids.shape[0]
        labels = np.empty(m, np.int64)
        for r in prange(m):
            best = 0
            best_d = np.inf
            for c in range(k):
                d = 0.0
                for j in range(n):
                    diff = X[r, j] - centroids[c, j]
                    d += diff * diff
                if d < best_d:  # strict: ties keep the lowest index
                    best_d = d
                    best = c
            labels[r] = best
        return labels


def correlation_sum(X, mu, block_size=BLOCK_ROWS, use_numba=None):
    """Sum of (x - mu)(x - mu)^T over the rows of X, accumulated in float64.

    Streams over row blocks so no transposed copy of X is ever made; the
    returned matrix is exactly symmetric.
    """
    X = np.ascontiguousarray(X)
    mu = np.asarray(mu, dtype=np.float64)
    if _resolve(use_numba, prefer_numba=False):
        return _correlation_sum_nb(X, mu, int(block_size))
    acc = _correlation_sum_np(X, mu, int(block_size))
    return (acc + acc.T) / 2.0


def apply_gate(X, U, gains, use_numba=None):
    """Per-row U diag(gains) U^T x, returned as float64 rows."""
    X = np.ascontiguousarray(X)
    U = np.ascontiguousarray(U, dtype=np.float64)
    gains = np.asarray(gains, dtype=np.float64)
    if _resolve(use_numba, prefer_numba=False):
        return _apply_gate_nb(X, U, gains)
    return ((X @ U) * gains) @ U.T


def assign_nearest(X, centroids, use_numba=None):
    """Index of the nearest centroid (squared euclidean) per row of X.

    Distance ties resolve to the lowest centroid index on both paths.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    centroids = np.ascontiguousarray(centroids, dtype=np.float64)
    if _resolve(use_numba):
        return _assign_nearest_nb(X, centroids)
    labels = np.empty(X.shape[0], dtype=np.int64)
    # small row blocks keep the (rows, k, n) difference tensor bounded
    block = max(1, 262144 // max(1, centroids.shape[0] * X.shape[1]))
    for start in range(0, X.shape[0], block):
        diff = X[start:start + block, None, :] - centroids[None, :, :]
        d2 = np.einsum("rcj,rcj->rc", diff, diff)
        labels[start:start + block] = np.argmin(d2, axis=1)
    return labels
