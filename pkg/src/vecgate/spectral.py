"""Dense symmetric spectral machinery.

Correlation matrices of word-vector collections, their eigendecompositions,
and conceptors: the regularized identity maps C = R (R + a^-2 I)^-1 whose
spectrum softly encodes the high-variance directions of the data. C is
always formed in the eigenbasis of R, never via an explicit inverse; for an
eigenvalue t of R the matching eigenvalue of C is t / (t + a^-2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    EmptySubset,
    InvalidAperture,
)

__all__ = [
    "Embedding",
    "CorrelationMatrix",
    "SymmetricEigen",
    "Conceptor",
    "SpectralGate",
    "correlation_matrix",
    "sym_eigen",
    "conceptor",
    "negate",
    "conceptor_loss",
]


@dataclass(frozen=True)
class Embedding:
    """An ordered vocabulary with one real-valued row vector per token.

    Rows keep the dtype they were constructed with (binary files load as
    float32, text files and all transforms produce float64). Instances are
    treated as immutable; transforms allocate fresh ones.
    """

    vocab: tuple[str, ...]
    vectors: np.ndarray
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vocab", tuple(self.vocab))
        vectors = np.asarray(self.vectors)
        object.__setattr__(self, "vectors", vectors)
        if vectors.ndim != 2:
            raise ValueError(f"vectors must be 2-D, got shape {vectors.shape}")
        if len(self.vocab) != vectors.shape[0]:
            raise ValueError(
                f"{len(self.vocab)} tokens but {vectors.shape[0]} vector rows"
            )
        if vectors.shape[0] < 1 or vectors.shape[1] < 1:
            raise ValueError("embedding needs at least one token and one dimension")
        if len(set(self.vocab)) != len(self.vocab):
            raise ValueError("vocabulary contains duplicate tokens")
        if not np.isfinite(vectors).all():
            raise ValueError("vectors contain non-finite values")

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.vocab)

    @cached_property
    def index(self) -> dict:
        return {tok: i for i, tok in enumerate(self.vocab)}

    @cached_property
    def _lower_index(self) -> dict:
        lowered: dict = {}
        for i, tok in enumerate(self.vocab):
            lowered.setdefault(tok.lower(), i)
        return lowered

    def lookup(self, token: str, lowercase_fallback: bool = False) -> Optional[int]:
        """Row index for a token: exact match first, lowercased on request."""
        i = self.index.get(token)
        if i is None and lowercase_fallback:
            i = self._lower_index.get(token.lower())
        return i

    def replace_vectors(self, vectors: np.ndarray, **meta) -> "Embedding":
        """New embedding with this vocabulary and fresh rows."""
        merged = dict(self.meta)
        merged.update(meta)
        return Embedding(self.vocab, vectors, merged)


@dataclass(frozen=True)
class CorrelationMatrix:
    """Second-moment estimate (1/m) sum of (v - mu')(v - mu')^T.

    ``centered`` records whether mu' was the sample mean (True) or zero.
    """

    matrix: np.ndarray
    sample_count: int
    centered: bool

    def __post_init__(self):
        R = np.asarray(self.matrix, dtype=np.float64)
        object.__setattr__(self, "matrix", R)
        if R.ndim != 2 or R.shape[0] != R.shape[1]:
            raise ValueError(f"correlation matrix must be square, got {R.shape}")
        scale = max(1.0, float(np.abs(R).max()))
        if np.abs(R - R.T).max() > 1e-12 * scale:
            raise ValueError("correlation matrix is not symmetric")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SymmetricEigen:
    """Orthonormal eigenbasis (columns) with eigenvalues sorted descending."""

    basis: np.ndarray
    sigma: np.ndarray


@dataclass(frozen=True)
class Conceptor:
    """Symmetric matrix with spectrum in [0, 1], plus the aperture that built it.

    ``conceptor`` output has spectrum in [0, 1); ``negate`` flips it to (0, 1].
    """

    matrix: np.ndarray
    aperture: float


@dataclass(frozen=True)
class SpectralGate:
    """Orthonormal basis plus per-direction gains in [0, 1].

    Applying the gate to a vector v yields basis @ diag(gains) @ basis.T @ v.
    """

    basis: np.ndarray
    gains: np.ndarray

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=np.float64)
        gains = np.asarray(self.gains, dtype=np.float64)
        if basis.ndim != 2 or basis.shape[0] != basis.shape[1]:
            raise ValueError(f"gate basis must be square, got {basis.shape}")
        if gains.shape != (basis.shape[0],):
            raise ValueError("one gain per basis direction required")
        if gains.min() < -1e-12 or gains.max() > 1 + 1e-12:
            raise ValueError("gains must lie in [0, 1]")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "gains", np.clip(gains, 0.0, 1.0))


def _subset_indices(emb: Embedding, subset: Optional[Sequence[str]]):
    if subset is None:
        return None
    wanted = dict.fromkeys(subset)  # dedupe, keep order
    idx = [emb.index[t] for t in wanted if t in emb.index]
    if not idx:
        raise EmptySubset("no subset token occurs in the vocabulary")
    return np.asarray(idx, dtype=np.intp)


def correlation_matrix(
    emb: Embedding,
    subset: Optional[Sequence[str]] = None,
    center: bool = False,
    block_size: int = kernels.BLOCK_ROWS,
) -> CorrelationMatrix:
    """Estimate (1/m) sum of v v^T over the selected rows, in double precision.

    ``subset`` restricts estimation to the listed tokens (missing tokens are
    ignored; an empty intersection raises :class:`EmptySubset`). ``center``
    subtracts the selected rows' mean first.
    """
    idx = _subset_indices(emb, subset)
    rows = emb.vectors if idx is None else emb.vectors[idx]
    m = rows.shape[0]
    if center:
        mu = np.mean(rows, axis=0, dtype=np.float64)
    else:
        mu = np.zeros(emb.dim)
    total = kernels.correlation_sum(rows, mu, block_size=block_size)
    return CorrelationMatrix(matrix=total / m, sample_count=m, centered=center)


def sym_eigen(corr: CorrelationMatrix) -> SymmetricEigen:
    """Eigendecomposition of a PSD correlation matrix.

    Eigenvalues come out descending; values below 1e-10 of the largest
    (float artifacts of an exactly-PSD estimate) clamp to zero. Each
    eigenvector is oriented so its largest-magnitude entry is nonnegative,
    which pins the otherwise arbitrary sign for reproducible output.
    """
    try:
        sigma, basis = np.linalg.eigh(corr.matrix)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver failed: {exc}") from exc
    sigma = sigma[::-1].copy()
    basis = np.ascontiguousarray(basis[:, ::-1])
    sigma[sigma < 1e-10 * max(sigma[0], 0.0)] = 0.0
    for j in range(basis.shape[1]):
        k = np.argmax(np.abs(basis[:, j]))
        if basis[k, j] < 0:
            basis[:, j] = -basis[:, j]
    return SymmetricEigen(basis=basis, sigma=sigma)


def _check_aperture(aperture: float) -> float:
    aperture = float(aperture)
    if not np.isfinite(aperture) or aperture <= 0.0:
        raise InvalidAperture(f"aperture must be a positive finite real, got {aperture!r}")
    return aperture


def conceptor(corr: CorrelationMatrix, aperture: float) -> Conceptor:
    """Closed-form conceptor of a correlation matrix at the given aperture.

    Built in the eigenbasis: eigenvalues t of R map to t / (t + a^-2), so the
    spectrum lands in [0, 1) without ever inverting a near-singular matrix.
    """
    aperture = _check_aperture(aperture)
    eig = sym_eigen(corr)
    gains = eig.sigma / (eig.sigma + aperture ** -2)
    C = (eig.basis * gains) @ eig.basis.T
    C = (C + C.T) / 2.0
    return Conceptor(matrix=C, aperture=aperture)


def negate(c: Conceptor) -> Conceptor:
    """Complement conceptor I - C; spectrum flips from [0, 1) to (0, 1]."""
    return Conceptor(matrix=np.eye(c.matrix.shape[0]) - c.matrix, aperture=c.aperture)


def conceptor_loss(c, samples, aperture: float) -> float:
    """Empirical mean of ||x - Cx||^2 plus a^-2 ||C||_F^2 over sample rows.

    The closed-form conceptor of the samples' correlation matrix minimizes
    this quantity. ``c`` may be a Conceptor or a raw square matrix;
    ``samples`` may be an Embedding or a 2-D array of row vectors.
    """
    aperture = _check_aperture(aperture)
    C = np.asarray(getattr(c, "matrix", c), dtype=np.float64)
    X = np.asarray(getattr(samples, "vectors", samples), dtype=np.float64)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {C.shape}")
    if X.ndim != 2 or C.shape[0] != X.shape[1]:
        raise DimensionMismatch(
            f"matrix is {C.shape[0]}x{C.shape[0]} but samples have shape {X.shape}"
        )
    resid = X - X @ C.T
    fit = float(np.mean(np.einsum("ij,ij->i", resid, resid)))
    return fit + aperture ** -2 * float(np.sum(C * C))
