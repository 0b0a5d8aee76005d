"""Post-processing transforms for word-vector collections.

Three transforms share one geometry: encode rows in an orthonormal basis,
scale each coordinate by a gain in [0, 1], decode back.

* conceptor negation: soft gains a^-2 / (sigma_i + a^-2) from a conceptor
  built on the (optionally subset-estimated) correlation matrix,
* top-component removal: center, then hard 0/1 gains that null the leading
  principal components,
* singular-value reweighting: rescale the columns of an orthonormal factor
  by its singular values raised to an exponent.

``spectral_gate_transform`` is the generic encode-gate-decode form; the
named transforms are implemented independently of it so the two routes can
check each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatch, InvalidAperture, InvalidD, InvalidFactors
from .spectral import (
    Embedding,
    SpectralGate,
    _check_aperture,
    _subset_indices,
    conceptor,
    correlation_matrix,
    negate,
    sym_eigen,
)

__all__ = [
    "CnConfig",
    "AbttConfig",
    "EwFactors",
    "cn_transform",
    "abtt_transform",
    "spectral_gate_transform",
    "cn_gains",
    "abtt_gains",
    "ew_transform",
    "ew_factors_from_embedding",
    "pmi_cn_weights",
    "cn_on_pmi_equivalence",
]


@dataclass(frozen=True)
class CnConfig:
    """Conceptor-negation settings.

    ``subset`` restricts correlation estimation to the listed tokens (all
    vectors are still transformed). ``center`` subtracts the estimation
    rows' mean from every vector before estimation and transformation.
    """

    aperture: float = 2.0
    subset: Optional[tuple[str, ...]] = None
    center: bool = False

    def __post_init__(self):
        object.__setattr__(self, "aperture", _check_aperture(self.aperture))
        if self.subset is not None:
            object.__setattr__(self, "subset", tuple(self.subset))


@dataclass(frozen=True)
class AbttConfig:
    """Top-component removal settings: how many leading PCs to null."""

    n_remove: int

    def __post_init__(self):
        n = int(self.n_remove)
        if n < 0:
            raise InvalidD(f"cannot remove {n} components")
        object.__setattr__(self, "n_remove", n)


@dataclass(frozen=True)
class EwFactors:
    """Orthonormal word factor, its singular values, and a weighting exponent.

    ``word_basis`` is |V| x n with orthonormal columns; ``singular_values``
    is length n, descending and strictly positive.
    """

    word_basis: np.ndarray
    singular_values: np.ndarray
    exponent: float

    def __post_init__(self):
        theta = np.asarray(self.word_basis, dtype=np.float64)
        lams = np.asarray(self.singular_values, dtype=np.float64)
        object.__setattr__(self, "word_basis", theta)
        object.__setattr__(self, "singular_values", lams)
        object.__setattr__(self, "exponent", float(self.exponent))
        if theta.ndim != 2 or theta.shape[0] < theta.shape[1]:
            raise InvalidFactors(
                f"word basis must be tall (rows >= columns), got {theta.shape}"
            )
        if lams.shape != (theta.shape[1],):
            raise InvalidFactors("need one singular value per basis column")
        if not np.all(lams > 0.0):
            raise InvalidFactors("singular values must be strictly positive")
        if np.any(np.diff(lams) > 0.0):
            raise InvalidFactors("singular values must be descending")
        gram = theta.T @ theta
        if np.abs(gram - np.eye(theta.shape[1])).max() > 1e-8:
            raise InvalidFactors("word basis columns are not orthonormal")

    @property
    def vocab_size(self) -> int:
        return self.word_basis.shape[0]


def cn_gains(variances: np.ndarray, aperture: float) -> np.ndarray:
    """Soft gains a^-2 / (sigma_i + a^-2) for nonnegative variances.

    Nondecreasing when the variances are descending, and confined to (0, 1]:
    high-variance directions are damped hardest, zero-variance ones pass.
    """
    aperture = _check_aperture(aperture)
    variances = np.asarray(variances, dtype=np.float64)
    ridge = aperture ** -2
    return np.clip(ridge / (variances + ridge), 0.0, 1.0)


def abtt_gains(dim: int, n_remove: int) -> np.ndarray:
    """Hard gate: ``n_remove`` zeros followed by ones."""
    dim = int(dim)
    n_remove = int(n_remove)
    if not 0 <= n_remove <= dim:
        raise InvalidD(f"n_remove={n_remove} out of range for dim={dim}")
    gains = np.ones(dim)
    gains[:n_remove] = 0.0
    return gains


def spectral_gate_transform(emb: Embedding, gate: SpectralGate) -> Embedding:
    """Apply basis @ diag(gains) @ basis.T to every row."""
    if gate.basis.shape[0] != emb.dim:
        raise DimensionMismatch(
            f"gate is {gate.basis.shape[0]}-dimensional, embedding is {emb.dim}"
        )
    out = kernels.apply_gate(emb.vectors, gate.basis, gate.gains)
    return emb.replace_vectors(out)


def cn_transform(emb: Embedding, cfg: CnConfig = CnConfig()) -> Embedding:
    """Pass every vector through the negated conceptor of the data.

    Estimates R on the configured subset (or all rows), builds the conceptor
    at ``cfg.aperture``, and multiplies every vector by I - C. With
    ``cfg.center`` the estimation rows' mean is first subtracted from every
    vector, and the output records that in ``meta['centered']``.
    """
    if cfg.center:
        idx = _subset_indices(emb, cfg.subset)
        rows = emb.vectors if idx is None else emb.vectors[idx]
        mu = np.mean(rows, axis=0, dtype=np.float64)
    else:
        mu = None
    corr = correlation_matrix(emb, subset=cfg.subset, center=cfg.center)
    damp = negate(conceptor(corr, cfg.aperture)).matrix
    shifted = emb.vectors if mu is None else emb.vectors - mu
    out = shifted @ damp  # damp is symmetric, so rows map as (I - C) v
    meta = {"centered": True} if cfg.center else {}
    return emb.replace_vectors(out, **meta)


def abtt_transform(emb: Embedding, cfg: AbttConfig) -> Embedding:
    """Center all vectors, then remove their projections onto the top PCs.

    With ``n_remove = 0`` this is pure centering; with ``n_remove = dim``
    every output row is (numerically) zero.
    """
    d = cfg.n_remove
    if d > emb.dim:
        raise InvalidD(f"n_remove={d} exceeds dimension {emb.dim}")
    mu = np.mean(emb.vectors, axis=0, dtype=np.float64)
    centered = emb.vectors - mu
    if d == 0:
        return emb.replace_vectors(centered)
    eig = sym_eigen(correlation_matrix(emb, center=True))
    top = eig.basis[:, :d]
    out = centered - (centered @ top) @ top.T
    return emb.replace_vectors(out)


def ew_transform(factors: EwFactors, vocab: Optional[Sequence[str]] = None) -> Embedding:
    """Rows of word_basis scaled columnwise by singular_values ** exponent.

    Exponent 1 reproduces the unweighted vectors; exponent 0 flattens all
    singular values to 1. Factors carry no tokens, so a vocabulary may be
    supplied; positional tokens are synthesized otherwise.
    """
    scaled = factors.word_basis * factors.singular_values ** factors.exponent
    if vocab is None:
        vocab = tuple(f"w{i}" for i in range(factors.vocab_size))
    return Embedding(tuple(vocab), scaled)


def ew_factors_from_embedding(emb: Embedding, exponent: float) -> EwFactors:
    """Factor an embedding matrix by thin SVD for singular-value reweighting.

    Column signs follow the same largest-entry-nonnegative convention as the
    eigendecomposition, so repeated runs produce identical factors. Requires
    at least as many rows as columns and full column rank.
    """
    if len(emb) < emb.dim:
        raise DimensionMismatch(
            f"need |V| >= dim to factorize, got {len(emb)} x {emb.dim}"
        )
    theta, lams, _ = np.linalg.svd(
        emb.vectors.astype(np.float64, copy=False), full_matrices=False
    )
    for j in range(theta.shape[1]):
        k = np.argmax(np.abs(theta[:, j]))
        if theta[k, j] < 0:
            theta[:, j] = -theta[:, j]
    return EwFactors(word_basis=theta, singular_values=lams, exponent=exponent)


def pmi_cn_weights(singular_values, vocab_size: int, aperture: float) -> np.ndarray:
    """Per-direction shrinkage |V| a^-2 / (lambda_i^2 + |V| a^-2).

    This is what conceptor negation reduces to on vectors of the form
    word_basis @ diag(singular_values): a diagonal reweighting that, like
    sub-unit exponents, suppresses the leading singular directions.
    """
    aperture = _check_aperture(aperture)
    lams = np.asarray(singular_values, dtype=np.float64)
    scaled_ridge = vocab_size * aperture ** -2
    return scaled_ridge / (lams ** 2 + scaled_ridge)


def cn_on_pmi_equivalence(factors: EwFactors, aperture: float):
    """The same post-processing computed twice, for cross-checking.

    Returns ``(via_conceptor, via_weights)``: conceptor negation applied to
    the vectors word_basis @ diag(singular_values), and the closed-form
    diagonal reweighting by :func:`pmi_cn_weights`. The two agree up to
    float error.
    """
    vectors = factors.word_basis * factors.singular_values
    vocab = tuple(f"w{i}" for i in range(factors.vocab_size))
    emb = Embedding(vocab, vectors)
    via_conceptor = cn_transform(emb, CnConfig(aperture=aperture))
    weights = pmi_cn_weights(factors.singular_values, factors.vocab_size, aperture)
    via_weights = Embedding(vocab, factors.word_basis * (factors.singular_values * weights))
    return via_conceptor, via_weights
