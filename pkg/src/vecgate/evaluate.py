"""Intrinsic evaluation: word similarity, sentence similarity, categorization.

Word similarity scores cosine(v_a, v_b) against human judgments with
Spearman rank correlation. Sentence similarity averages word vectors into
sentence vectors and uses Pearson correlation. Categorization clusters
words with fixed-initialization k-means (one initial centroid per gold
category, the mean of that category's vectors) and reports cluster purity.

Out-of-vocabulary handling is uniform: a record whose words cannot all be
resolved is skipped and counted, never silently dropped. Reports carry
(metric, score, evaluated, skipped) so callers can see coverage.

Every tie-break in this module is deterministic: ranks of tied scores are
averaged, and k-means assigns a point equidistant from several centroids
to the lowest centroid index.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .embio import CategoryDataset, SimilarityDataset, StsDataset
from .errors import (
    AllTokensOov,
    DegenerateInput,
    DimensionMismatch,
    LengthMismatch,
    MissingTruth,
    ZeroVector,
)
from .spectral import Embedding

__all__ = [
    "EvalReport",
    "ClusterAssignment",
    "cosine",
    "pearson",
    "spearman",
    "rankdata_average",
    "sentence_vector",
    "eval_similarity",
    "eval_sts",
    "kmeans_fixed_init",
    "purity",
    "eval_categorization",
]


@dataclass(frozen=True)
class EvalReport:
    """Outcome of one evaluation run over one dataset."""

    metric: str
    score: float
    evaluated: int
    skipped: int

    @property
    def total(self) -> int:
        return self.evaluated + self.skipped


@dataclass(frozen=True)
class ClusterAssignment:
    """Result of a k-means run: per-word labels plus final centroids."""

    words: tuple[str, ...]
    labels: np.ndarray = field(compare=False)
    centroids: np.ndarray = field(compare=False)
    iterations: int = 0
    converged: bool = False

    @property
    def assignment(self) -> dict:
        return {w: int(l) for w, l in zip(self.words, self.labels)}


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity, clipped into [-1, 1] to absorb rounding."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape or u.ndim != 1:
        raise DimensionMismatch(f"cosine of shapes {u.shape} and {v.shape}")
    nu2 = float(u @ u)
    nv2 = float(v @ v)
    if nu2 == 0.0 or nv2 == 0.0:
        raise ZeroVector("cosine is undefined for a zero vector")
    # single sqrt of the product: keeps perfect squares exact (e.g. unit
    # cosine for parallel integer vectors)
    return float(np.clip(float(u @ v) / np.sqrt(nu2 * nv2), -1.0, 1.0))


def pearson(x, y) -> float:
    """Pearson correlation, clipped into [-1, 1]."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatch(f"pearson of shapes {x.shape} and {y.shape}")
    if x.size < 2:
        raise DegenerateInput("pearson needs at least 2 observations")
    xc = x - x.mean()
    yc = y - y.mean()
    sx2 = float(xc @ xc)
    sy2 = float(yc @ yc)
    if sx2 == 0.0 or sy2 == 0.0:
        raise DegenerateInput("pearson is undefined for a constant sequence")
    # single sqrt of the product: keeps rational correlations of exactly
    # representable inputs exact (4/sqrt(5*5) is 0.8, 4/(sqrt5*sqrt5) is not)
    return float(np.clip(float(xc @ yc) / np.sqrt(sx2 * sy2), -1.0, 1.0))


def rankdata_average(values) -> np.ndarray:
    """1-based ranks; tied values all receive the mean of their rank run."""
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.size, dtype=np.float64)
    i = 0
    while i < values.size:
        j = i
        while j + 1 < values.size and values[order[j + 1]] == values[order[i]]:
            j += 1
        # positions i..j (0-based) share the average of ranks i+1..j+1
        avg = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def spearman(x, y) -> float:
    """Spearman rank correlation: Pearson over average-tie ranks."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatch(f"spearman of shapes {x.shape} and {y.shape}")
    if x.size < 2:
        raise DegenerateInput("spearman needs at least 2 observations")
    return pearson(rankdata_average(x), rankdata_average(y))


def _resolve(emb: Embedding, token: str, lowercase_fallback: bool):
    idx = emb.lookup(token, lowercase_fallback=lowercase_fallback)
    return None if idx is None else emb.vectors[idx]


def eval_similarity(
    emb: Embedding,
    dataset: SimilarityDataset,
    lowercase_fallback: bool = False,
) -> EvalReport:
    """Spearman correlation between cosine scores and human scores.

    Pairs with an out-of-vocabulary word or a zero vector are skipped.
    """
    model_scores: list[float] = []
    human_scores: list[float] = []
    skipped = 0
    for pair in dataset.pairs:
        va = _resolve(emb, pair.word_a, lowercase_fallback)
        vb = _resolve(emb, pair.word_b, lowercase_fallback)
        if va is None or vb is None:
            skipped += 1
            continue
        try:
            score = cosine(va, vb)
        except ZeroVector:
            skipped += 1
            continue
        model_scores.append(score)
        human_scores.append(pair.human_score)
    if len(model_scores) < 2:
        raise DegenerateInput(
            f"only {len(model_scores)} of {len(dataset)} pairs usable"
        )
    return EvalReport("spearman", spearman(model_scores, human_scores),
                      len(model_scores), skipped)


def sentence_vector(
    emb: Embedding,
    tokens,
    lowercase_fallback: bool = False,
) -> tuple[np.ndarray, int]:
    """Mean of the resolvable tokens' vectors, with the count dropped.

    Raises :class:`AllTokensOov` when no token resolves.
    """
    rows = []
    dropped = 0
    for token in tokens:
        vec = _resolve(emb, token, lowercase_fallback)
        if vec is None:
            dropped += 1
        else:
            rows.append(vec)
    if not rows:
        raise AllTokensOov(f"none of {dropped} tokens in vocabulary")
    return np.mean(np.asarray(rows, dtype=np.float64), axis=0), dropped


def eval_sts(
    emb: Embedding,
    dataset: StsDataset,
    lowercase_fallback: bool = False,
) -> EvalReport:
    """Pearson correlation between sentence-vector cosines and human scores.

    A pair is skipped when either sentence has no in-vocabulary token or
    averages to a zero vector.
    """
    model_scores: list[float] = []
    human_scores: list[float] = []
    skipped = 0
    for pair in dataset.pairs:
        try:
            sa, _ = sentence_vector(emb, pair.sentence_a, lowercase_fallback)
            sb, _ = sentence_vector(emb, pair.sentence_b, lowercase_fallback)
            score = cosine(sa, sb)
        except (AllTokensOov, ZeroVector):
            skipped += 1
            continue
        model_scores.append(score)
        human_scores.append(pair.human_score)
    if len(model_scores) < 2:
        raise DegenerateInput(
            f"only {len(model_scores)} of {len(dataset)} pairs usable"
        )
    return EvalReport("pearson", pearson(model_scores, human_scores),
                      len(model_scores), skipped)


def kmeans_fixed_init(
    vectors: np.ndarray,
    initial_centroids: np.ndarray,
    max_iter: int = 100,
    words=None,
    use_numba=None,
) -> ClusterAssignment:
    """Lloyd's algorithm from caller-supplied centroids; fully deterministic.

    Equidistant points go to the lowest centroid index; a cluster that loses
    all its points keeps its previous centroid. Stops when the assignment is
    unchanged (``converged=True``) or after ``max_iter`` update rounds.
    """
    X = np.ascontiguousarray(np.asarray(vectors, dtype=np.float64))
    C = np.ascontiguousarray(np.asarray(initial_centroids, dtype=np.float64))
    if X.ndim != 2 or C.ndim != 2 or X.shape[1] != C.shape[1]:
        raise DimensionMismatch(
            f"points {X.shape} vs centroids {C.shape}"
        )
    if words is None:
        words = tuple(f"item{i}" for i in range(X.shape[0]))
    else:
        words = tuple(words)
        if len(words) != X.shape[0]:
            raise LengthMismatch(
                f"{len(words)} words for {X.shape[0]} vectors"
            )
    k = C.shape[0]
    labels = kernels.assign_nearest(X, C, use_numba=use_numba)
    iterations = 0
    converged = False
    for _ in range(max_iter):
        new_C = C.copy()
        for j in range(k):
            members = X[labels == j]
            if members.shape[0]:
                new_C[j] = members.mean(axis=0)
        new_labels = kernels.assign_nearest(X, new_C, use_numba=use_numba)
        C = new_C
        iterations += 1
        if np.array_equal(new_labels, labels):
            converged = True
            break
        labels = new_labels
    return ClusterAssignment(words, labels, C, iterations, converged)


def purity(assignment: ClusterAssignment, truth) -> float:
    """Fraction of words whose cluster's majority gold category is theirs.

    ``truth`` is a word → category mapping or any object exposing one as a
    ``truth`` attribute (such as a loaded category dataset).
    """
    truth = getattr(truth, "truth", truth)
    labels = assignment.labels
    total = len(assignment.words)
    correct = 0
    for j in np.unique(labels):
        members = [w for w, l in zip(assignment.words, labels) if l == j]
        counts: dict[str, int] = {}
        for w in members:
            if w not in truth:
                raise MissingTruth(f"no gold category for {w!r}")
            cat = truth[w]
            counts[cat] = counts.get(cat, 0) + 1
        correct += max(counts.values())
    return correct / total


def eval_categorization(
    emb: Embedding,
    dataset: CategoryDataset,
    lowercase_fallback: bool = False,
    max_iter: int = 100,
    use_numba=None,
) -> EvalReport:
    """Cluster purity of fixed-init k-means over the dataset's words.

    Initial centroids are the per-category means of the in-vocabulary
    words, one per gold category in first-appearance order. Words not in
    the vocabulary are skipped; a category whose words are all skipped
    makes the run degenerate.
    """
    kept_words: list[str] = []
    kept_rows: list[np.ndarray] = []
    kept_cats: list[str] = []
    skipped = 0
    for item in dataset.items:
        vec = _resolve(emb, item.word, lowercase_fallback)
        if vec is None:
            skipped += 1
            continue
        kept_words.append(item.word)
        kept_rows.append(np.asarray(vec, dtype=np.float64))
        kept_cats.append(item.category)
    categories = dataset.categories
    surviving = set(kept_cats)
    missing = [c for c in categories if c not in surviving]
    if missing:
        raise DegenerateInput(
            f"categories lost all words to OOV skips: {missing}"
        )
    X = np.vstack(kept_rows)
    centroids = np.vstack([
        X[[i for i, c in enumerate(kept_cats) if c == cat]].mean(axis=0)
        for cat in categories
    ])
    run = kmeans_fixed_init(
        X, centroids, max_iter=max_iter, words=kept_words, use_numba=use_numba
    )
    return EvalReport("purity", purity(run, dataset.truth),
                      len(kept_words), skipped)
