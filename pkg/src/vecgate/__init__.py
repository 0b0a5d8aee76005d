"""vecgate: spectral variance gating for distributional word vectors.

Post-processing methods for word embeddings that damp or delete the
dominant directions of the vector space, expressed in one shared frame:
an orthogonal change of basis, a per-component gain in [0, 1], and the
inverse change of basis. ``cn_transform`` applies smooth ridge-style
gains derived from each component's variance, ``abtt_transform`` removes
the top components outright after centering, and ``ew_transform``
re-scales factorized vectors by a power of their singular values.

The package also ships the matching intrinsic evaluations (word
similarity, sentence similarity, concept categorization), readers and
writers for the two common embedding file formats, and a CLI.
"""
from .errors import (
    AllTokensOov,
    ConvergenceFailure,
    DegenerateInput,
    DimensionMismatch,
    EmptyDataset,
    EmptySubset,
    InconsistentDim,
    InvalidAperture,
    InvalidD,
    InvalidDataset,
    InvalidFactors,
    LengthMismatch,
    MalformedHeader,
    MalformedLine,
    MissingTruth,
    NonFiniteValue,
    TruncatedRecord,
    UnencodableToken,
    VecgateError,
    ZeroVector,
)
from .spectral import (
    Conceptor,
    CorrelationMatrix,
    Embedding,
    SpectralGate,
    SymmetricEigen,
    conceptor,
    conceptor_loss,
    correlation_matrix,
    negate,
    sym_eigen,
)
from .transforms import (
    AbttConfig,
    CnConfig,
    EwFactors,
    abtt_gains,
    abtt_transform,
    cn_gains,
    cn_transform,
    cn_on_pmi_equivalence,
    ew_factors_from_embedding,
    ew_transform,
    pmi_cn_weights,
    spectral_gate_transform,
)
from .embio import (
    CategoryDataset,
    EmbeddingFormat,
    SimilarityDataset,
    StsDataset,
    read_category_dataset,
    read_embedding,
    read_similarity_dataset,
    read_sts_dataset,
    read_token_list,
    tokenize_sentence,
    write_embedding,
)
from .evaluate import (
    ClusterAssignment,
    EvalReport,
    cosine,
    eval_categorization,
    eval_similarity,
    eval_sts,
    kmeans_fixed_init,
    pearson,
    purity,
    rankdata_average,
    sentence_vector,
    spearman,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # spectral
    "Embedding", "CorrelationMatrix", "SymmetricEigen", "Conceptor",
    "SpectralGate", "correlation_matrix", "sym_eigen", "conceptor",
    "negate", "conceptor_loss",
    # transforms
    "CnConfig", "AbttConfig", "EwFactors", "cn_transform", "abtt_transform",
    "ew_transform", "ew_factors_from_embedding", "spectral_gate_transform",
    "cn_gains", "abtt_gains", "pmi_cn_weights", "cn_on_pmi_equivalence",
    # io
    "EmbeddingFormat", "read_embedding", "write_embedding",
    "SimilarityDataset", "StsDataset", "CategoryDataset",
    "read_similarity_dataset", "read_sts_dataset", "read_category_dataset",
    "read_token_list", "tokenize_sentence",
    # evaluation
    "EvalReport", "ClusterAssignment", "cosine", "pearson", "spearman",
    "rankdata_average", "sentence_vector", "eval_similarity", "eval_sts",
    "kmeans_fixed_init", "purity", "eval_categorization",
    # errors
    "VecgateError", "InvalidAperture", "InvalidD", "DimensionMismatch",
    "EmptySubset", "ConvergenceFailure", "InvalidFactors", "ZeroVector",
    "LengthMismatch", "DegenerateInput", "AllTokensOov", "MissingTruth",
    "MalformedHeader", "TruncatedRecord", "InconsistentDim",
    "NonFiniteValue", "UnencodableToken", "MalformedLine", "EmptyDataset",
    "InvalidDataset",
]
