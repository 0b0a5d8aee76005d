"""Exception hierarchy for the toolkit.

Every class carries a stable ``exit_code`` so the CLI can map failures to
distinct process exit codes (documented in the README).
"""


class VecgateError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


# --- math / configuration -------------------------------------------------

class InvalidAperture(VecgateError):
    """Aperture must be a positive finite real."""

    exit_code = 10


class InvalidD(VecgateError):
    """Number of components to remove is out of range."""

    exit_code = 11


class DimensionMismatch(VecgateError):
    """Operand dimensions disagree."""

    exit_code = 12


class EmptySubset(VecgateError):
    """Estimation subset has no overlap with the vocabulary."""

    exit_code = 13


class ConvergenceFailure(VecgateError):
    """The eigensolver failed to converge."""

    exit_code = 14


class InvalidFactors(VecgateError):
    """Factor matrices violate their orthonormality/ordering contract."""

    exit_code = 15


# --- evaluation -----------------------------------------------------------

class ZeroVector(VecgateError):
    """Cosine similarity of a zero vector is undefined."""

    exit_code = 16


class LengthMismatch(VecgateError):
    """Paired score lists have different lengths."""

    exit_code = 17


class DegenerateInput(VecgateError):
    """Too few usable items, or zero variance where a correlation is needed."""

    exit_code = 18


class AllTokensOov(VecgateError):
    """No token of a sentence is in the vocabulary."""

    exit_code = 19


class MissingTruth(VecgateError):
    """A clustered word has no ground-truth category."""

    exit_code = 20


# --- embedding files ------------------------------------------------------

class MalformedHeader(VecgateError):
    """Embedding file header is missing or unparseable."""

    exit_code = 21


class TruncatedRecord(VecgateError):
    """Embedding file ended mid-record."""

    exit_code = 22

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class InconsistentDim(VecgateError):
    """A row's value count disagrees with the established dimension."""

    exit_code = 23

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NonFiniteValue(VecgateError):
    """A vector component is NaN, infinite, or not a parseable real."""

    exit_code = 24


class UnencodableToken(VecgateError):
    """Token collides with a format delimiter and cannot be written."""

    exit_code = 25


# --- benchmark datasets ---------------------------------------------------

class MalformedLine(VecgateError):
    """A dataset line does not match the expected TSV schema."""

    exit_code = 26

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyDataset(VecgateError):
    """Dataset contains no usable records."""

    exit_code = 27


class InvalidDataset(VecgateError):
    """Dataset violates a structural requirement (e.g. fewer than 2 categories)."""

    exit_code = 28
