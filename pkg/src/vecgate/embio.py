"""Embedding file formats and benchmark dataset loaders.

Embedding formats
-----------------
word2vec binary: ASCII header ``"<count> <dim>\\n"``, then per record a token
(bytes up to a single 0x20 space) followed by ``dim`` little-endian 4-byte
IEEE-754 floats, optionally followed by 0x0A. Both space-only and
space+newline record separators occur in the wild; the reader accepts both.

GloVe text: one line per word, token then ``dim`` space-separated decimal
floats; the dimension is inferred from the first line.

Tokens are treated as opaque byte strings (decoded with surrogateescape, so
non-UTF-8 bytes survive a round trip) validated only against the format's
delimiters. Duplicate tokens keep the first occurrence; the number dropped
is surfaced as ``meta['duplicates_dropped']`` on the returned embedding.

Benchmark datasets are UTF-8 TSV files: word pairs with a human score,
sentence pairs with a human score, or word/category rows. Lines starting
with ``#`` (and blank lines) are skipped.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import (
    EmptyDataset,
    InconsistentDim,
    InvalidDataset,
    MalformedHeader,
    MalformedLine,
    NonFiniteValue,
    TruncatedRecord,
    UnencodableToken,
)
from .spectral import Embedding

__all__ = [
    "EmbeddingFormat",
    "read_embedding",
    "write_embedding",
    "SimilarityPair",
    "SimilarityDataset",
    "StsPair",
    "StsDataset",
    "CategoryItem",
    "CategoryDataset",
    "read_similarity_dataset",
    "read_sts_dataset",
    "read_category_dataset",
    "read_token_list",
    "tokenize_sentence",
]


class EmbeddingFormat(str, Enum):
    WORD2VEC_BINARY = "w2v-bin"
    GLOVE_TEXT = "glove-txt"


_CHUNK = 1 << 16


class _ByteScanner:
    """Forward-only reader over a binary stream with a bounded buffer."""

    def __init__(self, fobj):
        self._f = fobj
        self._buf = b""
        self._pos = 0  # absolute offset of the start of _buf
        self._cur = 0  # cursor within _buf

    @property
    def offset(self) -> int:
        return self._pos + self._cur

    def _fill(self) -> bool:
        if self._cur < len(self._buf):
            return True
        self._pos += len(self._buf)
        self._buf = self._f.read(_CHUNK)
        self._cur = 0
        return bool(self._buf)

    def read_until_space(self, skip_newlines: bool = True) -> bytes:
        parts = []
        while True:
            if not self._fill():
                raise TruncatedRecord("file ended inside a token", offset=self.offset)
            nl_skip = self._cur
            if skip_newlines and not parts:
                while nl_skip < len(self._buf) and self._buf[nl_skip] == 0x0A:
                    nl_skip += 1
                self._cur = nl_skip
                if nl_skip == len(self._buf):
                    continue
            end = self._buf.find(b" ", self._cur)
            if end == -1:
                parts.append(self._buf[self._cur:])
                self._cur = len(self._buf)
                continue
            parts.append(self._buf[self._cur:end])
            self._cur = end + 1
            return b"".join(parts)

    def read_exact(self, n: int) -> bytes:
        parts = []
        need = n
        while need:
            if not self._fill():
                raise TruncatedRecord(
                    f"file ended {need} bytes into a vector record", offset=self.offset
                )
            take = min(need, len(self._buf) - self._cur)
            parts.append(self._buf[self._cur:self._cur + take])
            self._cur += take
            need -= take
        return b"".join(parts)


def _decode_token(raw: bytes) -> str:
    return raw.decode("utf-8", errors="surrogateescape")


def _encode_token(token: str, fmt: EmbeddingFormat) -> bytes:
    if not token:
        raise UnencodableToken("empty token")
    if " " in token or "\n" in token or "\r" in token:
        raise UnencodableToken(
            f"token {token!r} contains a delimiter byte for {fmt.value}"
        )
    return token.encode("utf-8", errors="surrogateescape")


def _read_word2vec_binary(path) -> Embedding:
    with open(path, "rb") as f:
        header = f.readline(128)
        if not header.endswith(b"\n"):
            raise MalformedHeader(f"{path}: missing '<count> <dim>' header line")
        fields = header.split()
        try:
            count, dim = int(fields[0]), int(fields[1])
        except (ValueError, IndexError):
            raise MalformedHeader(f"{path}: unparseable header {header!r}") from None
        if len(fields) != 2 or count < 1 or dim < 1:
            raise MalformedHeader(f"{path}: bad header {header!r}")
        scanner = _ByteScanner(f)
        vectors = np.empty((count, dim), dtype=np.float32)
        vocab: list[str] = []
        index: dict[str, int] = {}
        duplicates = 0
        for _ in range(count):
            token = _decode_token(scanner.read_until_space())
            row = np.frombuffer(scanner.read_exact(4 * dim), dtype="<f4")
            if not np.isfinite(row).all():
                raise NonFiniteValue(f"{path}: non-finite component in {token!r}")
            if token in index:
                duplicates += 1
                continue
            index[token] = len(vocab)
            vectors[len(vocab)] = row
            vocab.append(token)
    meta = {"duplicates_dropped": duplicates} if duplicates else {}
    return Embedding(tuple(vocab), vectors[:len(vocab)].copy(), meta)


def _parse_component(field: str, path, lineno: int) -> float:
    try:
        value = float(field)
    except ValueError:
        raise NonFiniteValue(
            f"{path}: line {lineno}: {field!r} is not a real number"
        ) from None
    if not np.isfinite(value):
        raise NonFiniteValue(f"{path}: line {lineno}: non-finite component {field!r}")
    return value


def _read_glove_text(path) -> Embedding:
    vocab: list[str] = []
    index: dict[str, int] = {}
    rows: list[np.ndarray] = []
    duplicates = 0
    dim = None
    with open(path, "r", encoding="utf-8", errors="surrogateescape", newline="\n") as f:
        for lineno, line in enumerate(f, start=1):
            parts = line.rstrip("\r\n").split(" ")
            if dim is None:
                dim = len(parts) - 1
                if dim < 1:
                    raise InconsistentDim(
                        f"{path}: first line has no vector components", line=lineno
                    )
            if len(parts) - 1 != dim or any(p == "" for p in parts):
                raise InconsistentDim(
                    f"{path}: expected {dim} components, found a different shape",
                    line=lineno,
                )
            token = parts[0]
            row = np.array(
                [_parse_component(p, path, lineno) for p in parts[1:]], dtype=np.float64
            )
            if token in index:
                duplicates += 1
                continue
            index[token] = len(vocab)
            vocab.append(token)
            rows.append(row)
    if dim is None:
        raise MalformedHeader(f"{path}: empty embedding file")
    meta = {"duplicates_dropped": duplicates} if duplicates else {}
    return Embedding(tuple(vocab), np.vstack(rows), meta)


def read_embedding(path, fmt: EmbeddingFormat) -> Embedding:
    """Load an embedding file; see the module docstring for byte layouts."""
    fmt = EmbeddingFormat(fmt)
    if fmt is EmbeddingFormat.WORD2VEC_BINARY:
        return _read_word2vec_binary(path)
    return _read_glove_text(path)


def write_embedding(emb: Embedding, path, fmt: EmbeddingFormat) -> None:
    """Write an embedding file that reads back bit-exactly (binary) or to
    full float precision (text, shortest round-trip decimal form)."""
    fmt = EmbeddingFormat(fmt)
    if fmt is EmbeddingFormat.WORD2VEC_BINARY:
        with open(path, "wb") as f:
            f.write(f"{len(emb)} {emb.dim}\n".encode("ascii"))
            rows = np.ascontiguousarray(emb.vectors.astype("<f4", copy=False))
            for token, row in zip(emb.vocab, rows):
                f.write(_encode_token(token, fmt))
                f.write(b" ")
                f.write(row.tobytes())
                f.write(b"\n")
        return
    with open(path, "w", encoding="utf-8", errors="surrogateescape", newline="\n") as f:
        for token, row in zip(emb.vocab, emb.vectors):
            _encode_token(token, fmt)
            f.write(token)
            for x in row:
                f.write(" ")
                f.write(repr(float(x)))
            f.write("\n")


# --- benchmark datasets -----------------------------------------------------


class SimilarityPair(NamedTuple):
    word_a: str
    word_b: str
    human_score: float


class StsPair(NamedTuple):
    sentence_a: tuple[str, ...]
    sentence_b: tuple[str, ...]
    human_score: float


class CategoryItem(NamedTuple):
    word: str
    category: str


@dataclass(frozen=True)
class SimilarityDataset:
    pairs: tuple[SimilarityPair, ...]

    def __post_init__(self):
        if not self.pairs:
            raise EmptyDataset("similarity dataset has no records")

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class StsDataset:
    pairs: tuple[StsPair, ...]

    def __post_init__(self):
        if not self.pairs:
            raise EmptyDataset("sts dataset has no records")

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class CategoryDataset:
    items: tuple[CategoryItem, ...]

    def __post_init__(self):
        if not self.items:
            raise EmptyDataset("category dataset has no records")
        if len(self.categories) < 2:
            raise InvalidDataset("need at least 2 categories")

    def __len__(self):
        return len(self.items)

    @property
    def categories(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(item.category for item in self.items))

    @property
    def k(self) -> int:
        return len(self.categories)

    @property
    def truth(self) -> dict:
        return {item.word: item.category for item in self.items}


def _data_lines(path):
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            yield lineno, line


def _split_columns(line: str, lineno: int, expected: int):
    parts = line.split("\t")
    if len(parts) != expected:
        raise MalformedLine(
            f"expected {expected} tab-separated columns, got {len(parts)}", line=lineno
        )
    return parts


def _parse_score(field: str, lineno: int) -> float:
    try:
        score = float(field)
    except ValueError:
        raise MalformedLine(f"unparseable score {field!r}", line=lineno) from None
    if not np.isfinite(score):
        raise MalformedLine(f"non-finite score {field!r}", line=lineno)
    return score


def read_similarity_dataset(path) -> SimilarityDataset:
    """TSV rows: word_a, word_b, human score."""
    pairs = []
    for lineno, line in _data_lines(path):
        a, b, score = _split_columns(line, lineno, 3)
        pairs.append(SimilarityPair(a, b, _parse_score(score, lineno)))
    return SimilarityDataset(tuple(pairs))


_STRIP_PUNCT = string.punctuation


def tokenize_sentence(text: str) -> tuple[str, ...]:
    """Lowercase, split on whitespace, strip flanking ASCII punctuation."""
    tokens = []
    for raw in text.lower().split():
        tok = raw.strip(_STRIP_PUNCT)
        if tok:
            tokens.append(tok)
    return tuple(tokens)


def read_sts_dataset(path) -> StsDataset:
    """TSV rows: sentence_a, sentence_b, human score; sentences are tokenized."""
    pairs = []
    for lineno, line in _data_lines(path):
        a, b, score = _split_columns(line, lineno, 3)
        toks_a, toks_b = tokenize_sentence(a), tokenize_sentence(b)
        if not toks_a or not toks_b:
            raise MalformedLine("sentence is empty after tokenization", line=lineno)
        pairs.append(StsPair(toks_a, toks_b, _parse_score(score, lineno)))
    return StsDataset(tuple(pairs))


def read_category_dataset(path) -> CategoryDataset:
    """TSV rows: word, category. Every word may appear only once."""
    items = []
    seen = set()
    for lineno, line in _data_lines(path):
        word, category = _split_columns(line, lineno, 2)
        if word in seen:
            raise MalformedLine(f"duplicate word {word!r}", line=lineno)
        seen.add(word)
        items.append(CategoryItem(word, category))
    return CategoryDataset(tuple(items))


def read_token_list(path) -> list[str]:
    """One token per line; '#' comment lines and blank lines are skipped."""
    return [line.strip() for _, line in _data_lines(path)]
