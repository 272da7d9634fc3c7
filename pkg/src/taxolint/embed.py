"""Pre-trained word vectors and label-by-label cosine similarity.

Vector files are the plain-text release format: an optional ``count dim``
header line, then one ``word v1 ... vd`` row per word.  A label embeds as
the mean of its words' L2-normalized vectors; words missing from the table
are dropped and recorded, and a label with no known words at all is flagged
unembeddable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyInputError, FormatError, InsufficientInputError
from .similarity import SimilarityMatrix

_LABEL_SPLIT = re.compile(r"[\s\-/_]+")


@dataclass(frozen=True, eq=False)
class EmbeddingTable:
    dimension: int
    entries: dict[str, np.ndarray]
    warnings: tuple[str, ...] = ()

    @property
    def vocabulary_size(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """Load a word-vector text file, keeping the first of any duplicate word."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise EmptyInputError(f"embedding file {path} is empty")

    start = 0
    declared_dim: int | None = None
    head = lines[0].split()
    if len(head) == 2:
        try:
            _, declared_dim = int(head[0]), int(head[1])
            start = 1
        except ValueError:
            pass

    entries: dict[str, np.ndarray] = {}
    warnings: list[str] = []
    dim = declared_dim
    for line_no, line in enumerate(lines[start:], start=start + 1):
        parts = line.rstrip().split(" ")
        word, components = parts[0], parts[1:]
        if dim is None:
            dim = len(components)
            if dim == 0:
                raise FormatError(f"line {line_no}: no vector components")
        if len(components) != dim:
            raise FormatError(
                f"line {line_no}: expected {dim} components, found {len(components)}"
            )
        try:
            vector = np.asarray([float(c) for c in components], dtype=np.float64)
        except ValueError as exc:
            raise FormatError(f"line {line_no}: {exc}") from exc
        if word in entries:
            warnings.append(f"duplicate word {word!r} at line {line_no}; keeping first")
            continue
        vector.setflags(write=False)
        entries[word] = vector
    if not entries:
        raise EmptyInputError(f"embedding file {path} holds no vectors")
    return EmbeddingTable(dimension=dim, entries=entries, warnings=tuple(warnings))


@dataclass(frozen=True, eq=False)
class LabelVector:
    label: str
    vector: np.ndarray
    oov_words: tuple[str, ...] = ()

    @property
    def embeddable(self) -> bool:
        return bool(np.any(self.vector))


def split_label_words(label: str) -> list[str]:
    """Lowercase and split on whitespace, '-', '/', and '_'."""
    return [w for w in _LABEL_SPLIT.split(label.lower()) if w]


def embed_label(label: str, table: EmbeddingTable) -> LabelVector:
    """Mean of the L2-normalized vectors of the label's in-vocabulary words."""
    if not label or not label.strip():
        raise EmptyInputError("cannot embed an empty label")
    words = split_label_words(label)
    known: list[np.ndarray] = []
    oov: list[str] = []
    for word in words:
        vec = table.entries.get(word)
        if vec is None:
            oov.append(word)
            continue
        norm = float(np.linalg.norm(vec))
        known.append(vec / norm if norm else vec)
    if not known:
        return LabelVector(label, np.zeros(table.dimension), oov_words=tuple(oov))
    return LabelVector(label, np.mean(known, axis=0), oov_words=tuple(oov))


def label_similarity_matrix(
    labels: list[str] | tuple[str, ...], table: EmbeddingTable
) -> SimilarityMatrix:
    """Pairwise cosine between embeddable labels; the rest are excluded."""
    embedded: list[LabelVector] = []
    excluded: list[str] = []
    partial: list[str] = []
    for label in labels:
        lv = embed_label(label, table)
        if lv.embeddable:
            embedded.append(lv)
            if lv.oov_words:
                partial.append(label)
        else:
            excluded.append(label)
    if len(embedded) < 2:
        raise InsufficientInputError(
            f"need at least 2 embeddable labels, have {len(embedded)}"
        )
    vectors = np.stack([lv.vector for lv in embedded])
    norms = np.linalg.norm(vectors, axis=1, keepdims=True)
    unit = vectors / norms
    values = unit @ unit.T
    np.fill_diagonal(values, 1.0)
    values = (values + values.T) / 2.0  # kill float asymmetry
    warnings = tuple(
        [f"unembeddable label excluded: {lb!r}" for lb in excluded]
        + [f"label {lb!r} embedded with out-of-vocabulary words dropped" for lb in partial]
    )
    return SimilarityMatrix(
        names=tuple(lv.label for lv in embedded),
        values=values,
        kind="label",
        warnings=warnings,
    )
