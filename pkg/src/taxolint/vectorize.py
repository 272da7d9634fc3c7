"""TFIDF vectorization of category documents and their cosine similarities.

Vocabulary selection drops terms whose document frequency ratio is at or
above ``max_df`` (strictly-lower-than survives), ranks the survivors by
total collection frequency, and keeps the top ``top_k``.  Weights are raw
term frequency times smoothed idf, L2-normalized per row; the classic
``ln(N/df)`` idf stays available behind the config switch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import log
from pathlib import Path

import numpy as np

from .corpus import TermDocument
from .errors import DegenerateCorpusError, InsufficientInputError
from .similarity import SimilarityMatrix, SimilarityStats, similarity_stats


@dataclass(frozen=True)
class VectorizeConfig:
    max_df: float = 0.8
    top_k: int = 1000
    idf_variant: str = "smooth"  # smooth: ln((1+N)/(1+df))+1, classic: ln(N/df)

    def __post_init__(self) -> None:
        if not 0.0 < self.max_df <= 1.0:
            raise ValueError(f"max_df must be in (0, 1], got {self.max_df}")
        if self.top_k < 1:
            raise ValueError(f"top_k must be >= 1, got {self.top_k}")
        if self.idf_variant not in ("smooth", "classic"):
            raise ValueError(f"unknown idf variant {self.idf_variant!r}")

    def to_dict(self) -> dict:
        return {
            "max_df": self.max_df,
            "top_k": self.top_k,
            "idf_variant": self.idf_variant,
        }


def load_vectorize_config(path: str | Path | None = None) -> VectorizeConfig:
    """Load a JSON vectorize config; with no path, the built-in defaults."""
    if path is None:
        return VectorizeConfig()
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return VectorizeConfig(
        max_df=raw.get("max_df", 0.8),
        top_k=raw.get("top_k", 1000),
        idf_variant=raw.get("idf_variant", "smooth"),
    )


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    df: dict[str, int]
    n_docs: int


@dataclass(frozen=True, eq=False)
class TfidfMatrix:
    labels: tuple[str, ...]
    vocabulary: Vocabulary
    weights: np.ndarray  # rows L2-normalized; zero rows flagged below
    zero_labels: tuple[str, ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)


def build_vocabulary(
    docs: list[TermDocument] | tuple[TermDocument, ...], cfg: VectorizeConfig
) -> Vocabulary:
    """Document-frequency filter then top-k by total collection frequency."""
    if len(docs) < 2:
        raise InsufficientInputError(
            f"need at least 2 documents to build a vocabulary, have {len(docs)}"
        )
    n_docs = len(docs)
    df: dict[str, int] = {}
    total: dict[str, int] = {}
    for doc in docs:
        for term, count in doc.term_counts.items():
            df[term] = df.get(term, 0) + 1
            total[term] = total.get(term, 0) + count
    survivors = [t for t, d in df.items() if d / n_docs < cfg.max_df]
    if not survivors:
        raise DegenerateCorpusError(
            "no term survives the document-frequency filter "
            f"(max_df={cfg.max_df}, documents={n_docs})"
        )
    survivors.sort(key=lambda t: (-total[t], t))
    kept = tuple(survivors[: cfg.top_k])
    return Vocabulary(terms=kept, df={t: df[t] for t in kept}, n_docs=n_docs)


def _idf(df: int, n_docs: int, variant: str) -> float:
    if variant == "classic":
        return log(n_docs / df)
    return log((1 + n_docs) / (1 + df)) + 1.0


def tfidf_vectors(
    docs: list[TermDocument] | tuple[TermDocument, ...],
    vocab: Vocabulary,
    cfg: VectorizeConfig | None = None,
) -> TfidfMatrix:
    """Weight matrix tf*idf over the vocabulary, rows L2-normalized."""
    cfg = cfg or VectorizeConfig()
    idf = np.asarray(
        [_idf(vocab.df[t], vocab.n_docs, cfg.idf_variant) for t in vocab.terms]
    )
    column = {t: j for j, t in enumerate(vocab.terms)}
    weights = np.zeros((len(docs), len(vocab.terms)))
    for i, doc in enumerate(docs):
        for term, count in doc.term_counts.items():
            j = column.get(term)
            if j is not None:
                weights[i, j] = count * idf[j]
    norms = np.linalg.norm(weights, axis=1)
    zero_labels = tuple(doc.label for doc, nrm in zip(docs, norms) if nrm == 0.0)
    safe = np.where(norms == 0.0, 1.0, norms)
    weights = weights / safe[:, np.newaxis]
    warnings = tuple(
        f"document {label!r} has no in-vocabulary terms (zero vector)"
        for label in zero_labels
    )
    return TfidfMatrix(
        labels=tuple(doc.label for doc in docs),
        vocabulary=vocab,
        weights=weights,
        zero_labels=zero_labels,
        warnings=warnings,
    )


def category_similarity_matrix(m: TfidfMatrix) -> SimilarityMatrix:
    """Cosine between all document rows, plus mean/max off-diagonal summaries.

    Zero rows keep their place: similarity 0 to everything by convention.
    """
    if len(m.labels) < 2:
        raise InsufficientInputError("need at least 2 documents for similarities")
    values = m.weights @ m.weights.T
    nonzero = np.asarray([label not in set(m.zero_labels) for label in m.labels])
    for i, nz in enumerate(nonzero):
        values[i, i] = 1.0 if nz else 0.0
    values = (values + values.T) / 2.0
    size = len(m.labels)
    off = ~np.eye(size, dtype=bool)
    mean_row = np.asarray([values[i, off[i]].mean() for i in range(size)])
    max_row = np.asarray([values[i, off[i]].max() for i in range(size)])
    return SimilarityMatrix(
        names=m.labels,
        values=values,
        kind="category",
        zero_names=m.zero_labels,
        mean_row=mean_row,
        max_row=max_row,
        warnings=m.warnings,
    )


def corpus_similarity_stats(m: SimilarityMatrix) -> SimilarityStats:
    """Population mean and std over the upper-triangle off-diagonal entries."""
    return similarity_stats(m)
