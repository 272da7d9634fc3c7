"""Shared similarity-matrix type plus distribution statistics.

Both label embeddings and category TFIDF vectors reduce to the same object:
a symmetric matrix of cosines with names on both axes.  Rows that had no
content (all-zero vectors) keep their place with similarity 0 everywhere,
flagged via ``zero_names`` so downstream reports can call them out.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientInputError

_SYMMETRY_TOL = 1e-9
_DIAGONAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    names: tuple[str, ...]
    values: np.ndarray
    kind: str  # "label" or "category"
    zero_names: tuple[str, ...] = ()
    mean_row: np.ndarray | None = None
    max_row: np.ndarray | None = None
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        m = len(self.names)
        if self.values.shape != (m, m):
            raise ValueError(
                f"matrix shape {self.values.shape} does not match {m} names"
            )
        if self.kind not in ("label", "category"):
            raise ValueError(f"unknown matrix kind {self.kind!r}")
        if not np.allclose(self.values, self.values.T, atol=_SYMMETRY_TOL, rtol=0.0):
            raise ValueError("similarity matrix is not symmetric")
        zero = set(self.zero_names)
        for i, name in enumerate(self.names):
            expected = 0.0 if name in zero else 1.0
            if abs(self.values[i, i] - expected) > _DIAGONAL_TOL:
                raise ValueError(
                    f"diagonal entry for {name!r} is {self.values[i, i]}, "
                    f"expected {expected}"
                )
        self.values.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.names)

    def off_diagonal(self) -> np.ndarray:
        """Upper-triangle off-diagonal entries as a flat array."""
        iu = np.triu_indices(self.size, k=1)
        return self.values[iu]

    def submatrix(self, names: list[str] | tuple[str, ...]) -> "SimilarityMatrix":
        """Principal submatrix for a subset of names, preserving their order here."""
        index = {n: i for i, n in enumerate(self.names)}
        rows = [index[n] for n in names]
        sub = self.values[np.ix_(rows, rows)].copy()
        return SimilarityMatrix(
            names=tuple(names),
            values=sub,
            kind=self.kind,
            zero_names=tuple(n for n in self.zero_names if n in set(names)),
        )


@dataclass(frozen=True)
class SimilarityStats:
    """Population mean and standard deviation over off-diagonal entries."""

    mean: float
    std: float

    def to_dict(self) -> dict:
        return {"mean": self.mean, "std": self.std}


@dataclass(frozen=True)
class SimilarityDistribution:
    mean: float
    std: float
    min: float
    max: float
    q1: float
    median: float
    q3: float
    outlier_threshold: float
    outliers: tuple[tuple[str, str, float], ...]

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std": self.std,
            "min": self.min,
            "max": self.max,
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "outlier_threshold": self.outlier_threshold,
            "outliers": [
                {"pair": [a, b], "similarity": v} for a, b, v in self.outliers
            ],
        }


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity, 0.0 when either vector has zero norm."""
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def similarity_stats(m: SimilarityMatrix) -> SimilarityStats:
    """Mean +/- population std over upper-triangle off-diagonal entries."""
    vals = m.off_diagonal()
    if vals.size == 0:
        raise InsufficientInputError("matrix has no off-diagonal entries")
    return SimilarityStats(mean=float(vals.mean()), std=float(vals.std()))


def similarity_distribution(
    m: SimilarityMatrix, outlier_threshold: float = 0.45
) -> SimilarityDistribution:
    """Distribution stats over off-diagonal entries plus high-similarity pairs.

    Outliers are the pairs at or above ``outlier_threshold``, sorted by
    similarity descending (ties broken by the name pair) for determinism.
    """
    vals = m.off_diagonal()
    if vals.size == 0:
        raise InsufficientInputError("matrix has no off-diagonal entries")
    q1, median, q3 = (float(q) for q in np.percentile(vals, [25, 50, 75]))
    pairs: list[tuple[str, str, float]] = []
    for i in range(m.size):
        for j in range(i + 1, m.size):
            v = float(m.values[i, j])
            if v >= outlier_threshold:
                pairs.append((m.names[i], m.names[j], v))
    pairs.sort(key=lambda p: (-p[2], p[0], p[1]))
    return SimilarityDistribution(
        mean=float(vals.mean()),
        std=float(vals.std()),
        min=float(vals.min()),
        max=float(vals.max()),
        q1=q1,
        median=median,
        q3=q3,
        outlier_threshold=outlier_threshold,
        outliers=tuple(pairs),
    )
