"""Dataset summary statistics: examples, categories, balance, min, max.

Balance is the Shannon Diversity Index (normalized class entropy): the
entropy of the class-size distribution divided by ``log k``, so 1 means all
classes have the same size and 0 means one class holds everything.  The
logarithm base cancels between numerator and denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dataset import ClassificationDataset, class_distribution
from .errors import DegenerateInputError, EmptyInputError


@dataclass(frozen=True)
class ClassCounts:
    """Per-category example counts.  Zero counts are allowed and count toward k."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.counts:
            raise EmptyInputError("ClassCounts needs at least one category")
        if any(c < 0 for c in self.counts):
            raise ValueError("class counts must be nonnegative")

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def k(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class DatasetSummary:
    examples: int
    categories: int
    balance: float
    min: int
    max: int

    def to_dict(self) -> dict:
        return {
            "examples": self.examples,
            "categories": self.categories,
            "balance": self.balance,
            "min": self.min,
            "max": self.max,
        }


def balance(cc: ClassCounts, log=math.log) -> float:
    """Normalized class entropy of the counts, in [0, 1].

    ``log`` is injectable only to let tests confirm base invariance; results
    are identical for any base.
    """
    if cc.k < 2:
        raise DegenerateInputError(
            "single category: balance undefined, denominator log 1 = 0"
        )
    if cc.n == 0:
        raise EmptyInputError("balance of an empty dataset is undefined")
    n = cc.n
    entropy = -sum((c / n) * log(c / n) for c in cc.counts if c > 0)
    value = entropy / log(cc.k)
    return min(1.0, max(0.0, value))


def summary(ds: ClassificationDataset, field_name: str) -> DatasetSummary:
    """Summary row for one dataset: examples, categories, balance, min, max."""
    if not ds.projects:
        raise EmptyInputError("cannot summarize an empty dataset")
    dist = class_distribution(ds, field_name)
    counts = tuple(dist.values())
    return DatasetSummary(
        examples=len(ds.projects),
        categories=len(counts),
        balance=balance(ClassCounts(counts)),
        min=min(counts),
        max=max(counts),
    )
