"""Hierarchical label reduction, before/after comparison, level voting.

A mapping file is a two-column CSV ``original,path`` where the path chains
intermediate logical classes down to the final label ("NLP, AI > STEM").
Intermediates appear in provenance only; they never create dataset rows.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, replace

from .dataset import ClassificationDataset, class_distribution
from .errors import (
    ComparabilityError,
    CoverageError,
    EmptyInputError,
    FormatError,
    MappingConflictError,
)
from .lint import AntipatternReport
from .metrics import DatasetSummary
from .similarity import SimilarityStats

_PATH_SEPARATORS = ("→", ">")  # arrow or greater-than chains


@dataclass(frozen=True)
class MappingPath:
    original: str
    intermediates: tuple[str, ...]
    final: str

    def __post_init__(self) -> None:
        chain = [self.original, *self.intermediates, self.final]
        if len(set(chain)) != len(chain) and not (
            len(chain) == 2 and self.original == self.final
        ):
            raise FormatError(f"mapping path for {self.original!r} repeats an element")

    @property
    def chain(self) -> tuple[str, ...]:
        return (self.original, *self.intermediates, self.final)


@dataclass(frozen=True)
class LabelMapping:
    entries: dict[str, MappingPath]
    final_universe: tuple[str, ...]

    @classmethod
    def from_paths(cls, paths: list[MappingPath] | tuple[MappingPath, ...]) -> "LabelMapping":
        entries: dict[str, MappingPath] = {}
        finals: dict[str, None] = {}
        for path in paths:
            if path.original in entries:
                raise MappingConflictError(
                    f"original label {path.original!r} is mapped twice"
                )
            entries[path.original] = path
            finals.setdefault(path.final, None)
        return cls(entries=entries, final_universe=tuple(finals))


def _split_path(cell: str) -> list[str]:
    for sep in _PATH_SEPARATORS:
        if sep in cell:
            return [p.strip() for p in cell.split(sep)]
    return [cell.strip()]


def parse_mapping(csv_bytes: bytes) -> LabelMapping:
    """Parse a mapping CSV with header ``original,path``."""
    text = csv_bytes.decode("utf-8")
    if not text.strip():
        raise EmptyInputError("mapping CSV is empty")
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    if "original" not in header or "path" not in header:
        raise FormatError("mapping CSV must have columns 'original' and 'path'")
    paths: list[MappingPath] = []
    for row_no, row in enumerate(reader, start=2):
        original = (row.get("original") or "").strip()
        cell = (row.get("path") or "").strip()
        if not original:
            raise FormatError(f"row {row_no}: empty original label")
        steps = [s for s in _split_path(cell) if s]
        if not steps:
            raise FormatError(f"row {row_no}: empty path for {original!r}")
        paths.append(
            MappingPath(original=original, intermediates=tuple(steps[:-1]), final=steps[-1])
        )
    if not paths:
        raise EmptyInputError("mapping CSV contains no rows")
    return LabelMapping.from_paths(paths)


def serialize_mapping(mapping: LabelMapping) -> bytes:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["original", "path"])
    for original, path in mapping.entries.items():
        writer.writerow([original, " > ".join([*path.intermediates, path.final])])
    return out.getvalue().encode("utf-8")


def apply_mapping(ds: ClassificationDataset, mapping: LabelMapping) -> ClassificationDataset:
    """Relabel every project with its original category's final label.

    The mapping must cover every original category present in the dataset;
    a partial mapping fails fast instead of silently creating a sink bucket.
    """
    missing = sorted(
        {p.original_category for p in ds.projects} - set(mapping.entries)
    )
    if missing:
        raise CoverageError(missing)
    projects = [
        replace(p, label=mapping.entries[p.original_category].final) for p in ds.projects
    ]
    return ClassificationDataset.from_projects(projects, ds.annotation_arity)


def provenance(ds_after: ClassificationDataset, mapping: LabelMapping) -> dict[str, dict[str, int]]:
    """Per final label: which originals merged into it, with project counts."""
    merged: dict[str, Counter] = {}
    for p in ds_after.projects:
        final = mapping.entries[p.original_category].final
        merged.setdefault(final, Counter())[p.original_category] += 1
    return {
        final: dict(sorted(originals.items()))
        for final, originals in sorted(merged.items())
    }


def compose_mappings(first: LabelMapping, second: LabelMapping) -> LabelMapping:
    """Mapping equivalent to applying ``first`` then ``second`` (paths concatenated)."""
    paths = []
    missing = sorted(
        {p.final for p in first.entries.values()} - set(second.entries)
    )
    if missing:
        raise CoverageError(missing)
    for original, path in first.entries.items():
        tail = second.entries[path.final]
        mids = [*path.intermediates, path.final, *tail.intermediates]
        # Collapse aliasing steps so chains never repeat an element.
        chain: list[str] = [original]
        for step in [*mids, tail.final]:
            if step != chain[-1]:
                chain.append(step)
        paths.append(
            MappingPath(original=original, intermediates=tuple(chain[1:-1]), final=chain[-1])
        )
    return LabelMapping.from_paths(paths)


@dataclass(frozen=True)
class AnalyzedDataset:
    """One dataset plus the analysis artifacts a comparison needs."""

    dataset: ClassificationDataset
    summary: DatasetSummary
    antipatterns: AntipatternReport
    similarity_stats: SimilarityStats | None = None
    config_fingerprint: str = ""


@dataclass(frozen=True)
class ComparisonReport:
    before_summary: DatasetSummary
    after_summary: DatasetSummary
    before_stats: SimilarityStats | None
    after_stats: SimilarityStats | None
    before_antipatterns: dict[str, bool]
    after_antipatterns: dict[str, bool]
    provenance: dict[str, dict[str, int]]

    def to_dict(self) -> dict:
        return {
            "before": {
                "summary": self.before_summary.to_dict(),
                "similarity_stats": self.before_stats.to_dict() if self.before_stats else None,
                "antipatterns": dict(self.before_antipatterns),
            },
            "after": {
                "summary": self.after_summary.to_dict(),
                "similarity_stats": self.after_stats.to_dict() if self.after_stats else None,
                "antipatterns": dict(self.after_antipatterns),
            },
            "deltas": {
                "examples": self.after_summary.examples - self.before_summary.examples,
                "categories": self.after_summary.categories - self.before_summary.categories,
                "balance": self.after_summary.balance - self.before_summary.balance,
                "mean_similarity": (
                    self.after_stats.mean - self.before_stats.mean
                    if self.before_stats and self.after_stats
                    else None
                ),
            },
            "provenance": {k: dict(v) for k, v in self.provenance.items()},
        }


def compare(
    before: AnalyzedDataset, after: AnalyzedDataset, mapping: LabelMapping
) -> ComparisonReport:
    """Before/after comparison; both sides must share one configuration."""
    if before.config_fingerprint != after.config_fingerprint:
        raise ComparabilityError(
            "before/after sides were analyzed under different configurations: "
            f"{before.config_fingerprint!r} != {after.config_fingerprint!r}"
        )
    prov = provenance(after.dataset, mapping)
    after_counts = class_distribution(after.dataset, "label")
    for final, originals in prov.items():
        if sum(originals.values()) != after_counts.get(final, 0):
            raise ValueError(f"provenance counts for {final!r} do not sum to its class count")
    return ComparisonReport(
        before_summary=before.summary,
        after_summary=after.summary,
        before_stats=before.similarity_stats,
        after_stats=after.similarity_stats,
        before_antipatterns=dict(before.antipatterns.summary),
        after_antipatterns=dict(after.antipatterns.summary),
        provenance=prov,
    )


@dataclass(frozen=True)
class LevelRating:
    label: str
    annotator: str
    level: int

    def __post_init__(self) -> None:
        if not 1 <= self.level <= 5:
            raise ValueError(f"level must be in [1, 5], got {self.level}")


def parse_level_ratings(csv_bytes: bytes) -> list[LevelRating]:
    """Parse a ratings CSV with header ``label,annotator,level``."""
    text = csv_bytes.decode("utf-8")
    if not text.strip():
        raise EmptyInputError("ratings CSV is empty")
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    for column in ("label", "annotator", "level"):
        if column not in header:
            raise FormatError(f"ratings CSV is missing column {column!r}")
    ratings = []
    for row_no, row in enumerate(reader, start=2):
        try:
            level = int((row.get("level") or "").strip())
        except ValueError as exc:
            raise FormatError(f"row {row_no}: level is not an integer") from exc
        ratings.append(
            LevelRating(
                label=(row.get("label") or "").strip(),
                annotator=(row.get("annotator") or "").strip(),
                level=level,
            )
        )
    return ratings


def aggregate_levels(
    ratings: list[LevelRating] | tuple[LevelRating, ...], mode: str = "majority"
) -> dict[str, int | None]:
    """Per-label taxonomy level by vote; None when no winner.

    ``majority`` requires strictly more than half the ratings; ``plurality``
    takes the most common level, None only on ties.
    """
    if mode not in ("majority", "plurality"):
        raise ValueError(f"unknown aggregation mode {mode!r}")
    by_label: dict[str, list[int]] = {}
    for rating in ratings:
        by_label.setdefault(rating.label, []).append(rating.level)
    result: dict[str, int | None] = {}
    for label, levels in by_label.items():
        counts = Counter(levels)
        level, top = counts.most_common(1)[0]
        if mode == "majority":
            result[label] = level if top * 2 > len(levels) else None
        else:
            tied = [lv for lv, c in counts.items() if c == top]
            result[label] = level if len(tied) == 1 else None
    return result
