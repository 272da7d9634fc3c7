"""Ingest, validate, and model classification datasets in CSV form.

The CSV schema uses the column names of published replication packages:
``project.name``, ``project.desc``, ``project.link``, ``category``,
``category.desc``, ``label``.  Only ``project.name`` and ``category`` are
required.  Unknown extra columns are kept as opaque per-project metadata and
round-trip through serialization untouched.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import EmptyInputError, SchemaError, ValidationError

SCHEMA_COLUMNS = (
    "project.name",
    "project.desc",
    "project.link",
    "category",
    "category.desc",
    "label",
)
REQUIRED_COLUMNS = ("project.name", "category")

# Delimiter for several labels inside one ``label`` cell (multi-label arity).
MULTI_LABEL_DELIMITER = "|"


class AnnotationArity(str, Enum):
    SINGLE_LABEL = "single_label"
    MULTI_LABEL = "multi_label"


@dataclass(frozen=True)
class Project:
    """One annotated software project."""

    name: str
    description: str = ""
    url: str = ""
    original_category: str = ""
    label: str = ""
    category_description: str = ""
    source_root: Path | None = None
    extra: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if not self.name:
            raise ValidationError("project name must be non-empty")
        if not self.original_category:
            raise ValidationError(f"project {self.name!r}: category must be non-empty")

    @property
    def labels(self) -> tuple[str, ...]:
        """Effective labels: the ``label`` cell when present, else the category."""
        if not self.label:
            return (self.original_category,)
        parts = [p.strip() for p in self.label.split(MULTI_LABEL_DELIMITER)]
        return tuple(p for p in parts if p)


@dataclass(frozen=True)
class ClassificationDataset:
    projects: tuple[Project, ...]
    label_universe: tuple[str, ...]
    annotation_arity: AnnotationArity

    @classmethod
    def from_projects(
        cls, projects: list[Project] | tuple[Project, ...], arity: AnnotationArity
    ) -> "ClassificationDataset":
        """Build a dataset, collecting labels in first-appearance order."""
        universe: dict[str, None] = {}
        for i, project in enumerate(projects):
            labels = project.labels
            if arity is AnnotationArity.SINGLE_LABEL and len(labels) != 1:
                raise ValidationError(
                    f"project {project.name!r} (index {i}) carries {len(labels)} "
                    "labels but the dataset arity is single_label"
                )
            if not labels:
                raise ValidationError(
                    f"project {project.name!r} (index {i}) carries no labels"
                )
            for label in labels:
                universe.setdefault(label, None)
        return cls(tuple(projects), tuple(universe), arity)

    def __len__(self) -> int:
        return len(self.projects)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of scanning a CSV without constructing the dataset."""

    errors: tuple[tuple[int, str], ...] = ()
    warnings: tuple[tuple[int, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


@dataclass
class _Scan:
    projects: list[Project] = field(default_factory=list)
    errors: list[tuple[int, str]] = field(default_factory=list)
    warnings: list[tuple[int, str]] = field(default_factory=list)
    missing_columns: list[str] = field(default_factory=list)
    empty: bool = False


def _scan_csv(csv_bytes: bytes, arity: AnnotationArity) -> _Scan:
    scan = _Scan()
    text = csv_bytes.decode("utf-8")
    if not text.strip():
        scan.empty = True
        return scan

    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    scan.missing_columns = [c for c in REQUIRED_COLUMNS if c not in header]
    if scan.missing_columns:
        for column in scan.missing_columns:
            scan.errors.append((1, f"missing required column {column!r}"))
        return scan

    extra_columns = [c for c in header if c not in SCHEMA_COLUMNS]
    seen: dict[tuple[str, str], int] = {}
    # Row numbers are 1-based file rows; the header is row 1.
    for row_no, row in enumerate(reader, start=2):
        name = (row.get("project.name") or "").strip()
        category = (row.get("category") or "").strip()
        label = (row.get("label") or "").strip()
        if not name:
            scan.errors.append((row_no, "project.name is empty"))
            continue
        if not category:
            scan.errors.append((row_no, f"category is empty for project {name!r}"))
            continue
        key = (name, category)
        if key in seen:
            scan.errors.append(
                (row_no, f"duplicate (name, category) {key!r}, first seen at row {seen[key]}")
            )
            continue
        seen[key] = row_no
        if (
            arity is AnnotationArity.SINGLE_LABEL
            and MULTI_LABEL_DELIMITER in label
        ):
            scan.errors.append(
                (row_no, f"multi-label cell {label!r} in a single_label dataset")
            )
            continue
        scan.projects.append(
            Project(
                name=name,
                description=(row.get("project.desc") or "").strip(),
                url=(row.get("project.link") or "").strip(),
                original_category=category,
                label=label,
                category_description=(row.get("category.desc") or "").strip(),
                extra=tuple((c, (row.get(c) or "").strip()) for c in sorted(extra_columns)),
            )
        )
    if not scan.projects and not scan.errors:
        scan.empty = True
    return scan


def validate_dataset(
    csv_bytes: bytes, arity: AnnotationArity = AnnotationArity.SINGLE_LABEL
) -> ValidationReport:
    """Scan a CSV and report problems without raising."""
    try:
        scan = _scan_csv(csv_bytes, arity)
    except UnicodeDecodeError as exc:
        return ValidationReport(errors=((0, f"not valid UTF-8: {exc}"),))
    if scan.empty:
        return ValidationReport(errors=((0, "empty input"),))
    return ValidationReport(errors=tuple(scan.errors), warnings=tuple(scan.warnings))


def parse_dataset(
    csv_bytes: bytes, arity: AnnotationArity = AnnotationArity.SINGLE_LABEL
) -> ClassificationDataset:
    """Parse CSV bytes into a dataset, raising on any validation problem."""
    scan = _scan_csv(csv_bytes, arity)
    if scan.empty:
        raise EmptyInputError("dataset CSV contains no data rows")
    if scan.missing_columns:
        raise SchemaError(
            "missing required column(s): " + ", ".join(scan.missing_columns)
        )
    if scan.errors:
        details = "; ".join(f"row {r}: {m}" for r, m in scan.errors)
        raise ValidationError(details)
    return ClassificationDataset.from_projects(scan.projects, arity)


def serialize_dataset(ds: ClassificationDataset) -> bytes:
    """Emit the dataset as CSV in schema column order (extras appended sorted)."""
    extra_columns = sorted({k for p in ds.projects for k, _ in p.extra})
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(list(SCHEMA_COLUMNS) + extra_columns)
    for p in ds.projects:
        extras = dict(p.extra)
        writer.writerow(
            [
                p.name,
                p.description,
                p.url,
                p.original_category,
                p.category_description,
                p.label,
            ]
            + [extras.get(c, "") for c in extra_columns]
        )
    return out.getvalue().encode("utf-8")


def class_distribution(ds: ClassificationDataset, field_name: str) -> dict[str, int]:
    """Count (project, label) pairs per label, descending, ties lexicographic.

    ``field_name`` selects ``original_category`` or ``label`` (the effective,
    possibly reduced, labels).
    """
    if field_name not in ("original_category", "label"):
        raise ValueError(f"unknown field {field_name!r}")
    if not ds.projects:
        raise EmptyInputError("cannot compute a class distribution of an empty dataset")
    counts: dict[str, int] = {}
    for p in ds.projects:
        keys = (p.original_category,) if field_name == "original_category" else p.labels
        for key in keys:
            counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))
