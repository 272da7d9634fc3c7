"""Detectors for the seven classification antipatterns.

Codes: MT mixed taxonomies, MG mixed granularity, SC single category,
NE non-exhaustive categories, NRC non-relevant categories, UJC unnecessarily
joined categories, SKC sink category.  Detectors are pure functions of the
label set / dataset plus a config whose lexicons make the human knowledge
behind MT, NE, and SKC explicit and editable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import IntEnum
from importlib import resources
from pathlib import Path

import numpy as np

from .dataset import AnnotationArity, ClassificationDataset, class_distribution
from .embed import EmbeddingTable, embed_label, label_similarity_matrix
from .errors import InsufficientInputError
from .similarity import SimilarityMatrix, cosine

CODE_ORDER = ("MT", "MG", "SC", "NE", "NRC", "UJC", "SKC")

_UJC_PATTERNS = (
    re.compile(r"(?i)(?<![A-Za-z])[A-Za-z]{2,} and [A-Za-z]{2,}"),
    re.compile(r"(?<![A-Za-z])[A-Za-z]{2,} & [A-Za-z]{2,}"),
    re.compile(r"(?<![A-Za-z])[A-Za-z]{2,}/[A-Za-z]{2,}"),
)

_WORD_SPLIT = re.compile(r"[\s\-/_]+")


class Severity(IntEnum):
    INFO = 0
    WARNING = 1
    VIOLATION = 2

    def __str__(self) -> str:  # report-friendly form
        return self.name.lower()


@dataclass(frozen=True)
class AntipatternFinding:
    code: str
    subjects: tuple[str, ...]
    severity: Severity
    evidence: str
    metric: float | None = None

    def __post_init__(self) -> None:
        if self.code not in CODE_ORDER:
            raise ValueError(f"unknown antipattern code {self.code!r}")
        if not self.subjects:
            raise ValueError("a finding needs at least one subject")
        if not self.evidence:
            raise ValueError("a finding needs evidence text")

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "subjects": list(self.subjects),
            "severity": str(self.severity),
            "evidence": self.evidence,
            "metric": self.metric,
        }


@dataclass(frozen=True)
class LintConfig:
    technology_lexicon: frozenset[str] = frozenset()
    sink_lexicon: frozenset[str] = frozenset()
    sink_share_threshold: float = 0.20
    mg_similarity_threshold: float = 0.45
    nrc_centroid_threshold: float = 0.05
    sibling_sets: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self) -> None:
        for name in ("sink_share_threshold", "mg_similarity_threshold", "nrc_centroid_threshold"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must be in (0, 1), got {value}")
        object.__setattr__(
            self, "technology_lexicon", frozenset(w.lower() for w in self.technology_lexicon)
        )
        object.__setattr__(
            self, "sink_lexicon", frozenset(w.lower() for w in self.sink_lexicon)
        )

    def to_dict(self) -> dict:
        return {
            "technology_lexicon": sorted(self.technology_lexicon),
            "sink_lexicon": sorted(self.sink_lexicon),
            "sink_share_threshold": self.sink_share_threshold,
            "mg_similarity_threshold": self.mg_similarity_threshold,
            "nrc_centroid_threshold": self.nrc_centroid_threshold,
            "sibling_sets": [list(s) for s in self.sibling_sets],
        }


def load_lint_config(path: str | Path | None = None) -> LintConfig:
    """Load a JSON lint config; with no path, the packaged defaults."""
    if path is None:
        text = resources.files("taxolint.data").joinpath("lint_default.json").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    raw = json.loads(text)
    return LintConfig(
        technology_lexicon=frozenset(raw.get("technology_lexicon", ())),
        sink_lexicon=frozenset(raw.get("sink_lexicon", ())),
        sink_share_threshold=raw.get("sink_share_threshold", 0.20),
        mg_similarity_threshold=raw.get("mg_similarity_threshold", 0.45),
        nrc_centroid_threshold=raw.get("nrc_centroid_threshold", 0.05),
        sibling_sets=tuple(tuple(s) for s in raw.get("sibling_sets", ())),
    )


def _label_words(label: str) -> frozenset[str]:
    return frozenset(w for w in _WORD_SPLIT.split(label.lower()) if w)


def detect_mt(labels: list[str] | tuple[str, ...], cfg: LintConfig) -> list[AntipatternFinding]:
    """Labels that name technologies (languages, frameworks, services)."""
    matches = [lb for lb in labels if lb.strip().lower() in cfg.technology_lexicon]
    mixed = len(matches) < len(list(labels))
    severity = Severity.VIOLATION if mixed else Severity.INFO
    return [
        AntipatternFinding(
            code="MT",
            subjects=(lb,),
            severity=severity,
            evidence=f"label {lb!r} matches the technology lexicon"
            + ("; domain labels coexist in the set" if mixed else ""),
        )
        for lb in matches
    ]


def detect_mg(
    labels: list[str] | tuple[str, ...],
    label_sims: SimilarityMatrix | None,
    cfg: LintConfig,
) -> list[AntipatternFinding]:
    """IS-A pairs: word-set containment (rule A) or high similarity (rule B)."""
    findings: list[AntipatternFinding] = []
    labels = list(labels)
    for i, a in enumerate(labels):
        words_a = _label_words(a)
        for b in labels[i + 1 :]:
            words_b = _label_words(b)
            if words_a and words_b and words_a != words_b:
                if words_b < words_a:
                    specific, general = a, b
                elif words_a < words_b:
                    specific, general = b, a
                else:
                    continue
                findings.append(
                    AntipatternFinding(
                        code="MG",
                        subjects=(specific, general),
                        severity=Severity.VIOLATION,
                        evidence=(
                            f"rule A: {specific!r} word set strictly contains "
                            f"{general!r} (surface IS-A)"
                        ),
                    )
                )
    if label_sims is not None:
        present = set(labels)
        names = label_sims.names
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                if names[i] not in present or names[j] not in present:
                    continue
                value = float(label_sims.values[i, j])
                if value >= cfg.mg_similarity_threshold:
                    a, b = sorted((names[i], names[j]))
                    findings.append(
                        AntipatternFinding(
                            code="MG",
                            subjects=(a, b),
                            severity=Severity.WARNING,
                            evidence=(
                                f"rule B: similarity {value:.4f} >= "
                                f"{cfg.mg_similarity_threshold}"
                            ),
                            metric=value,
                        )
                    )
    return findings


def detect_sc(ds: ClassificationDataset) -> list[AntipatternFinding]:
    """Single-category annotation, declared or de facto."""
    if ds.annotation_arity is AnnotationArity.SINGLE_LABEL:
        return [
            AntipatternFinding(
                code="SC",
                subjects=("<dataset>",),
                severity=Severity.VIOLATION,
                evidence="annotation arity is single_label",
            )
        ]
    if ds.projects and all(len(p.labels) == 1 for p in ds.projects):
        return [
            AntipatternFinding(
                code="SC",
                subjects=("<dataset>",),
                severity=Severity.VIOLATION,
                evidence="degenerate multi-label: every project has exactly one label",
            )
        ]
    return []


def detect_ne(labels: list[str] | tuple[str, ...], cfg: LintConfig) -> list[AntipatternFinding]:
    """Sibling sets with partial coverage: some members present, some missing."""
    present_lower = {lb.strip().lower() for lb in labels}
    findings: list[AntipatternFinding] = []
    for siblings in cfg.sibling_sets:
        present = [s for s in siblings if s.strip().lower() in present_lower]
        missing = [s for s in siblings if s.strip().lower() not in present_lower]
        if present and missing:
            findings.append(
                AntipatternFinding(
                    code="NE",
                    subjects=tuple(sorted(present)),
                    severity=Severity.WARNING,
                    evidence=(
                        "sibling set partially covered: present "
                        f"{sorted(present)}, missing {sorted(missing)}"
                    ),
                )
            )
    return findings


def detect_nrc(
    labels: list[str] | tuple[str, ...],
    label_vectors: dict[str, np.ndarray],
    cfg: LintConfig,
) -> list[AntipatternFinding]:
    """Labels whose mean similarity to the rest falls below the dual gate."""
    embeddable = [lb for lb in labels if lb in label_vectors]
    if len(embeddable) < 3:
        raise InsufficientInputError(
            f"NRC needs at least 3 embeddable labels, have {len(embeddable)}"
        )
    means: dict[str, float] = {}
    for a in embeddable:
        sims = [cosine(label_vectors[a], label_vectors[b]) for b in embeddable if b != a]
        means[a] = float(np.mean(sims))
    values = np.asarray(list(means.values()))
    threshold = max(cfg.nrc_centroid_threshold, float(values.mean() - 2.0 * values.std()))
    return [
        AntipatternFinding(
            code="NRC",
            subjects=(lb,),
            severity=Severity.WARNING,
            evidence=(
                f"mean similarity to other labels {mean:.4f} below threshold "
                f"{threshold:.4f}"
            ),
            metric=mean,
        )
        for lb, mean in means.items()
        if mean < threshold
    ]


def detect_ujc(labels: list[str] | tuple[str, ...]) -> list[AntipatternFinding]:
    """Labels joining two alphabetic segments with 'and', '&', or '/'."""
    findings: list[AntipatternFinding] = []
    for label in labels:
        for pattern in _UJC_PATTERNS:
            match = pattern.search(label)
            if match:
                findings.append(
                    AntipatternFinding(
                        code="UJC",
                        subjects=(label,),
                        severity=Severity.WARNING,
                        evidence=f"conjunction in label: {match.group(0)!r}",
                    )
                )
                break
    return findings


def detect_skc(
    ds: ClassificationDataset, cfg: LintConfig, field_name: str = "label"
) -> list[AntipatternFinding]:
    """Sink labels by lexicon, escalating when their class share is large."""
    dist = class_distribution(ds, field_name)
    total = sum(dist.values())
    findings: list[AntipatternFinding] = []
    for label, count in dist.items():
        if label.strip().lower() not in cfg.sink_lexicon:
            continue
        share = count / total
        severity = (
            Severity.VIOLATION if share >= cfg.sink_share_threshold else Severity.WARNING
        )
        findings.append(
            AntipatternFinding(
                code="SKC",
                subjects=(label,),
                severity=severity,
                evidence=(
                    f"sink label holds {count}/{total} annotations "
                    f"(share {share:.4f}, threshold {cfg.sink_share_threshold})"
                ),
                metric=share,
            )
        )
    return findings


@dataclass(frozen=True)
class AntipatternReport:
    findings: tuple[AntipatternFinding, ...]
    summary: dict[str, bool]
    coverage_notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def has_violations(self) -> bool:
        return any(f.severity is Severity.VIOLATION for f in self.findings)

    def to_dict(self) -> dict:
        return {
            "findings": [f.to_dict() for f in self.findings],
            "summary": dict(self.summary),
            "coverage_notes": list(self.coverage_notes),
        }

    def to_table(self) -> str:
        """Compact presence table mirroring the survey-style summary rows."""
        header = "  ".join(f"{c:>4}" for c in CODE_ORDER)
        marks = "  ".join(f"{'x' if self.summary[c] else '':>4}" for c in CODE_ORDER)
        return header + "\n" + marks


def _distinct_field_labels(ds: ClassificationDataset, field_name: str) -> list[str]:
    seen: dict[str, None] = {}
    for p in ds.projects:
        keys = (p.original_category,) if field_name == "original_category" else p.labels
        for key in keys:
            seen.setdefault(key, None)
    return list(seen)


def lint_all(
    ds: ClassificationDataset,
    embeddings: EmbeddingTable | None = None,
    cfg: LintConfig | None = None,
    field_name: str = "label",
) -> AntipatternReport:
    """Run all seven detectors over one dataset's labels.

    Detectors that need embeddings (MG rule B, NRC) degrade to their lexical
    parts when no table is given, with a coverage note in the report.
    """
    cfg = cfg or load_lint_config()
    labels = _distinct_field_labels(ds, field_name)
    notes: list[str] = []

    label_sims: SimilarityMatrix | None = None
    label_vectors: dict[str, np.ndarray] = {}
    if embeddings is not None:
        for label in labels:
            lv = embed_label(label, embeddings)
            if lv.embeddable:
                label_vectors[label] = lv.vector
        try:
            label_sims = label_similarity_matrix(labels, embeddings)
        except InsufficientInputError as exc:
            notes.append(f"label similarity unavailable: {exc}")
    else:
        notes.append("MG rule B skipped: no embeddings provided")
        notes.append("NRC skipped: no embeddings provided")

    findings: list[AntipatternFinding] = []
    findings.extend(detect_mt(labels, cfg))
    findings.extend(detect_mg(labels, label_sims, cfg))
    findings.extend(detect_sc(ds))
    findings.extend(detect_ne(labels, cfg))
    if embeddings is not None:
        try:
            findings.extend(detect_nrc(labels, label_vectors, cfg))
        except InsufficientInputError as exc:
            notes.append(f"NRC skipped: {exc}")
    findings.extend(detect_ujc(labels))
    findings.extend(detect_skc(ds, cfg, field_name))

    findings.sort(key=lambda f: (CODE_ORDER.index(f.code), f.subjects))
    summary = {
        code: any(
            f.code == code and f.severity >= Severity.WARNING for f in findings
        )
        for code in CODE_ORDER
    }
    return AntipatternReport(
        findings=tuple(findings), summary=summary, coverage_notes=tuple(notes)
    )
