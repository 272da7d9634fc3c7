"""Turn project source trees into per-category term documents.

The pipeline follows four fixed steps: split identifiers on camel-case and
snake-case boundaries (uppercase runs stay grouped, so ``getHTTPResponse``
splits into get/HTTP/Response), lowercase, drop configured stopwords, then
stem.  Tokens shorter than two characters or purely numeric are discarded.
"""

from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .dataset import ClassificationDataset
from .errors import EmptyCorpusError, TaxolintError
from .identifiers import BACKENDS

_CAMEL_RE = re.compile(r"[A-Z]+(?![a-z])|[A-Z][a-z]*|[a-z]+|[0-9]+")
_NON_ALNUM_RE = re.compile(r"[^0-9A-Za-z]+")

LANGUAGE_EXTENSIONS = {
    "java": (".java",),
}
DEFAULT_EXCLUDE_DIRS = (".git", ".hg", ".svn", "build", "target", "dist", "out", "node_modules")


class BinaryInputSkip(TaxolintError):
    """Raised for binary input; callers record the skip and move on."""


@dataclass(frozen=True)
class ExtractionConfig:
    language_id: str = "java"
    keyword_list: frozenset[str] = frozenset()
    stopword_list: frozenset[str] = frozenset()
    stemmer: str = "suffix_rules"  # suffix_rules | dictionary | none
    stem_dictionary: tuple[tuple[str, str], ...] = ()
    extensions: tuple[str, ...] = ()
    exclude_dirs: tuple[str, ...] = DEFAULT_EXCLUDE_DIRS

    def __post_init__(self) -> None:
        if self.stemmer not in ("suffix_rules", "dictionary", "none"):
            raise ValueError(f"unknown stemmer {self.stemmer!r}")
        object.__setattr__(self, "keyword_list", frozenset(w.lower() for w in self.keyword_list))
        object.__setattr__(self, "stopword_list", frozenset(w.lower() for w in self.stopword_list))
        if not self.extensions:
            object.__setattr__(
                self, "extensions", LANGUAGE_EXTENSIONS.get(self.language_id, ())
            )

    def to_dict(self) -> dict:
        return {
            "language_id": self.language_id,
            "keyword_list": sorted(self.keyword_list),
            "stopword_list": sorted(self.stopword_list),
            "stemmer": self.stemmer,
            "stem_dictionary": {k: v for k, v in self.stem_dictionary},
            "extensions": list(self.extensions),
            "exclude_dirs": list(self.exclude_dirs),
        }


def load_extraction_config(path: str | Path | None = None) -> ExtractionConfig:
    """Load a JSON extraction config; with no path, the packaged Java default."""
    if path is None:
        text = (
            resources.files("taxolint.data").joinpath("extraction_java.json").read_text("utf-8")
        )
    else:
        text = Path(path).read_text(encoding="utf-8")
    raw = json.loads(text)
    return ExtractionConfig(
        language_id=raw.get("language_id", "java"),
        keyword_list=frozenset(raw.get("keywords", ())),
        stopword_list=frozenset(raw.get("stopwords", ())),
        stemmer=raw.get("stemmer", "suffix_rules"),
        stem_dictionary=tuple(sorted(raw.get("stem_dictionary", {}).items())),
        extensions=tuple(raw.get("extensions", ())),
        exclude_dirs=tuple(raw.get("exclude_dirs", DEFAULT_EXCLUDE_DIRS)),
    )


@dataclass(frozen=True)
class TermDocument:
    label: str
    term_counts: dict[str, int]
    total_terms: int

    @classmethod
    def from_counts(cls, label: str, counts: Counter | dict[str, int]) -> "TermDocument":
        ordered = dict(sorted(counts.items()))
        return cls(label=label, term_counts=ordered, total_terms=sum(ordered.values()))


@dataclass(frozen=True)
class CorpusBuild:
    documents: tuple[TermDocument, ...]
    skipped_projects: tuple[str, ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)


def extract_identifiers(
    source: bytes, cfg: ExtractionConfig, backend: str = "syntax"
) -> list[str]:
    """Identifier tokens in source order, reserved keywords excluded."""
    if b"\x00" in source:
        raise BinaryInputSkip("input contains NUL bytes; treating as binary")
    try:
        text = source.decode("utf-8")
    except UnicodeDecodeError:
        text = source.decode("utf-8", errors="replace")
    scan = BACKENDS[backend]
    return [tok for tok in scan(text) if tok not in cfg.keyword_list]


def split_identifier(identifier: str) -> list[str]:
    """Camel-case and snake-case split with acronym grouping."""
    parts: list[str] = []
    for chunk in _NON_ALNUM_RE.split(identifier):
        if chunk:
            parts.extend(_CAMEL_RE.findall(chunk))
    return parts


def _stem_suffix(word: str) -> str:
    # Plural family first, then one verbal/agent suffix; length guards stop
    # short roots from collapsing.
    if len(word) >= 5 and word.endswith("ies"):
        word = word[:-3] + "y"
    elif word.endswith("sses"):
        word = word[:-2]
    elif word.endswith("s") and not word.endswith(("ss", "us", "is")) and len(word) >= 4:
        word = word[:-1]
    for suffix in ("ing", "ed", "er"):
        if word.endswith(suffix) and len(word) - len(suffix) >= 4:
            word = word[: -len(suffix)]
            if len(word) >= 2 and word[-1] == word[-2] and word[-1] not in "lsz":
                word = word[:-1]
            break
    return word


def _stem(word: str, cfg: ExtractionConfig) -> str:
    if cfg.stemmer == "none":
        return word
    if cfg.stemmer == "dictionary":
        return dict(cfg.stem_dictionary).get(word, word)
    return _stem_suffix(word)


def normalize_terms(raw: list[str], cfg: ExtractionConfig) -> list[str]:
    """Split, lowercase, drop stopwords, stem; drop short or numeric leftovers."""
    out: list[str] = []
    for identifier in raw:
        for part in split_identifier(identifier):
            word = part.lower()
            if word in cfg.stopword_list:
                continue
            word = _stem(word, cfg)
            if len(word) < 2 or word.isdigit():
                continue
            out.append(word)
    return out


def iter_source_files(root: Path, cfg: ExtractionConfig) -> list[Path]:
    """Matching files under ``root``, sorted for determinism; symlinks skipped."""
    excluded = set(cfg.exclude_dirs)
    found: list[Path] = []
    for path in sorted(root.rglob("*")):
        if path.is_symlink():
            continue
        rel_parts = path.relative_to(root).parts
        if any(part in excluded or part.startswith(".") for part in rel_parts[:-1]):
            continue
        if path.name.startswith("."):
            continue
        if path.is_file() and path.suffix in cfg.extensions:
            found.append(path)
    return found


def project_terms(
    root: Path, cfg: ExtractionConfig, backend: str = "syntax"
) -> tuple[Counter, list[str]]:
    """Aggregate normalized terms over every matching file in one source tree."""
    counts: Counter = Counter()
    warnings: list[str] = []
    for path in iter_source_files(root, cfg):
        try:
            raw = extract_identifiers(path.read_bytes(), cfg, backend=backend)
        except BinaryInputSkip:
            warnings.append(f"skipped binary file {path}")
            continue
        counts.update(normalize_terms(raw, cfg))
    return counts, warnings


def build_category_documents(
    ds: ClassificationDataset,
    field_name: str,
    cfg: ExtractionConfig,
    sources_root: Path | None = None,
    backend: str = "syntax",
) -> CorpusBuild:
    """One term document per label, aggregated over all member projects.

    A project's tree is its ``source_root`` if set, else
    ``sources_root/<project name>``.  Projects without a readable tree, or
    whose files yield no terms after filtering, are excluded and reported.
    """
    per_label: dict[str, Counter] = {}
    label_order: list[str] = []
    skipped: list[str] = []
    warnings: list[str] = []
    for project in ds.projects:
        root = project.source_root
        if root is None and sources_root is not None:
            root = sources_root / project.name
        if root is None or not Path(root).is_dir():
            skipped.append(project.name)
            warnings.append(f"project {project.name!r} has no readable source root")
            continue
        counts, file_warnings = project_terms(Path(root), cfg, backend=backend)
        warnings.extend(file_warnings)
        if not counts:
            skipped.append(project.name)
            warnings.append(f"project {project.name!r} yielded no terms; excluded")
            continue
        labels = (
            (project.original_category,)
            if field_name == "original_category"
            else project.labels
        )
        for label in labels:
            if label not in per_label:
                per_label[label] = Counter()
                label_order.append(label)
            per_label[label].update(counts)
    if not per_label:
        raise EmptyCorpusError("no category document could be built from the sources")
    documents = tuple(
        TermDocument.from_counts(label, per_label[label]) for label in label_order
    )
    return CorpusBuild(
        documents=documents, skipped_projects=tuple(skipped), warnings=tuple(warnings)
    )


def term_document_csv(doc: TermDocument) -> bytes:
    """Two-column term,count CSV for one document, terms sorted."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["term", "count"])
    for term, count in doc.term_counts.items():
        writer.writerow([term, count])
    return out.getvalue().encode("utf-8")
