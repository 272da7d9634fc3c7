"""Command-line front end orchestrating the analysis pipeline.

Exit codes follow linter convention: 0 clean, 1 when findings at severity
violation exist, 2 on operational errors.  Output directories are committed
all-or-nothing: artifacts are staged in a temporary directory and moved into
place only when the whole command succeeded.
"""

from __future__ import annotations

import argparse
import os
import shutil
import sys
import tempfile
from pathlib import Path

from . import __version__
from .corpus import build_category_documents, load_extraction_config
from .dataset import AnnotationArity, parse_dataset, serialize_dataset
from .embed import label_similarity_matrix, load_embeddings
from .errors import TaxolintError
from .lint import lint_all, load_lint_config
from .metrics import summary
from .reduce import AnalyzedDataset, apply_mapping, compare, parse_mapping
from .report import (
    build_report,
    config_fingerprint,
    emit_heatmap_svg,
    emit_json,
    emit_matrix_csv,
)
from .similarity import similarity_distribution, similarity_stats
from .vectorize import (
    build_vocabulary,
    category_similarity_matrix,
    load_vectorize_config,
    tfidf_vectors,
)

CONFIG_DIR_ENV = "TAXOLINT_CONFIG_DIR"
EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_ERROR = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dataset", required=True, type=Path, help="dataset CSV path")
    parser.add_argument(
        "--field",
        choices=["original_category", "label"],
        default="label",
        help="which annotation field to analyze",
    )
    parser.add_argument(
        "--arity",
        choices=[a.value for a in AnnotationArity],
        default=AnnotationArity.SINGLE_LABEL.value,
        help="annotation arity of the dataset",
    )
    parser.add_argument("--embeddings", type=Path, help="word-vector text file")
    parser.add_argument("--sources", type=Path, help="root directory of project source trees")
    parser.add_argument("--mapping", type=Path, help="label mapping CSV")
    parser.add_argument("--config-extraction", type=Path, help="extraction config JSON")
    parser.add_argument("--config-vectorize", type=Path, help="vectorize config JSON")
    parser.add_argument("--config-lint", type=Path, help="lint config JSON")
    parser.add_argument("--out", type=Path, help="output directory")
    parser.add_argument(
        "--format",
        default="json,csv,svg",
        help="comma-separated output formats (json,csv,svg)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taxolint",
        description="Linter and measurement toolkit for software-classification taxonomies.",
    )
    parser.add_argument("--version", action="version", version=f"taxolint {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("stats", "dataset summary: examples, categories, balance, min, max"),
        ("lint", "detect classification antipatterns"),
        ("analyze", "full pipeline: corpus, TFIDF, similarities, lint, report"),
        ("reduce", "apply a hierarchical label mapping and compare before/after"),
    ):
        _add_common(sub.add_parser(name, help=help_text))
    return parser


def _config_path(explicit: Path | None, filename: str) -> Path | None:
    if explicit is not None:
        return explicit
    env_dir = os.environ.get(CONFIG_DIR_ENV)
    if env_dir:
        candidate = Path(env_dir) / filename
        if candidate.is_file():
            return candidate
    return None


def _load_configs(args):
    extraction = load_extraction_config(_config_path(args.config_extraction, "extraction.json"))
    vectorize = load_vectorize_config(_config_path(args.config_vectorize, "vectorize.json"))
    lint = load_lint_config(_config_path(args.config_lint, "lint.json"))
    return extraction, vectorize, lint


def _formats(args) -> set[str]:
    formats = {f.strip() for f in args.format.split(",") if f.strip()}
    unknown = formats - {"json", "csv", "svg"}
    if unknown:
        raise TaxolintError(f"unknown output format(s): {', '.join(sorted(unknown))}")
    if not formats:
        raise TaxolintError("at least one output format must be selected")
    return formats


class _Staging:
    """Stage artifacts in a temp dir; commit moves them into the output dir."""

    def __init__(self, out: Path):
        self.out = out
        out.parent.mkdir(parents=True, exist_ok=True)
        self.dir = Path(tempfile.mkdtemp(prefix=".staging-", dir=out.parent))
        self.files: list[str] = []

    def write(self, name: str, data: bytes) -> None:
        (self.dir / name).write_bytes(data)
        self.files.append(name)

    def commit(self) -> None:
        self.out.mkdir(parents=True, exist_ok=True)
        for name in self.files:
            os.replace(self.dir / name, self.out / name)
        shutil.rmtree(self.dir, ignore_errors=True)

    def discard(self) -> None:
        shutil.rmtree(self.dir, ignore_errors=True)


def _analyze(args, want_matrices: bool):
    """Shared pipeline: returns (report, artifacts dict, violations flag)."""
    extraction_cfg, vectorize_cfg, lint_cfg = _load_configs(args)
    fingerprint = config_fingerprint(extraction_cfg, vectorize_cfg, lint_cfg)
    arity = AnnotationArity(args.arity)
    ds = parse_dataset(args.dataset.read_bytes(), arity)
    warnings: list[str] = []
    artifacts: dict[str, bytes] = {}

    dataset_summaries = {args.field: summary(ds, args.field).to_dict()}

    label_similarity = None
    embeddings = None
    if args.embeddings is not None:
        embeddings = load_embeddings(args.embeddings)
        labels = _field_labels(ds, args.field)
        try:
            matrix = label_similarity_matrix(labels, embeddings)
            dist = similarity_distribution(matrix, lint_cfg.mg_similarity_threshold)
            label_similarity = dist.to_dict()
            warnings.extend(matrix.warnings)
            if want_matrices:
                if "csv" in _formats(args):
                    artifacts["label_similarity.csv"] = emit_matrix_csv(matrix)
                if "svg" in _formats(args):
                    artifacts["label_similarity.svg"] = emit_heatmap_svg(matrix)
        except TaxolintError as exc:
            warnings.append(f"label similarity skipped: {exc}")
    else:
        warnings.append("label similarity skipped: no embeddings provided")

    category_similarity = None
    if args.sources is not None:
        build = build_category_documents(
            ds, args.field, extraction_cfg, sources_root=args.sources
        )
        warnings.extend(build.warnings)
        vocab = build_vocabulary(build.documents, vectorize_cfg)
        tfidf = tfidf_vectors(build.documents, vocab, vectorize_cfg)
        matrix = category_similarity_matrix(tfidf)
        stats = similarity_stats(matrix)
        category_similarity = {
            "stats": stats.to_dict(),
            "zero_labels": list(matrix.zero_names),
            "vocabulary_size": len(vocab.terms),
            "documents": len(build.documents),
        }
        if want_matrices:
            if "csv" in _formats(args):
                artifacts["category_similarity.csv"] = emit_matrix_csv(matrix)
            if "svg" in _formats(args):
                artifacts["category_similarity.svg"] = emit_heatmap_svg(matrix)
    else:
        warnings.append("corpus analysis skipped: no sources root provided")

    lint_report = lint_all(ds, embeddings, lint_cfg, field_name=args.field)
    warnings.extend(lint_report.coverage_notes)

    report = build_report(
        config_fingerprint=fingerprint,
        configs={
            "extraction": extraction_cfg.to_dict(),
            "vectorize": vectorize_cfg.to_dict(),
            "lint": lint_cfg.to_dict(),
        },
        dataset_summaries=dataset_summaries,
        label_similarity=label_similarity,
        category_similarity=category_similarity,
        antipatterns=lint_report.to_dict(),
        warnings=warnings,
    )
    return report, artifacts, lint_report.has_violations


def _field_labels(ds, field_name: str) -> list[str]:
    seen: dict[str, None] = {}
    for p in ds.projects:
        keys = (p.original_category,) if field_name == "original_category" else p.labels
        for key in keys:
            seen.setdefault(key, None)
    return list(seen)


def cmd_stats(args) -> int:
    arity = AnnotationArity(args.arity)
    ds = parse_dataset(args.dataset.read_bytes(), arity)
    s = summary(ds, args.field)
    print(f"{s.examples} {s.categories} {s.balance:.2f} {s.min} {s.max}")
    if args.out is not None:
        _, vectorize_cfg, lint_cfg = _load_configs(args)
        extraction_cfg = load_extraction_config(
            _config_path(args.config_extraction, "extraction.json")
        )
        report = build_report(
            config_fingerprint=config_fingerprint(extraction_cfg, vectorize_cfg, lint_cfg),
            dataset_summaries={args.field: s.to_dict()},
        )
        staging = _Staging(args.out)
        try:
            staging.write("stats.json", emit_json(report))
            staging.commit()
        except BaseException:
            staging.discard()
            raise
    return EXIT_OK


def cmd_lint(args) -> int:
    _, _, lint_cfg = _load_configs(args)
    arity = AnnotationArity(args.arity)
    ds = parse_dataset(args.dataset.read_bytes(), arity)
    embeddings = load_embeddings(args.embeddings) if args.embeddings else None
    lint_report = lint_all(ds, embeddings, lint_cfg, field_name=args.field)
    print(lint_report.to_table())
    for finding in lint_report.findings:
        print(f"{finding.code} [{finding.severity}] {', '.join(finding.subjects)}: {finding.evidence}")
    if args.out is not None:
        extraction_cfg, vectorize_cfg, _ = _load_configs(args)
        report = build_report(
            config_fingerprint=config_fingerprint(extraction_cfg, vectorize_cfg, lint_cfg),
            configs={"lint": lint_cfg.to_dict()},
            antipatterns=lint_report.to_dict(),
        )
        staging = _Staging(args.out)
        try:
            staging.write("lint.json", emit_json(report))
            staging.commit()
        except BaseException:
            staging.discard()
            raise
    return EXIT_VIOLATIONS if lint_report.has_violations else EXIT_OK


def cmd_analyze(args) -> int:
    if args.out is None:
        raise TaxolintError("analyze requires --out")
    report, artifacts, _ = _analyze(args, want_matrices=True)
    staging = _Staging(args.out)
    try:
        if "json" in _formats(args):
            staging.write("report.json", emit_json(report))
        for name, data in sorted(artifacts.items()):
            staging.write(name, data)
        staging.commit()
    except BaseException:
        staging.discard()
        raise
    print(f"analysis written to {args.out}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    if args.mapping is None:
        raise TaxolintError("reduce requires --mapping")
    if args.out is None:
        raise TaxolintError("reduce requires --out")
    extraction_cfg, vectorize_cfg, lint_cfg = _load_configs(args)
    fingerprint = config_fingerprint(extraction_cfg, vectorize_cfg, lint_cfg)
    arity = AnnotationArity(args.arity)
    ds = parse_dataset(args.dataset.read_bytes(), arity)
    mapping = parse_mapping(args.mapping.read_bytes())
    reduced = apply_mapping(ds, mapping)

    def analyzed(dataset, field_name: str) -> AnalyzedDataset:
        stats = None
        if args.sources is not None:
            build = build_category_documents(
                dataset, field_name, extraction_cfg, sources_root=args.sources
            )
            vocab = build_vocabulary(build.documents, vectorize_cfg)
            matrix = category_similarity_matrix(
                tfidf_vectors(build.documents, vocab, vectorize_cfg)
            )
            stats = similarity_stats(matrix)
        embeddings = load_embeddings(args.embeddings) if args.embeddings else None
        return AnalyzedDataset(
            dataset=dataset,
            summary=summary(dataset, field_name),
            antipatterns=lint_all(dataset, embeddings, lint_cfg, field_name=field_name),
            similarity_stats=stats,
            config_fingerprint=fingerprint,
        )

    comparison = compare(
        analyzed(ds, "original_category"), analyzed(reduced, "label"), mapping
    )
    report = build_report(
        config_fingerprint=fingerprint,
        configs={
            "extraction": extraction_cfg.to_dict(),
            "vectorize": vectorize_cfg.to_dict(),
            "lint": lint_cfg.to_dict(),
        },
        comparison=comparison.to_dict(),
    )
    staging = _Staging(args.out)
    try:
        staging.write("reduced_dataset.csv", serialize_dataset(reduced))
        if "json" in _formats(args):
            staging.write("comparison.json", emit_json(report))
        staging.commit()
    except BaseException:
        staging.discard()
        raise
    print(f"reduction written to {args.out}")
    return EXIT_OK


_COMMANDS = {
    "stats": cmd_stats,
    "lint": cmd_lint,
    "analyze": cmd_analyze,
    "reduce": cmd_reduce,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except TaxolintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
