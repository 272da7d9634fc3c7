"""taxolint: linter and measurement toolkit for software-classification taxonomies."""

__version__ = "0.1.0"

from .dataset import (
    AnnotationArity,
    ClassificationDataset,
    Project,
    ValidationReport,
    class_distribution,
    parse_dataset,
    serialize_dataset,
    validate_dataset,
)
from .embed import (
    EmbeddingTable,
    LabelVector,
    embed_label,
    label_similarity_matrix,
    load_embeddings,
)
from .errors import TaxolintError
from .lint import (
    AntipatternFinding,
    AntipatternReport,
    LintConfig,
    Severity,
    lint_all,
    load_lint_config,
)
from .metrics import ClassCounts, DatasetSummary, balance, summary
from .reduce import (
    LabelMapping,
    LevelRating,
    MappingPath,
    aggregate_levels,
    apply_mapping,
    compare,
    parse_mapping,
)
from .similarity import (
    SimilarityDistribution,
    SimilarityMatrix,
    SimilarityStats,
    similarity_distribution,
    similarity_stats,
)
from .vectorize import (
    TfidfMatrix,
    VectorizeConfig,
    Vocabulary,
    build_vocabulary,
    category_similarity_matrix,
    corpus_similarity_stats,
    tfidf_vectors,
)

__all__ = [
    "AnnotationArity",
    "AntipatternFinding",
    "AntipatternReport",
    "ClassCounts",
    "ClassificationDataset",
    "DatasetSummary",
    "EmbeddingTable",
    "LabelMapping",
    "LabelVector",
    "LevelRating",
    "LintConfig",
    "MappingPath",
    "Project",
    "Severity",
    "SimilarityDistribution",
    "SimilarityMatrix",
    "SimilarityStats",
    "TaxolintError",
    "TfidfMatrix",
    "ValidationReport",
    "VectorizeConfig",
    "Vocabulary",
    "aggregate_levels",
    "apply_mapping",
    "balance",
    "build_vocabulary",
    "category_similarity_matrix",
    "class_distribution",
    "compare",
    "corpus_similarity_stats",
    "embed_label",
    "label_similarity_matrix",
    "lint_all",
    "load_embeddings",
    "load_lint_config",
    "parse_dataset",
    "parse_mapping",
    "serialize_dataset",
    "similarity_distribution",
    "similarity_stats",
    "summary",
    "tfidf_vectors",
    "validate_dataset",
]
