"""Exception hierarchy shared by all taxolint modules.

Every error the library raises on bad or degenerate input derives from
:class:`TaxolintError`, so callers (and the CLI) can map any of them to a
single operational-failure path.
"""

from __future__ import annotations


class TaxolintError(Exception):
    """Base class for all taxolint errors."""


class SchemaError(TaxolintError):
    """A required column or field is missing from an input file."""


class ValidationError(TaxolintError):
    """Input rows violate dataset invariants (duplicates, empty fields)."""


class EmptyInputError(TaxolintError):
    """An operation received an empty file, dataset, or label."""


class DegenerateInputError(TaxolintError):
    """Input is technically valid but the requested statistic is undefined."""


class FormatError(TaxolintError):
    """A file does not follow its declared line or cell format."""


class InsufficientInputError(TaxolintError):
    """Fewer usable items than the operation needs (e.g. <2 labels)."""


class EmptyCorpusError(TaxolintError):
    """No category ended up with any extractable source terms."""


class DegenerateCorpusError(TaxolintError):
    """Vocabulary filtering left no terms to vectorize."""


class MappingConflictError(TaxolintError):
    """A label mapping assigns two different paths to one original label."""


class CoverageError(TaxolintError):
    """A label mapping does not cover every original category in a dataset.

    Carries the sorted list of unmapped labels in :attr:`missing`.
    """

    def __init__(self, missing: list[str]):
        self.missing = sorted(missing)
        super().__init__(
            "mapping does not cover original categories: " + ", ".join(self.missing)
        )


class ComparabilityError(TaxolintError):
    """Two analysis sides were produced under different configurations."""
