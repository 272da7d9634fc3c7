from __future__ import annotations

import json
from pathlib import Path

import pytest

from taxolint.dataset import AnnotationArity, ClassificationDataset, Project, parse_dataset
from taxolint.embed import load_embeddings
from taxolint.reduce import parse_mapping

FIXTURES = Path(__file__).resolve().parent / "fixtures"


def make_dataset(rows, arity=AnnotationArity.SINGLE_LABEL):
    """Build a dataset from (name, category, label) triples."""
    projects = [
        Project(name=name, original_category=category, label=label)
        for name, category, label in rows
    ]
    return ClassificationDataset.from_projects(projects, arity)


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def aj_dataset():
    return parse_dataset((FIXTURES / "awesome_java.csv").read_bytes())


@pytest.fixture(scope="session")
def aj_mapping():
    return parse_mapping((FIXTURES / "aj_mapping.csv").read_bytes())


@pytest.fixture(scope="session")
def ci_vectors():
    return load_embeddings(FIXTURES / "vectors_ci.vec")


@pytest.fixture(scope="session")
def labelsets():
    return json.loads((FIXTURES / "labelsets.json").read_text("utf-8"))


@pytest.fixture(scope="session")
def mini_dataset():
    return parse_dataset((FIXTURES / "mini_corpus.csv").read_bytes())


@pytest.fixture(scope="session")
def mini_mapping():
    return parse_mapping((FIXTURES / "mini_mapping.csv").read_bytes())


# Class sizes of the reduced classification, as published in the survey's
# distribution table (sum 495).
TABLE1_COUNTS = {
    "Development": 100, "Miscellaneous": 59, "Data": 49, "Testing": 42,
    "Parser": 41, "STEM": 39, "Web": 38, "Server": 37, "Introspection": 32,
    "Networking": 25, "Security": 14, "Graphical": 11, "CLI": 8,
}
