from __future__ import annotations

import random

import pytest

from taxolint.dataset import class_distribution, parse_dataset, serialize_dataset
from taxolint.errors import (
    ComparabilityError,
    CoverageError,
    EmptyInputError,
    FormatError,
    MappingConflictError,
)
from taxolint.lint import lint_all, load_lint_config
from taxolint.metrics import summary
from taxolint.reduce import (
    AnalyzedDataset,
    LabelMapping,
    LevelRating,
    MappingPath,
    aggregate_levels,
    apply_mapping,
    compare,
    compose_mappings,
    parse_level_ratings,
    parse_mapping,
    provenance,
    serialize_mapping,
)

from conftest import TABLE1_COUNTS, make_dataset


def test_parse_mapping_with_intermediate():
    mapping = parse_mapping(b"original,path\nNLP,AI > STEM\n")
    path = mapping.entries["NLP"]
    assert path.intermediates == ("AI",)
    assert path.final == "STEM"
    assert path.chain == ("NLP", "AI", "STEM")
    assert mapping.final_universe == ("STEM",)


def test_parse_mapping_arrow_separator():
    mapping = parse_mapping("original,path\nNLP,AI → STEM\n".encode())
    assert mapping.entries["NLP"].chain == ("NLP", "AI", "STEM")


def test_parse_mapping_identity_path():
    mapping = parse_mapping(b"original,path\nCLI,CLI\n")
    path = mapping.entries["CLI"]
    assert path.intermediates == ()
    assert path.final == "CLI"


def test_parse_mapping_duplicate_original_conflicts():
    with pytest.raises(MappingConflictError):
        parse_mapping(b"original,path\nNLP,STEM\nNLP,AI\n")


def test_parse_mapping_empty_path_is_format_error():
    with pytest.raises(FormatError):
        parse_mapping(b"original,path\nNLP,\n")


def test_parse_mapping_missing_columns():
    with pytest.raises(FormatError):
        parse_mapping(b"orig,dest\nA,B\n")
    with pytest.raises(EmptyInputError):
        parse_mapping(b"")


def test_path_must_not_repeat_elements():
    with pytest.raises(FormatError):
        MappingPath(original="A", intermediates=("B", "A"), final="C")


def test_apply_mapping_reproduces_published_counts(aj_dataset, aj_mapping):
    reduced = apply_mapping(aj_dataset, aj_mapping)
    assert class_distribution(reduced, "label") == TABLE1_COUNTS
    assert len(reduced.projects) == 495


def test_identity_mapping_keeps_dataset(aj_dataset):
    originals = sorted({p.original_category for p in aj_dataset.projects})
    identity = parse_mapping(
        ("original,path\n" + "".join(f"{o},{o}\n" for o in originals)).encode()
    )
    mapped = apply_mapping(aj_dataset, identity)
    assert [p.labels for p in mapped.projects] == [
        (p.original_category,) for p in mapped.projects
    ]


def test_missing_original_is_coverage_error(aj_dataset, aj_mapping):
    entries = dict(aj_mapping.entries)
    entries.pop("Bean Mapping")
    partial = LabelMapping.from_paths(list(entries.values()))
    with pytest.raises(CoverageError) as err:
        apply_mapping(aj_dataset, partial)
    assert err.value.missing == ["Bean Mapping"]


def test_conservation(aj_dataset, aj_mapping):
    reduced = apply_mapping(aj_dataset, aj_mapping)
    before = class_distribution(aj_dataset, "original_category")
    after = class_distribution(reduced, "label")
    assert sum(before.values()) == sum(after.values()) == 495


def test_provenance_sums_to_class_counts(aj_dataset, aj_mapping):
    reduced = apply_mapping(aj_dataset, aj_mapping)
    prov = provenance(reduced, aj_mapping)
    counts = class_distribution(reduced, "label")
    for final, originals in prov.items():
        assert sum(originals.values()) == counts[final]
    assert prov["STEM"]["Machine Learning"] == 17


def test_mapping_round_trip(aj_mapping):
    again = parse_mapping(serialize_mapping(aj_mapping))
    assert again == aj_mapping


def _random_two_stage(rng):
    """Random composable mappings over disjoint alphabets (no cycles)."""
    originals = [f"a{i}" for i in range(rng.randint(2, 6))]
    mids = [f"b{i}" for i in range(rng.randint(1, 3))]
    finals = [f"c{i}" for i in range(rng.randint(1, 2))]
    first = LabelMapping.from_paths(
        [
            MappingPath(original=o, intermediates=(), final=rng.choice(mids))
            for o in originals
        ]
    )
    second = LabelMapping.from_paths(
        [
            MappingPath(original=m, intermediates=(), final=rng.choice(finals))
            for m in mids
        ]
    )
    projects = [(f"p{i}", rng.choice(originals), "") for i in range(rng.randint(1, 12))]
    return make_dataset(projects), first, second


def test_composition_property():
    rng = random.Random(13)
    for _ in range(25):
        ds, first, second = _random_two_stage(rng)
        # Stage two consumes stage one's output labels as its originals.
        once = apply_mapping(ds, first)
        intermediate = make_dataset(
            [(p.name, p.labels[0], "") for p in once.projects]
        )
        stepwise = apply_mapping(intermediate, second)
        composed = apply_mapping(ds, compose_mappings(first, second))
        assert [p.labels for p in stepwise.projects] == [
            p.labels for p in composed.projects
        ]


def _analyzed(ds, field_name, fingerprint="cfg"):
    return AnalyzedDataset(
        dataset=ds,
        summary=summary(ds, field_name),
        antipatterns=lint_all(ds, None, load_lint_config(), field_name=field_name),
        similarity_stats=None,
        config_fingerprint=fingerprint,
    )


def test_compare_identical_sides_zero_deltas(aj_dataset, aj_mapping):
    reduced = apply_mapping(aj_dataset, aj_mapping)
    report = compare(_analyzed(reduced, "label"), _analyzed(reduced, "label"), aj_mapping)
    deltas = report.to_dict()["deltas"]
    assert deltas["examples"] == 0
    assert deltas["categories"] == 0
    assert deltas["balance"] == pytest.approx(0.0, abs=1e-12)


def test_compare_mismatched_configs(aj_dataset, aj_mapping):
    reduced = apply_mapping(aj_dataset, aj_mapping)
    with pytest.raises(ComparabilityError):
        compare(
            _analyzed(aj_dataset, "original_category", "cfg-a"),
            _analyzed(reduced, "label", "cfg-b"),
            aj_mapping,
        )


def test_compare_antipattern_rows(aj_dataset, aj_mapping, ci_vectors):
    cfg = load_lint_config()
    reduced = apply_mapping(aj_dataset, aj_mapping)

    def analyzed(ds, field_name):
        return AnalyzedDataset(
            dataset=ds,
            summary=summary(ds, field_name),
            antipatterns=lint_all(ds, ci_vectors, cfg, field_name=field_name),
            config_fingerprint="cfg",
        )

    report = compare(
        analyzed(aj_dataset, "original_category"), analyzed(reduced, "label"), aj_mapping
    )
    before = {c for c, hit in report.before_antipatterns.items() if hit}
    after = {c for c, hit in report.after_antipatterns.items() if hit}
    assert before == {"MT", "MG", "SC", "NE", "SKC"}
    assert after == {"MG", "SC", "SKC"}


def test_aggregate_levels_strict_majority():
    ratings = [LevelRating("STEM", f"a{i}", lv) for i, lv in enumerate([1, 1, 1, 2, 5])]
    assert aggregate_levels(ratings) == {"STEM": 1}


def test_aggregate_levels_tie_is_no_majority():
    ratings = [LevelRating("Web", f"a{i}", lv) for i, lv in enumerate([2, 3, 2, 3])]
    assert aggregate_levels(ratings) == {"Web": None}


def test_aggregate_levels_unanimous():
    ratings = [LevelRating("CLI", f"a{i}", 4) for i in range(5)]
    assert aggregate_levels(ratings) == {"CLI": 4}


def test_aggregate_levels_half_is_not_majority():
    ratings = [LevelRating("Data", f"a{i}", lv) for i, lv in enumerate([2, 2, 3, 4])]
    assert aggregate_levels(ratings) == {"Data": None}


def test_aggregate_levels_plurality_mode():
    ratings = [LevelRating("Data", f"a{i}", lv) for i, lv in enumerate([2, 2, 3, 4])]
    assert aggregate_levels(ratings, mode="plurality") == {"Data": 2}
    tie = [LevelRating("Data", f"a{i}", lv) for i, lv in enumerate([2, 2, 3, 3])]
    assert aggregate_levels(tie, mode="plurality") == {"Data": None}


def test_aggregate_levels_invariances():
    rng = random.Random(17)
    ratings = [
        LevelRating("X", f"a{i}", rng.randint(1, 5)) for i in range(9)
    ] + [LevelRating("Y", f"a{i}", rng.randint(1, 5)) for i in range(4)]
    base = aggregate_levels(ratings)
    shuffled = list(ratings)
    rng.shuffle(shuffled)
    assert aggregate_levels(shuffled) == base
    renamed = [LevelRating(r.label, f"anon-{hash(r.annotator) % 97}", r.level) for r in ratings]
    assert aggregate_levels(renamed) == base


def test_level_rating_bounds():
    with pytest.raises(ValueError):
        LevelRating("X", "a", 0)
    with pytest.raises(ValueError):
        LevelRating("X", "a", 6)


def test_parse_level_ratings():
    data = b"label,annotator,level\nSTEM,alice,1\nSTEM,bob,2\n"
    ratings = parse_level_ratings(data)
    assert [r.level for r in ratings] == [1, 2]
    with pytest.raises(FormatError):
        parse_level_ratings(b"label,annotator\nX,a\n")
    with pytest.raises(FormatError):
        parse_level_ratings(b"label,annotator,level\nX,a,high\n")


def test_reduced_dataset_round_trips(aj_dataset, aj_mapping):
    reduced = apply_mapping(aj_dataset, aj_mapping)
    again = parse_dataset(serialize_dataset(reduced))
    assert again == reduced
