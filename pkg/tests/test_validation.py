"""Scope resolution and total validation."""

import random

import pytest

from helpers import build_hunch, simple_dataset
from hunches.core import (
    Annotation,
    Assessment,
    DataHunch,
    Directionality,
    Exclusion,
    HunchContext,
    Inclusion,
    Interval,
    Scope,
    Value,
    RangeDistribution,
    parse_expr,
    resolve_scope,
    validate_hunch,
)
from hunches.core.validation import STALE_MESSAGE
from hunches.errors import UnknownItem


def test_whole_dataset_resolves_to_all_items(dataset):
    assert resolve_scope(Scope.whole_dataset(), dataset) == {"i1", "i2", "i3"}


def test_single_item_resolves_to_itself(dataset):
    assert resolve_scope(Scope.single_item("i2"), dataset) == {"i2"}


def test_unknown_ref_raises(dataset):
    with pytest.raises(UnknownItem):
        resolve_scope(Scope.item_group(["i1", "i9"]), dataset)


def test_valid_absolute_value_hunch(dataset):
    h = build_hunch(dataset, Value(values={"i1": 4.0}), Scope.single_item("i1", "y"))
    assert validate_hunch(h, dataset).ok


def test_interval_bounds_violation(dataset):
    h = build_hunch(
        dataset,
        RangeDistribution(spec=Interval(5, 2)),
        Scope.single_item("i1", "y"),
    )
    report = validate_hunch(h, dataset)
    assert not report.ok
    assert any(v.rule == "range.bounds" for v in report.violations)


def test_stale_fingerprint_flagged(dataset):
    h = build_hunch(dataset, Assessment(3), Scope.whole_dataset(), fingerprint="deadbeef")
    report = validate_hunch(h, dataset)
    assert any(v.message == STALE_MESSAGE for v in report.violations)


def test_report_enumerates_every_violation(dataset):
    # Stale fingerprint, bad rating, and a scope structure problem, all at once.
    h = build_hunch(
        dataset,
        Assessment(9),
        Scope("item_group", frozenset(["i1"]), None),
        fingerprint="deadbeef",
    )
    report = validate_hunch(h, dataset)
    rules = {v.rule for v in report.violations}
    assert {"dataset.stale", "assessment.rating", "scope.structure"} <= rules


def test_value_requires_field_ref(dataset):
    h = build_hunch(dataset, Value(values={"i1": 4.0}), Scope.single_item("i1"))
    assert any(v.rule == "value.field_ref" for v in validate_hunch(h, dataset).violations)


def test_value_keys_must_stay_in_scope(dataset):
    h = build_hunch(dataset, Value(values={"i2": 4.0}), Scope.single_item("i1", "y"))
    assert any(v.rule == "value.keys" for v in validate_hunch(h, dataset).violations)


def test_expression_over_null_is_a_violation():
    ds = simple_dataset(values=(1.0, None, 3.0))
    h = build_hunch(ds, Value(expression=parse_expr("v * 2")), Scope.whole_dataset("y"))
    assert any(
        v.rule == "value.expression_null" for v in validate_hunch(h, ds).violations
    )


def test_exclusion_needs_item_scope(dataset):
    h = build_hunch(dataset, Exclusion(), Scope.whole_dataset())
    assert any(v.rule == "exclusion.scope" for v in validate_hunch(h, dataset).violations)


def test_inclusion_checks_fields_and_collisions(dataset):
    ok = build_hunch(
        dataset,
        Inclusion(new_item={"y": 9.0, "label": "new"}, provisional_item_id="p1"),
        Scope.whole_dataset(),
    )
    assert validate_hunch(ok, dataset).ok

    collide = build_hunch(
        dataset,
        Inclusion(new_item={"y": 9.0, "label": "new"}, provisional_item_id="i1"),
        Scope.whole_dataset(),
    )
    assert any(v.rule == "inclusion.provisional_id" for v in validate_hunch(collide, dataset).violations)

    sparse = build_hunch(
        dataset,
        Inclusion(new_item={"y": 9.0}, provisional_item_id="p2"),
        Scope.whole_dataset(),
    )
    assert any(v.rule == "inclusion.values" for v in validate_hunch(sparse, dataset).violations)


def test_whole_dataset_directionality_needs_field(dataset):
    h = build_hunch(dataset, Directionality("higher"), Scope.whole_dataset())
    assert any(v.rule == "directionality.field_ref" for v in validate_hunch(h, dataset).violations)
    ok = build_hunch(dataset, Directionality("higher"), Scope.whole_dataset("y"))
    assert validate_hunch(ok, dataset).ok


def test_annotation_requires_rationale(dataset):
    bare = build_hunch(dataset, Annotation(), Scope.whole_dataset())
    assert any(v.rule == "annotation.text" for v in validate_hunch(bare, dataset).violations)
    ok = build_hunch(dataset, Annotation(), Scope.whole_dataset(), rationale="context here")
    assert validate_hunch(ok, dataset).ok


def test_validation_is_total_over_random_structures(dataset):
    """validate_hunch never raises, whatever well-formed garbage arrives."""
    from helpers import random_payload_and_scope

    rng = random.Random(7)
    used = set()
    for k in range(300):
        payload, scope = random_payload_and_scope(rng, dataset, used)
        h = build_hunch(
            dataset,
            payload,
            scope,
            fingerprint=rng.choice([dataset.fingerprint, "junk"]),
            rationale=rng.choice([None, "why"]),
            confidence=rng.choice([None, 1, 5]),
        )
        validate_hunch(h, dataset)  # must not raise
