"""Shared builders for tests: datasets, hunches, and random generators."""

from __future__ import annotations

import itertools
import random

from hunches.core import (
    Annotation,
    Assessment,
    AuthorRef,
    ChartAnchor,
    DataHunch,
    DataItem,
    Dataset,
    Directionality,
    Exclusion,
    Field,
    HunchContext,
    Inclusion,
    Interval,
    LinearModel,
    Markup,
    MarkupStrokes,
    ModelBased,
    NormalDist,
    RangeDistribution,
    Scope,
    UniformDist,
    Value,
    parse_expr,
)

_counter = itertools.count(1)


def simple_dataset(values=(1.0, 2.0, 3.0), dataset_id="d1", field_name="y"):
    """Items i1..iN with one quantitative field plus a categorical label."""
    schema = [Field(field_name, "quantitative"), Field("label", "categorical")]
    items = [
        DataItem(f"i{k + 1}", {field_name: v, "label": f"row{k + 1}"})
        for k, v in enumerate(values)
    ]
    return Dataset.create(dataset_id, schema, items)


def xy_dataset(points, dataset_id="dxy"):
    schema = [Field("x", "quantitative"), Field("y", "quantitative")]
    items = [DataItem(f"i{k + 1}", {"x": x, "y": y}) for k, (x, y) in enumerate(points)]
    return Dataset.create(dataset_id, schema, items)


def author(author_id="u1", role=None, reputation=None, name=""):
    return AuthorRef(author_id=author_id, display_name=name, role=role, reputation=reputation)


def build_hunch(
    dataset,
    payload,
    scope,
    author_id="u1",
    role=None,
    reputation=None,
    created_at=None,
    rationale=None,
    confidence=None,
    anchor=None,
    hunch_id=None,
    fingerprint=None,
):
    n = next(_counter)
    return DataHunch(
        hunch_id=hunch_id or f"h{n:04d}",
        dataset_id=dataset.dataset_id,
        dataset_fingerprint=fingerprint or dataset.fingerprint,
        scope=scope,
        payload=payload,
        context=HunchContext(
            author=AuthorRef(author_id, role=role, reputation=reputation),
            created_at=created_at or f"2026-01-01T00:00:{n % 60:02.0f}.{n % 1000:03d}Z",
            rationale=rationale,
            confidence=confidence,
        ),
        chart_anchor=anchor,
    )


def random_payload_and_scope(rng: random.Random, dataset, used_provisional_ids: set):
    """A random valid (payload, scope) pair over a null-free dataset.

    Covers every payload variant. Exclusion targets are chosen by the
    caller's book-keeping (this helper does not know what is excluded).
    """
    field_name = dataset.quantitative_fields()[0]
    ids = list(dataset.item_ids)
    variant = rng.choice(
        [
            "assessment", "exclusion", "inclusion", "directionality",
            "value_abs", "value_expr", "range", "model", "markup", "annotation",
        ]
    )

    def any_scope(field_ref=None):
        kind = rng.choice(["single_item", "item_group", "whole_dataset"])
        if kind == "single_item":
            return Scope.single_item(rng.choice(ids), field_ref)
        if kind == "item_group" and len(ids) >= 2:
            return Scope.item_group(rng.sample(ids, 2), field_ref)
        return Scope.whole_dataset(field_ref)

    def item_scope(field_ref=None):
        if len(ids) >= 2 and rng.random() < 0.5:
            return Scope.item_group(rng.sample(ids, 2), field_ref)
        return Scope.single_item(rng.choice(ids), field_ref)

    if variant == "assessment":
        return Assessment(rating=rng.randint(1, 5)), any_scope()
    if variant == "exclusion":
        return Exclusion(), item_scope()
    if variant == "inclusion":
        pid = f"p{len(used_provisional_ids)}-{rng.randint(0, 99999)}"
        while pid in used_provisional_ids:
            pid = f"p{rng.randint(0, 10 ** 9)}"
        used_provisional_ids.add(pid)
        values = {f.name: (rng.uniform(-50, 50) if f.kind == "quantitative" else "new") for f in dataset.schema}
        return Inclusion(new_item=values, provisional_item_id=pid), Scope.whole_dataset()
    if variant == "directionality":
        return Directionality(rng.choice(["higher", "lower"])), any_scope(field_name)
    if variant == "value_abs":
        scope = item_scope(field_name)
        return Value(values={i: rng.uniform(-100, 100) for i in scope.item_refs}), scope
    if variant == "value_expr":
        expr = parse_expr(rng.choice(["v * 2", "v + 3.5", "v / 4", "v - 1", "2 * v + 1"]))
        return Value(expression=expr), any_scope(field_name)
    if variant == "range":
        lo = rng.uniform(-50, 50)
        spec = rng.choice(
            [Interval(lo, lo + rng.uniform(0, 20)),
             NormalDist(rng.uniform(-50, 50), rng.uniform(0, 5)),
             UniformDist(lo, lo + rng.uniform(0, 20))]
        )
        return RangeDistribution(spec=spec), any_scope(field_name)
    if variant == "model":
        lo = rng.uniform(-10, 10)
        quant = dataset.quantitative_fields()
        x_field = quant[0] if len(quant) >= 2 else None
        y_field = quant[1] if len(quant) >= 2 else None
        return (
            ModelBased(
                model=LinearModel(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                variance=rng.choice([0.0, rng.uniform(0, 2)]),
                n_points=rng.randint(1, 5),
                domain=(lo, lo + rng.uniform(0.5, 10)),
                seed=rng.randint(0, 2 ** 31),
                x_field=x_field,
                y_field=y_field,
            ),
            Scope.whole_dataset(y_field),
        )
    if variant == "markup":
        strokes = MarkupStrokes.of(
            [[(rng.uniform(0, 100), rng.uniform(0, 100)) for _ in range(3)]]
        )
        return Markup(strokes=strokes), any_scope()
    return Annotation(), any_scope()
