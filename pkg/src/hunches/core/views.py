"""Derived dataset views: applying hunches without touching the original.

A view is a fully tagged version of a dataset produced by composing hunches
left to right. Tags are decided by comparing the final value against the
base dataset, so writing a value equal to the original keeps its "original"
tag and a later hunch can silently undo an earlier one. Excluded items are
omitted from the view's item list; included provisional items are appended
with every field tagged as hunch-derived.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from ..errors import (
    ConflictingExclusionTarget,
    DuplicateProvisionalItem,
    ViewBaseMismatch,
)
from ..jsonutil import content_hash
from .dataset import Dataset
from .expr import eval_expr
from .hunch import (
    DataHunch,
    Exclusion,
    Inclusion,
    ModelBased,
    RangeDistribution,
    Value,
    effective_payload,
    range_midpoint,
)

ORIGINAL = "original"


@dataclass(frozen=True)
class ViewItem:
    """An item in a view; origins maps each field to None (original) or a hunch id."""

    item_id: str
    values: Mapping[str, object]
    origins: Mapping[str, Optional[str]]
    provisional: bool = False

    def to_json_dict(self) -> dict:
        return {
            "item_id": self.item_id,
            "values": dict(self.values),
            "origins": {
                f: (ORIGINAL if h is None else {"hunch_derived": h})
                for f, h in self.origins.items()
            },
            "provisional": self.provisional,
        }


@dataclass(frozen=True)
class DatasetView:
    view_id: str
    base_dataset_id: str
    base_fingerprint: str
    source_hunch_ids: tuple[str, ...]
    items: tuple[ViewItem, ...]
    excluded_item_ids: frozenset[str]

    def derived_pairs(self) -> frozenset[tuple[str, str]]:
        """(item_id, field) pairs tagged hunch-derived."""
        return frozenset(
            (it.item_id, f)
            for it in self.items
            for f, h in it.origins.items()
            if h is not None
        )

    def to_json_dict(self) -> dict:
        return {
            "view_id": self.view_id,
            "base_dataset_id": self.base_dataset_id,
            "base_fingerprint": self.base_fingerprint,
            "source_hunch_ids": list(self.source_hunch_ids),
            "items": [it.to_json_dict() for it in self.items],
            "excluded_item_ids": sorted(self.excluded_item_ids),
        }


@dataclass(frozen=True)
class Delta:
    item_id: str
    field: str
    before: object
    after: object
    hunch_id: str

    def to_json_dict(self) -> dict:
        return {
            "item_id": self.item_id,
            "field": self.field,
            "before": self.before,
            "after": self.after,
            "hunch_id": self.hunch_id,
        }


def _view_id(dataset: Dataset, hunch_ids: Sequence[str]) -> str:
    return "v-" + content_hash({"base": dataset.fingerprint, "hunches": list(hunch_ids)})[:16]


def _live_scope_ids(hunch: DataHunch, order: list[str], excluded: set[str]) -> list[str]:
    """Ids a hunch applies to at its position in the composition.

    whole_dataset means every surviving item, provisional ones included;
    explicit refs must not have been excluded by an earlier hunch.
    """
    if hunch.scope.kind == "whole_dataset":
        return [iid for iid in order if iid not in excluded]
    ids = sorted(hunch.scope.item_refs)
    for iid in ids:
        if iid in excluded:
            raise ConflictingExclusionTarget(
                f"hunch {hunch.hunch_id!r} references item {iid!r} excluded earlier",
                hunch_id=hunch.hunch_id,
                item_id=iid,
            )
    return ids


def apply_hunch_view(dataset: Dataset, hunches: Sequence[DataHunch]) -> DatasetView:
    """Compose hunches over a dataset into a tagged view, original untouched.

    Hunches apply left to right and later hunches see earlier results. Only
    value-bearing payloads change data; the rest ride along in
    source_hunch_ids so the view records the full perspective it reflects.
    """
    values: dict[str, dict] = {it.item_id: dict(it.values) for it in dataset.items}
    order: list[str] = list(dataset.item_ids)
    excluded: set[str] = set()
    provisional: dict[str, str] = {}  # item id -> including hunch id
    writers: dict[tuple[str, str], str] = {}

    for hunch in hunches:
        payload = effective_payload(hunch)
        fieldname = hunch.scope.field_ref

        if isinstance(payload, Value):
            ids = _live_scope_ids(hunch, order, excluded)
            if payload.values is not None:
                for iid, v in payload.values.items():
                    if iid in excluded:
                        raise ConflictingExclusionTarget(
                            f"hunch {hunch.hunch_id!r} writes item {iid!r} excluded earlier",
                            hunch_id=hunch.hunch_id,
                            item_id=iid,
                        )
                    values[iid][fieldname] = v
                    writers[(iid, fieldname)] = hunch.hunch_id
            else:
                for iid in ids:
                    current = values[iid].get(fieldname)
                    if current is None:
                        continue  # validated against base; nulls here come from provisional items
                    values[iid][fieldname] = eval_expr(payload.expression, current)
                    writers[(iid, fieldname)] = hunch.hunch_id

        elif isinstance(payload, Exclusion):
            for iid in _live_scope_ids(hunch, order, excluded):
                excluded.add(iid)

        elif isinstance(payload, Inclusion):
            pid = payload.provisional_item_id
            if pid in values:
                raise DuplicateProvisionalItem(
                    f"provisional id {pid!r} already present", item_id=pid
                )
            values[pid] = {f: payload.new_item.get(f) for f in dataset.field_names()}
            order.append(pid)
            provisional[pid] = hunch.hunch_id

        elif isinstance(payload, RangeDistribution):
            for iid in _live_scope_ids(hunch, order, excluded):
                spec = payload.spec_for(iid)
                if spec is None:
                    continue
                values[iid][fieldname] = range_midpoint(spec)
                writers[(iid, fieldname)] = hunch.hunch_id

        elif isinstance(payload, ModelBased):
            if payload.x_field and payload.y_field:
                from ..externalization.models import generate_model_points

                for k, (x, y) in enumerate(generate_model_points(payload)):
                    pid = f"{hunch.hunch_id}:pt{k}"
                    if pid in values:
                        raise DuplicateProvisionalItem(
                            f"provisional id {pid!r} already present", item_id=pid
                        )
                    row = {f: None for f in dataset.field_names()}
                    row[payload.x_field] = x
                    row[payload.y_field] = y
                    values[pid] = row
                    order.append(pid)
                    provisional[pid] = hunch.hunch_id

        # Assessment, Directionality, Annotation and untranscribed Markup
        # carry no value semantics; they are still listed as sources.

    items = []
    for iid in order:
        if iid in excluded:
            continue
        if iid in provisional:
            origins = {f: provisional[iid] for f in dataset.field_names()}
            items.append(ViewItem(iid, values[iid], origins, provisional=True))
            continue
        base = dataset.get_item(iid).values
        origins = {}
        for f in dataset.field_names():
            changed = values[iid].get(f) != base.get(f)
            origins[f] = writers.get((iid, f)) if changed else None
        items.append(ViewItem(iid, values[iid], origins))

    hunch_ids = tuple(h.hunch_id for h in hunches)
    return DatasetView(
        view_id=_view_id(dataset, hunch_ids),
        base_dataset_id=dataset.dataset_id,
        base_fingerprint=dataset.fingerprint,
        source_hunch_ids=hunch_ids,
        items=tuple(items),
        excluded_item_ids=frozenset(excluded),
    )


def diff_view(dataset: Dataset, view: DatasetView) -> list[Delta]:
    """Deltas covering exactly the hunch-derived tags of a view.

    Provisional items contribute one delta per field with before=None;
    excluded items contribute none (they are recorded on the view itself).
    """
    if view.base_dataset_id != dataset.dataset_id or view.base_fingerprint != dataset.fingerprint:
        raise ViewBaseMismatch(
            f"view {view.view_id!r} does not derive from dataset {dataset.dataset_id!r}",
            view_id=view.view_id,
            dataset_id=dataset.dataset_id,
        )
    deltas = []
    for item in view.items:
        if item.provisional:
            for f in dataset.field_names():
                deltas.append(Delta(item.item_id, f, None, item.values.get(f), item.origins[f]))
            continue
        base = dataset.get_item(item.item_id).values
        for f in dataset.field_names():
            hid = item.origins.get(f)
            if hid is not None:
                deltas.append(Delta(item.item_id, f, base.get(f), item.values.get(f), hid))
    return deltas
