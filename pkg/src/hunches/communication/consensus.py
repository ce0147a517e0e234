"""Aggregation: per-item consensus records and view-level summary artifacts.

Summaries answer "where do people disagree with this data, and how": a
heatmap of hunch positions over a chart's pixel space, per-item consensus
(direction tallies, value quartiles, range overlaps, mean trust), and
counts of whole-dataset hunches by type.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from ..core.dataset import Dataset
from ..core.hunch import (
    Assessment,
    DataHunch,
    Directionality,
    RangeDistribution,
    Value,
    effective_payload,
    range_bounds,
)
from ..externalization.axes import ChartViewSpec
from .filtering import FilterSpec, WeightSpec, filter_hunches


@dataclass(frozen=True)
class ConsensusRecord:
    n_hunches: int = 0
    direction_tally: tuple[int, int] = (0, 0)  # (n_higher, n_lower)
    value_stats: Optional[tuple[float, float, float]] = None  # (median, q1, q3)
    range_overlap: Optional[dict] = None  # {"intersection": [lo,hi]|None, "union": [lo,hi]}
    mean_assessment: Optional[float] = None

    def to_json_dict(self) -> dict:
        return {
            "n_hunches": self.n_hunches,
            "direction_tally": {"higher": self.direction_tally[0], "lower": self.direction_tally[1]},
            "value_stats": (
                {"median": self.value_stats[0], "q1": self.value_stats[1], "q3": self.value_stats[2]}
                if self.value_stats
                else None
            ),
            "range_overlap": self.range_overlap,
            "mean_assessment": self.mean_assessment,
        }


@dataclass(frozen=True)
class SummaryArtifact:
    heatmap: tuple[tuple[int, ...], ...]  # grid_h rows x grid_w columns
    weighted_heatmap: tuple[tuple[float, ...], ...]
    per_item: Mapping[str, ConsensusRecord]
    dataset_level: Mapping[str, int]  # payload kind -> count of whole-dataset hunches

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.heatmap)

    def to_json_dict(self) -> dict:
        return {
            "heatmap": [list(row) for row in self.heatmap],
            "weighted_heatmap": [list(row) for row in self.weighted_heatmap],
            "per_item": {k: v.to_json_dict() for k, v in sorted(self.per_item.items())},
            "dataset_level": dict(sorted(self.dataset_level.items())),
            "total": self.total,
        }


def quartiles(values: Sequence[float]) -> tuple[float, float, float]:
    """(median, q1, q3) with midpoint medians and median-of-halves quartiles.

    The middle element is excluded from the halves on odd counts; a single
    value is its own median and both quartiles.
    """
    vs = sorted(values)
    n = len(vs)
    med = statistics.median(vs)
    if n == 1:
        return (med, vs[0], vs[0])
    lower, upper = vs[: n // 2], vs[(n + 1) // 2 :]
    return (med, statistics.median(lower), statistics.median(upper))


def _covers(hunch: DataHunch, item_id: str, dataset: Dataset) -> bool:
    if hunch.scope.kind == "whole_dataset":
        return dataset.has_item(item_id)
    return item_id in hunch.scope.item_refs


def materialized_value(hunch: DataHunch, item_id: str, dataset: Dataset) -> Optional[float]:
    """The value a hunch proposes for an item, if it proposes one.

    Absolute hunches give their stated value; expression hunches are
    materialized against the item's current (original) value.
    """
    payload = effective_payload(hunch)
    if not isinstance(payload, Value):
        return None
    if payload.values is not None:
        return payload.values.get(item_id)
    if not dataset.has_item(item_id):
        return None
    field_name = hunch.scope.field_ref
    current = dataset.get_item(item_id).values.get(field_name)
    if current is None:
        return None
    return payload.expression(current)


def consensus_for_item(
    hunches: Sequence[DataHunch], item_id: str, dataset: Dataset
) -> ConsensusRecord:
    """Aggregate every hunch covering an item into one consensus record."""
    covering = [h for h in hunches if _covers(h, item_id, dataset)]
    higher = lower = 0
    values: list[float] = []
    bounds: list[tuple[float, float]] = []
    ratings: list[int] = []
    for h in covering:
        payload = effective_payload(h)
        if isinstance(payload, Directionality):
            if payload.direction == "higher":
                higher += 1
            else:
                lower += 1
        elif isinstance(payload, Value):
            v = materialized_value(h, item_id, dataset)
            if v is not None:
                values.append(v)
        elif isinstance(payload, RangeDistribution):
            spec = payload.spec_for(item_id)
            if spec is not None:
                b = range_bounds(spec)
                if b is not None:
                    bounds.append(b)
        elif isinstance(payload, Assessment):
            ratings.append(payload.rating)

    overlap = None
    if bounds:
        inter_lo = max(b[0] for b in bounds)
        inter_hi = min(b[1] for b in bounds)
        overlap = {
            "intersection": [inter_lo, inter_hi] if inter_lo <= inter_hi else None,
            "union": [min(b[0] for b in bounds), max(b[1] for b in bounds)],
        }
    return ConsensusRecord(
        n_hunches=len(covering),
        direction_tally=(higher, lower),
        value_stats=quartiles(values) if values else None,
        range_overlap=overlap,
        mean_assessment=sum(ratings) / len(ratings) if ratings else None,
    )


def _anchor_for(hunch: DataHunch, view: ChartViewSpec) -> Optional[tuple[float, float]]:
    """Where a hunch sits in the view's pixel space, if anywhere.

    An explicit chart anchor wins when it belongs to this view; item-scoped
    hunches fall back to their items' marks (centroid for groups).
    """
    if hunch.chart_anchor is not None and hunch.chart_anchor.view_id == view.view_id:
        return (hunch.chart_anchor.px, hunch.chart_anchor.py)
    if hunch.scope.kind == "whole_dataset":
        return None
    anchors = [view.item_anchor[i] for i in sorted(hunch.scope.item_refs) if i in view.item_anchor]
    if not anchors:
        return None
    return (
        sum(a[0] for a in anchors) / len(anchors),
        sum(a[1] for a in anchors) / len(anchors),
    )


def summarize(
    hunches: Sequence[DataHunch],
    view: ChartViewSpec,
    grid: tuple[int, int],
    filter_spec: FilterSpec,
    weights: WeightSpec,
    dataset: Dataset,
    trust_lists=None,
) -> SummaryArtifact:
    """Filter, then bin anchored hunches over the view and aggregate per item.

    Whole-dataset hunches are never binned; they appear only in the
    dataset_level counts. The integer heatmap counts hunches; the weighted
    grid applies the weight spec so contextualized hunches stand out.
    """
    gw, gh = grid
    if gw < 1 or gh < 1:
        raise ValueError("grid dimensions must be >= 1")
    surviving = filter_hunches(hunches, filter_spec, trust_lists)

    counts = [[0] * gw for _ in range(gh)]
    weighted = [[0.0] * gw for _ in range(gh)]
    min_x, min_y, max_x, max_y = view.bounds()
    span_x, span_y = max_x - min_x, max_y - min_y
    dataset_level: dict[str, int] = {}
    covered_items: set[str] = set()

    for h in surviving:
        if h.scope.kind == "whole_dataset":
            dataset_level[h.payload.kind] = dataset_level.get(h.payload.kind, 0) + 1
            covered_items.update(dataset.item_ids)
            continue
        covered_items.update(h.scope.item_refs)
        anchor = _anchor_for(h, view)
        if anchor is None:
            continue
        # Clamp into the edge cells so slightly out-of-area anchors still count.
        cx = min(gw - 1, max(0, int((anchor[0] - min_x) / span_x * gw)))
        cy = min(gh - 1, max(0, int((anchor[1] - min_y) / span_y * gh)))
        counts[cy][cx] += 1
        weighted[cy][cx] += weights.weight_of(h)

    per_item = {
        iid: consensus_for_item(surviving, iid, dataset)
        for iid in sorted(covered_items)
        if dataset.has_item(iid)
    }
    per_item = {iid: rec for iid, rec in per_item.items() if rec.n_hunches > 0}
    return SummaryArtifact(
        heatmap=tuple(tuple(row) for row in counts),
        weighted_heatmap=tuple(tuple(row) for row in weighted),
        per_item=per_item,
        dataset_level=dataset_level,
    )
