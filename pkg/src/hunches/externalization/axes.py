"""Chart view specs and the pixel <-> data value mapping.

Dragging a mark or drawing a horizontal line only means something once the
pixel position is inverted through the axis scale. Linear and log10 scales
are supported; range_px may run in either direction (screen y usually runs
top-down, so ranges like [500, 0] are normal).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..core.dataset import Dataset
from ..errors import DegenerateAxis, PixelOutsideAxisRange, UnanchoredItem, UnknownItem

CHART_KINDS = ("scatter", "line", "bar")
SCALES = ("linear", "log10")


@dataclass(frozen=True)
class AxisSpec:
    field: str
    scale: str  # "linear" | "log10"
    domain: tuple[float, float]
    range_px: tuple[float, float]

    def check(self) -> None:
        if self.scale not in SCALES:
            raise DegenerateAxis(f"unknown scale {self.scale!r}")
        d_lo, d_hi = self.domain
        if self.scale == "log10" and d_lo <= 0:
            raise DegenerateAxis(f"log10 domain must be positive, got [{d_lo}, {d_hi}]")
        if not d_lo < d_hi:
            raise DegenerateAxis(f"domain must be increasing, got [{d_lo}, {d_hi}]")
        if self.range_px[0] == self.range_px[1]:
            raise DegenerateAxis("pixel extent must be non-zero")

    def _fwd(self, v: float) -> float:
        return math.log10(v) if self.scale == "log10" else v

    def project(self, value: float) -> float:
        """Data value -> pixel position (float; callers may round for display)."""
        d_lo, d_hi = self._fwd(self.domain[0]), self._fwd(self.domain[1])
        t = (self._fwd(value) - d_lo) / (d_hi - d_lo)
        p_lo, p_hi = self.range_px
        return p_lo + t * (p_hi - p_lo)

    def invert(self, px: float) -> float:
        """Pixel position -> data value; extrapolates beyond the range."""
        p_lo, p_hi = self.range_px
        t = (px - p_lo) / (p_hi - p_lo)
        d_lo, d_hi = self._fwd(self.domain[0]), self._fwd(self.domain[1])
        v = d_lo + t * (d_hi - d_lo)
        return 10.0 ** v if self.scale == "log10" else v

    def pixel_in_range(self, px: float) -> bool:
        lo, hi = sorted(self.range_px)
        return lo <= px <= hi

    def to_json_dict(self) -> dict:
        return {
            "field": self.field,
            "scale": self.scale,
            "domain": [self.domain[0], self.domain[1]],
            "range_px": [self.range_px[0], self.range_px[1]],
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "AxisSpec":
        return cls(
            field=d["field"],
            scale=d["scale"],
            domain=(d["domain"][0], d["domain"][1]),
            range_px=(d["range_px"][0], d["range_px"][1]),
        )


@dataclass(frozen=True)
class ChartViewSpec:
    """A concrete chart state: axes plus where each item's mark sits."""

    view_id: str
    chart_kind: str
    x_axis: AxisSpec
    y_axis: AxisSpec
    item_anchor: Mapping[str, tuple[float, float]] = field(default_factory=dict)

    def check(self, dataset: Optional[Dataset] = None) -> None:
        if self.chart_kind not in CHART_KINDS:
            raise DegenerateAxis(f"unknown chart kind {self.chart_kind!r}")
        self.x_axis.check()
        self.y_axis.check()
        if dataset is not None:
            for iid in self.item_anchor:
                if not dataset.has_item(iid):
                    raise UnknownItem(f"anchored item {iid!r} not in dataset", item_id=iid)

    def bounds(self) -> tuple[float, float, float, float]:
        """(min_x, min_y, max_x, max_y) of the plotting area in pixels."""
        xs = sorted(self.x_axis.range_px)
        ys = sorted(self.y_axis.range_px)
        return xs[0], ys[0], xs[1], ys[1]

    def anchor_of(self, item_id: str) -> tuple[float, float]:
        if item_id not in self.item_anchor:
            raise UnanchoredItem(f"item {item_id!r} has no anchor in this view", item_id=item_id)
        return self.item_anchor[item_id]

    def to_json_dict(self) -> dict:
        return {
            "view_id": self.view_id,
            "chart_kind": self.chart_kind,
            "x_axis": self.x_axis.to_json_dict(),
            "y_axis": self.y_axis.to_json_dict(),
            "item_anchor": {k: [v[0], v[1]] for k, v in sorted(self.item_anchor.items())},
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "ChartViewSpec":
        return cls(
            view_id=d["view_id"],
            chart_kind=d["chart_kind"],
            x_axis=AxisSpec.from_json_dict(d["x_axis"]),
            y_axis=AxisSpec.from_json_dict(d["y_axis"]),
            item_anchor={k: (v[0], v[1]) for k, v in d.get("item_anchor", {}).items()},
        )


def require_pixel_in_range(axis: AxisSpec, px: float) -> None:
    if not axis.pixel_in_range(px):
        raise PixelOutsideAxisRange(
            f"pixel {px} outside axis range {axis.range_px}", px=px, range_px=list(axis.range_px)
        )


def default_chart_view(
    dataset: Dataset,
    x_field: Optional[str] = None,
    y_field: Optional[str] = None,
    width: float = 800.0,
    height: float = 600.0,
    view_id: str = "default",
) -> ChartViewSpec:
    """A scatter view over two quantitative fields with anchors projected from data.

    Used by the CLI and scripts when no client-registered chart state exists.
    With a single quantitative field, item order stands in for the x axis.
    """
    quant = dataset.quantitative_fields()
    if not quant:
        raise DegenerateAxis("need at least one quantitative field for a default view")
    if y_field is None:
        y_field = next((f for f in quant if f != x_field), quant[0])
    if x_field is None:
        x_field = next((f for f in quant if f != y_field), None)

    def axis_domain(name):
        vals = [it.values.get(name) for it in dataset.items if it.values.get(name) is not None]
        if not vals:
            return (0.0, 1.0)
        lo, hi = min(vals), max(vals)
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
        return (float(lo), float(hi))

    index_x = x_field is None
    if index_x:
        x_axis = AxisSpec("_index", "linear", (0.0, max(1.0, len(dataset.items) - 1.0)), (0.0, width))
    else:
        x_axis = AxisSpec(x_field, "linear", axis_domain(x_field), (0.0, width))
    y_axis = AxisSpec(y_field, "linear", axis_domain(y_field), (height, 0.0))
    anchors = {}
    for position, it in enumerate(dataset.items):
        x = float(position) if index_x else it.values.get(x_field)
        y = it.values.get(y_field)
        if x is None or y is None:
            continue
        anchors[it.item_id] = (x_axis.project(x), y_axis.project(y))
    return ChartViewSpec(view_id, "scatter", x_axis, y_axis, anchors)
