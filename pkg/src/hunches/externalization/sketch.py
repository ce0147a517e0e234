"""Transcribing controlled markup glyphs back into structured hunches.

Exactly four glyphs are recognized: a strike (X over a mark, read as an
exclusion), up and down arrows near a mark (directionality), and a
horizontal line (an absolute value for every item whose x position it
spans). Anything else is preserved verbatim as freeform strokes and never
guessed. When the capture tool declares a controlled style, the declaration
is authoritative and geometry is only used to find the targets.

Recognition rules, fixed so tests are reproducible:

* strike: two strokes, each passing within STRIKE_RADIUS_PX of the same
  mark, dominant directions differing by 60 to 120 degrees, and the
  strokes actually crossing (rules out parallel or merely nearby pairs);
* arrow: a near-vertical shaft plus a 3-point head whose apex sits on one
  shaft end, both barbs 20 to 70 degrees off the shaft on opposite sides;
* hline: a single stroke within HLINE_MAX_TILT_DEG of horizontal spanning
  at least MIN_HLINE_SPAN_PX and the x position of at least one mark.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from ..core.dataset import Dataset
from ..core.hunch import (
    Directionality,
    Exclusion,
    HunchPayload,
    MarkupStrokes,
    Scope,
    Value,
)
from .axes import ChartViewSpec

STRIKE_RADIUS_PX = 12.0
STRIKE_ANGLE_RANGE = (60.0, 120.0)
BARB_ANGLE_RANGE = (20.0, 70.0)
SHAFT_VERTICAL_TOL_DEG = 30.0
APEX_ATTACH_PX = 12.0
ARROW_NEAR_PX = 40.0
HLINE_MAX_TILT_DEG = 15.0
MIN_HLINE_SPAN_PX = 20.0
BOUNDS_SLACK = 0.10

Point = tuple[float, float]
Stroke = Sequence[Point]


# ---------------------------------------------------------------------------
# Plane geometry helpers

def _dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _segment_point_distance(p: Point, a: Point, b: Point) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    denom = dx * dx + dy * dy
    if denom == 0:
        return _dist(p, a)
    t = max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / denom))
    return _dist(p, (ax + t * dx, ay + t * dy))


def polyline_point_distance(p: Point, stroke: Stroke) -> float:
    return min(
        _segment_point_distance(p, stroke[i], stroke[i + 1])
        for i in range(len(stroke) - 1)
    )


def stroke_orientation_deg(stroke: Stroke) -> float:
    """Dominant direction (endpoint to endpoint) in [0, 180)."""
    (x0, y0), (x1, y1) = stroke[0], stroke[-1]
    return math.degrees(math.atan2(y1 - y0, x1 - x0)) % 180.0


def _orient(a: Point, b: Point, c: Point) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    d1, d2 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    d3, d4 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return True
    return False


def strokes_cross(a: Stroke, b: Stroke) -> bool:
    for i in range(len(a) - 1):
        for j in range(len(b) - 1):
            if _segments_cross(a[i], a[i + 1], b[j], b[j + 1]):
                return True
    return False


def strokes_centroid(strokes: Sequence[Stroke]) -> Point:
    pts = [p for s in strokes for p in s]
    return (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))


def strokes_bbox(strokes: Sequence[Stroke]) -> tuple[float, float, float, float]:
    pts = [p for s in strokes for p in s]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def strokes_in_bounds(strokes: MarkupStrokes, view: ChartViewSpec) -> bool:
    """Stroke coordinates must stay within the plotting area plus 10% slack."""
    min_x, min_y, max_x, max_y = view.bounds()
    slack_x = (max_x - min_x) * BOUNDS_SLACK
    slack_y = (max_y - min_y) * BOUNDS_SLACK
    for stroke in strokes.strokes:
        for x, y in stroke:
            if not (min_x - slack_x <= x <= max_x + slack_x):
                return False
            if not (min_y - slack_y <= y <= max_y + slack_y):
                return False
    return True


# ---------------------------------------------------------------------------
# Recognition

@dataclass(frozen=True)
class Transcription:
    """A recognized glyph: the structured payload plus the items it targets."""

    payload: HunchPayload
    item_ids: frozenset[str]
    field_ref: Optional[str] = None

    def scope(self) -> Scope:
        if len(self.item_ids) == 1:
            return Scope.single_item(next(iter(self.item_ids)), self.field_ref)
        return Scope.item_group(self.item_ids, self.field_ref)


def transcribe_markup(
    strokes: MarkupStrokes, view: ChartViewSpec, dataset: Dataset
) -> Optional[Transcription]:
    """Map controlled glyphs back to data; None means nothing was recognized."""
    if strokes.style == "strike":
        return _declared_strike(strokes.strokes, view)
    if strokes.style == "arrow":
        return _declared_arrow(strokes.strokes, view)
    if strokes.style == "hline":
        return _hline(_longest(strokes.strokes), view, check_tilt=False)

    ss = strokes.strokes
    if len(ss) == 2:
        arrow = _recognize_arrow(ss, view)
        if arrow is not None:
            return arrow
        return _recognize_strike(ss, view)
    if len(ss) == 1:
        return _hline(ss[0], view, check_tilt=True)
    return None


def _items_near(view: ChartViewSpec, strokes: Sequence[Stroke], radius: float, all_strokes: bool) -> frozenset[str]:
    """Anchored items within radius of every stroke (or of any, if not all_strokes)."""
    hits = set()
    for iid, anchor in view.item_anchor.items():
        near = [polyline_point_distance(anchor, s) <= radius for s in strokes]
        if (all(near) if all_strokes else any(near)):
            hits.add(iid)
    return frozenset(hits)


def _declared_strike(strokes: Sequence[Stroke], view: ChartViewSpec) -> Optional[Transcription]:
    hits = _items_near(view, strokes, STRIKE_RADIUS_PX, all_strokes=False)
    if not hits:
        return None
    return Transcription(Exclusion(), hits)


def _recognize_strike(strokes: Sequence[Stroke], view: ChartViewSpec) -> Optional[Transcription]:
    a, b = strokes
    diff = abs(stroke_orientation_deg(a) - stroke_orientation_deg(b))
    if not (STRIKE_ANGLE_RANGE[0] <= diff <= STRIKE_ANGLE_RANGE[1]):
        return None
    if not strokes_cross(a, b):
        return None
    hits = _items_near(view, strokes, STRIKE_RADIUS_PX, all_strokes=True)
    if not hits:
        return None
    return Transcription(Exclusion(), hits)


def _nearest_item(view: ChartViewSpec, point: Point, radius: float) -> Optional[str]:
    best, best_d = None, radius
    for iid, anchor in sorted(view.item_anchor.items()):
        d = _dist(anchor, point)
        if d <= best_d:
            best, best_d = iid, d
    return best


def _arrow_result(direction: str, strokes: Sequence[Stroke], view: ChartViewSpec) -> Optional[Transcription]:
    target = _nearest_item(view, strokes_centroid(strokes), ARROW_NEAR_PX)
    if target is None:
        return None
    return Transcription(
        Directionality(direction), frozenset([target]), field_ref=view.y_axis.field
    )


def _declared_arrow(strokes: Sequence[Stroke], view: ChartViewSpec) -> Optional[Transcription]:
    recognized = _recognize_arrow(strokes, view) if len(strokes) == 2 else None
    if recognized is not None:
        return recognized
    # Fall back on the net vertical of the longest stroke; screen y grows down.
    shaft = _longest(strokes)
    direction = "higher" if shaft[-1][1] < shaft[0][1] else "lower"
    return _arrow_result(direction, strokes, view)


def _recognize_arrow(strokes: Sequence[Stroke], view: ChartViewSpec) -> Optional[Transcription]:
    for shaft, head in (strokes, tuple(reversed(tuple(strokes)))):
        if len(head) != 3 or len(shaft) < 2:
            continue
        orientation = stroke_orientation_deg(shaft)
        if abs(orientation - 90.0) > SHAFT_VERTICAL_TOL_DEG:
            continue
        apex = head[1]
        p0, p1 = shaft[0], shaft[-1]
        tip, tail = (p0, p1) if _dist(p0, apex) <= _dist(p1, apex) else (p1, p0)
        if _dist(tip, apex) > APEX_ATTACH_PX:
            continue
        point_vec = (tip[0] - tail[0], tip[1] - tail[1])
        back_vec = (-point_vec[0], -point_vec[1])
        sides = []
        ok = True
        for barb_end in (head[0], head[2]):
            barb = (barb_end[0] - apex[0], barb_end[1] - apex[1])
            ang = _angle_between(back_vec, barb)
            if not (BARB_ANGLE_RANGE[0] <= ang <= BARB_ANGLE_RANGE[1]):
                ok = False
                break
            sides.append(point_vec[0] * barb[1] - point_vec[1] * barb[0] > 0)
        if not ok or sides[0] == sides[1]:
            continue
        direction = "higher" if tip[1] < tail[1] else "lower"
        return _arrow_result(direction, strokes, view)
    return None


def _angle_between(u: Point, v: Point) -> float:
    nu, nv = math.hypot(*u), math.hypot(*v)
    if nu == 0 or nv == 0:
        return 180.0
    c = max(-1.0, min(1.0, (u[0] * v[0] + u[1] * v[1]) / (nu * nv)))
    return math.degrees(math.acos(c))


def _longest(strokes: Sequence[Stroke]) -> Stroke:
    def length(s):
        return sum(_dist(s[i], s[i + 1]) for i in range(len(s) - 1))

    return max(strokes, key=length)


def _hline(stroke: Stroke, view: ChartViewSpec, check_tilt: bool) -> Optional[Transcription]:
    if check_tilt:
        orientation = stroke_orientation_deg(stroke)
        tilt = min(orientation, 180.0 - orientation)
        if tilt > HLINE_MAX_TILT_DEG:
            return None
    xs = [p[0] for p in stroke]
    min_x, max_x = min(xs), max(xs)
    if check_tilt and (max_x - min_x) < MIN_HLINE_SPAN_PX:
        return None
    spanned = frozenset(
        iid for iid, (ax, _ay) in view.item_anchor.items() if min_x <= ax <= max_x
    )
    if not spanned:
        return None
    mean_y = sum(p[1] for p in stroke) / len(stroke)
    value = view.y_axis.invert(mean_y)
    return Transcription(
        Value(values={iid: value for iid in spanned}),
        spanned,
        field_ref=view.y_axis.field,
    )
