"""Recording operations: every way a person can externalize a hunch.

Six techniques feed one funnel: structured forms, free text, sketch strokes,
direct manipulation of marks (single or brushed group), data edits, and
model specs. Each produces a validated DataHunch; the engine stamps ids and
timestamps, never the client.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from ..core.dataset import Dataset
from ..core.expr import Expr, parse_expr
from ..core.hunch import (
    Annotation,
    Assessment,
    AuthorRef,
    ChartAnchor,
    DataHunch,
    Directionality,
    HunchContext,
    HunchPayload,
    Markup,
    MarkupStrokes,
    ModelBased,
    ModelSpec,
    Scope,
    Value,
)
from ..core.validation import resolve_scope, validate_hunch
from ..core.views import DatasetView, apply_hunch_view
from ..errors import (
    EmptyText,
    FormAnswerMismatch,
    StrokeOutOfBounds,
    ValidationFailed,
)
from ..jsonutil import canonical_dumps, new_id, utc_now_rfc3339
from .axes import ChartViewSpec, require_pixel_in_range
from .sketch import strokes_bbox, strokes_in_bounds, transcribe_markup

QUESTION_KINDS = ("trust_rating", "direction_choice")


@dataclass(frozen=True)
class ElicitationForm:
    """A structured elicitation response: a trust rating or a direction choice."""

    scope: Scope
    question_kind: str
    answer: Union[int, str]
    confidence: Optional[int] = None
    free_note: Optional[str] = None
    impact_note: Optional[str] = None


def _build(
    dataset: Dataset,
    scope: Scope,
    payload: HunchPayload,
    author: AuthorRef,
    *,
    rationale: Optional[str] = None,
    confidence: Optional[int] = None,
    impact_note: Optional[str] = None,
    adjustment_note: Optional[str] = None,
    chart_anchor: Optional[ChartAnchor] = None,
) -> DataHunch:
    hunch = DataHunch(
        hunch_id=new_id("h"),
        dataset_id=dataset.dataset_id,
        dataset_fingerprint=dataset.fingerprint,
        scope=scope,
        payload=payload,
        context=HunchContext(
            author=author,
            created_at=utc_now_rfc3339(),
            rationale=rationale,
            confidence=confidence,
            impact_note=impact_note,
            adjustment_note=adjustment_note,
        ),
        chart_anchor=chart_anchor,
    )
    report = validate_hunch(hunch, dataset)
    if not report.ok:
        raise ValidationFailed(report)
    return hunch


def _resolve_if_structural(scope: Scope, dataset: Dataset) -> None:
    # Bad refs raise UnknownItem here; structural problems surface later as
    # validation violations so the full report reaches the caller.
    if not scope.structural_problems():
        resolve_scope(scope, dataset)


def record_elicitation(form: ElicitationForm, author: AuthorRef, dataset: Dataset) -> DataHunch:
    """Form response -> Assessment or Directionality hunch."""
    if form.question_kind == "trust_rating":
        if not (isinstance(form.answer, int) and not isinstance(form.answer, bool)):
            raise FormAnswerMismatch(
                f"trust_rating expects an integer rating, got {form.answer!r}"
            )
        payload: HunchPayload = Assessment(rating=form.answer)
    elif form.question_kind == "direction_choice":
        if form.answer not in ("higher", "lower"):
            raise FormAnswerMismatch(
                f"direction_choice expects 'higher' or 'lower', got {form.answer!r}"
            )
        payload = Directionality(direction=form.answer)
    else:
        raise FormAnswerMismatch(f"unknown question kind {form.question_kind!r}")
    _resolve_if_structural(form.scope, dataset)
    return _build(
        dataset,
        form.scope,
        payload,
        author,
        rationale=form.free_note,
        confidence=form.confidence,
        impact_note=form.impact_note,
    )


def record_annotation(
    text: str,
    scope: Scope,
    anchor: Optional[ChartAnchor],
    author: AuthorRef,
    dataset: Dataset,
) -> DataHunch:
    """Free-text hunch; the text is the rationale and there is no data claim."""
    if not text or not text.strip():
        raise EmptyText("annotation text must be non-empty")
    _resolve_if_structural(scope, dataset)
    return _build(dataset, scope, Annotation(), author, rationale=text, chart_anchor=anchor)


def record_markup(
    strokes: MarkupStrokes,
    view: ChartViewSpec,
    scope_hint: Optional[Scope],
    author: AuthorRef,
    dataset: Dataset,
    rationale: Optional[str] = None,
) -> DataHunch:
    """Store raw strokes, transcribing them when a controlled glyph is found.

    A successful transcription also decides the scope (the glyph geometry is
    authoritative about which marks it targets); otherwise the hint applies,
    defaulting to the whole dataset.
    """
    if not strokes_in_bounds(strokes, view):
        raise StrokeOutOfBounds("stroke coordinates outside view bounds (+10% slack)")
    transcription = transcribe_markup(strokes, view, dataset)
    if transcription is not None:
        scope = transcription.scope()
        payload = Markup(strokes=strokes, transcription=transcription.payload)
    else:
        scope = scope_hint or Scope.whole_dataset()
        payload = Markup(strokes=strokes, transcription=None)
        _resolve_if_structural(scope, dataset)
    min_x, min_y, max_x, max_y = strokes_bbox(strokes.strokes)
    anchor = ChartAnchor(view.view_id, (min_x + max_x) / 2, (min_y + max_y) / 2)
    return _build(dataset, scope, payload, author, rationale=rationale, chart_anchor=anchor)


def record_manipulation(
    item_id: str,
    new_pixel: tuple[float, float],
    view: ChartViewSpec,
    author: AuthorRef,
    dataset: Dataset,
    rationale: Optional[str] = None,
) -> DataHunch:
    """Dragged mark -> absolute value via the inverse y scale.

    The original anchor rides along in adjustment_note so clients can render
    a ghost mark at the item's original location.
    """
    old_px, old_py = view.anchor_of(item_id)
    px, py = new_pixel
    require_pixel_in_range(view.y_axis, py)
    value = view.y_axis.invert(py)
    note = canonical_dumps({"original_px": [old_px, old_py], "new_px": [px, py]})
    return _build(
        dataset,
        Scope.single_item(item_id, field_ref=view.y_axis.field),
        Value(values={item_id: value}),
        author,
        rationale=rationale,
        adjustment_note=note,
        chart_anchor=ChartAnchor(view.view_id, px, py),
    )


def record_group_manipulation(
    item_ids: Sequence[str],
    pixel_delta: tuple[float, float],
    view: ChartViewSpec,
    author: AuthorRef,
    dataset: Dataset,
    rationale: Optional[str] = None,
) -> DataHunch:
    """Brushed selection shifted together -> one absolute-value hunch."""
    dx, dy = pixel_delta
    values = {}
    originals = {}
    for iid in item_ids:
        ax, ay = view.anchor_of(iid)
        require_pixel_in_range(view.y_axis, ay + dy)
        values[iid] = view.y_axis.invert(ay + dy)
        originals[iid] = [ax, ay]
    note = canonical_dumps({"original_px": originals, "delta_px": [dx, dy]})
    anchor = None
    if originals:
        cx = sum(p[0] for p in originals.values()) / len(originals) + dx
        cy = sum(p[1] for p in originals.values()) / len(originals) + dy
        anchor = ChartAnchor(view.view_id, cx, cy)
    return _build(
        dataset,
        Scope.item_group(item_ids, field_ref=view.y_axis.field),
        Value(values=values),
        author,
        rationale=rationale,
        adjustment_note=note,
        chart_anchor=anchor,
    )


def record_data_edit(
    edits: Union[Mapping[str, float], Expr, str],
    scope: Scope,
    author: AuthorRef,
    dataset: Dataset,
    rationale: Optional[str] = None,
) -> tuple[DataHunch, DatasetView]:
    """Direct data edit: per-item values or a bulk expression, plus its view."""
    if isinstance(edits, str):
        edits = parse_expr(edits)
    if isinstance(edits, Expr):
        payload = Value(expression=edits)
    else:
        payload = Value(values=dict(edits))
    _resolve_if_structural(scope, dataset)
    hunch = _build(dataset, scope, payload, author, rationale=rationale)
    return hunch, apply_hunch_view(dataset, [hunch])


def record_model_hunch(
    spec: ModelSpec,
    variance: float,
    n_points: int,
    domain: tuple[float, float],
    seed: int,
    author: AuthorRef,
    dataset: Dataset,
    x_field: Optional[str] = None,
    y_field: Optional[str] = None,
    rationale: Optional[str] = None,
) -> DataHunch:
    """A curve-family hunch, stored with its seed so generation is reproducible.

    Field bindings default to the dataset's first two quantitative fields so
    the generated points can materialize into views.
    """
    quant = [f for f in dataset.quantitative_fields()]
    if x_field is None:
        x_field = next((f for f in quant if f != y_field), None)
    if y_field is None:
        y_field = next((f for f in quant if f != x_field), None)
    payload = ModelBased(
        model=spec,
        variance=variance,
        n_points=n_points,
        domain=(domain[0], domain[1]),
        seed=seed,
        x_field=x_field,
        y_field=y_field,
    )
    return _build(
        dataset,
        Scope.whole_dataset(field_ref=y_field),
        payload,
        author,
        rationale=rationale,
    )
