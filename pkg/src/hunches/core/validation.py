"""Scope resolution and total hunch validation.

validate_hunch never raises on structurally well-formed input: violations
are data, the report enumerates all of them, and an empty report means the
hunch satisfies every invariant including payload/scope compatibility and
fingerprint freshness.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ExprError, UnknownItem
from .dataset import Dataset
from .hunch import (
    Annotation,
    Assessment,
    CustomModel,
    DataHunch,
    Directionality,
    Exclusion,
    ExponentialModel,
    HunchPayload,
    Inclusion,
    Interval,
    Markup,
    ModelBased,
    NormalDist,
    RangeDistribution,
    Scope,
    UniformDist,
    Value,
    DIRECTIONS,
    STROKE_STYLES,
)

STALE_MESSAGE = "stale: dataset changed"

# Field kinds a scalar-valued hunch may target.
_NUMERIC_KINDS = {"quantitative", "ordinal"}


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str

    def to_json_dict(self) -> dict:
        return {"rule": self.rule, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json_dict() for v in self.violations]}


def resolve_scope(scope: Scope, dataset: Dataset) -> frozenset[str]:
    """Item ids a scope covers; whole_dataset means every item.

    Raises UnknownItem for a ref that is not in the dataset.
    """
    problems = scope.structural_problems()
    if problems:
        raise ValueError("; ".join(problems))
    if scope.kind == "whole_dataset":
        return frozenset(dataset.item_ids)
    for ref in scope.item_refs:
        if not dataset.has_item(ref):
            raise UnknownItem(f"unknown item {ref!r}", item_id=ref)
    return scope.item_refs


def validate_hunch(hunch: DataHunch, dataset: Dataset) -> ValidationReport:
    out: list[Violation] = []
    add = lambda rule, msg: out.append(Violation(rule, msg))

    if hunch.dataset_id != dataset.dataset_id:
        add("dataset.mismatch", f"hunch targets dataset {hunch.dataset_id!r}, not {dataset.dataset_id!r}")
    if hunch.dataset_fingerprint != dataset.fingerprint:
        add("dataset.stale", STALE_MESSAGE)

    scope = hunch.scope
    payload = hunch.payload
    provisional = payload.provisional_item_id if isinstance(payload, Inclusion) else None

    for msg in scope.structural_problems():
        add("scope.structure", msg)
    for ref in sorted(scope.item_refs):
        if not dataset.has_item(ref) and ref != provisional:
            add("scope.unknown_item", f"unknown item {ref!r}")
    if scope.field_ref is not None and dataset.get_field(scope.field_ref) is None:
        add("scope.unknown_field", f"unknown field {scope.field_ref!r}")

    _check_context(hunch, add)
    _check_payload(payload, hunch, dataset, add, top_level=True)

    return ValidationReport(tuple(out))


def _check_context(hunch: DataHunch, add) -> None:
    ctx = hunch.context
    if not ctx.author.author_id:
        add("context.author", "author_id must be non-empty")
    if not ctx.created_at:
        add("context.created_at", "created_at must be set by the engine")
    if ctx.confidence is not None and not (
        isinstance(ctx.confidence, int) and 1 <= ctx.confidence <= 5
    ):
        add("context.confidence", f"confidence must be an integer 1..5, got {ctx.confidence!r}")


def _numeric(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _check_value_field(scope: Scope, dataset: Dataset, add, rule_prefix: str) -> bool:
    """Scalar-writing payloads need a resolvable numeric target field."""
    if scope.field_ref is None:
        add(f"{rule_prefix}.field_ref", "a target field_ref is required")
        return False
    f = dataset.get_field(scope.field_ref)
    if f is None:
        return False  # already reported as scope.unknown_field
    if f.kind not in _NUMERIC_KINDS:
        add(f"{rule_prefix}.field_kind", f"field {f.name!r} is {f.kind}, expected quantitative or ordinal")
        return False
    return True


def _scope_refs_or_all(scope: Scope, dataset: Dataset) -> frozenset[str]:
    if scope.kind == "whole_dataset":
        return frozenset(dataset.item_ids)
    return scope.item_refs


def _check_payload(payload: HunchPayload, hunch: DataHunch, dataset: Dataset, add, top_level: bool) -> None:
    scope = hunch.scope

    if isinstance(payload, Assessment):
        if not (isinstance(payload.rating, int) and 1 <= payload.rating <= 5):
            add("assessment.rating", f"rating must be an integer 1..5, got {payload.rating!r}")

    elif isinstance(payload, Exclusion):
        if scope.kind == "whole_dataset":
            add("exclusion.scope", "exclusion requires an item scope, not whole_dataset")

    elif isinstance(payload, Inclusion):
        pid = payload.provisional_item_id
        if not pid:
            add("inclusion.provisional_id", "provisional_item_id must be non-empty")
        elif dataset.has_item(pid):
            add("inclusion.provisional_id", f"provisional id {pid!r} collides with an existing item")
        if scope.kind == "item_group":
            add("inclusion.scope", "inclusion requires whole_dataset scope or a provisional anchor")
        elif scope.kind == "single_item" and scope.item_refs != frozenset([pid]):
            add("inclusion.scope", "single_item scope on an inclusion must reference the provisional id")
        names = set(dataset.field_names())
        given = set(payload.new_item)
        missing, extra = names - given, given - names
        if missing:
            add("inclusion.values", f"missing values for fields {sorted(missing)}")
        if extra:
            add("inclusion.values", f"values for unknown fields {sorted(extra)}")

    elif isinstance(payload, Directionality):
        if payload.direction not in DIRECTIONS:
            add("directionality.direction", f"direction must be one of {DIRECTIONS}, got {payload.direction!r}")
        if scope.kind == "whole_dataset" and scope.field_ref is None:
            add("directionality.field_ref", "whole_dataset directionality requires a field_ref")

    elif isinstance(payload, Value):
        if (payload.values is None) == (payload.expression is None):
            add("value.mode", "exactly one of absolute values and expression must be set")
            return
        if not _check_value_field(scope, dataset, add, "value"):
            return
        field_name = scope.field_ref
        if payload.values is not None:
            refs = _scope_refs_or_all(scope, dataset)
            for k in sorted(set(payload.values) - set(refs)):
                add("value.keys", f"absolute value for {k!r} outside scope item_refs")
            for k, v in sorted(payload.values.items()):
                if not _numeric(v):
                    add("value.scalar", f"value for {k!r} must be numeric, got {v!r}")
        else:
            try:
                # Re-parse so hand-built Expr objects get the same screening.
                from .expr import parse_expr

                parse_expr(payload.expression.text, payload.expression.variable)
            except ExprError as e:
                add("value.expression", str(e))
                return
            for iid in sorted(_scope_refs_or_all(scope, dataset)):
                if dataset.has_item(iid) and dataset.get_item(iid).values.get(field_name) is None:
                    add("value.expression_null", f"item {iid!r} has null {field_name!r}; expression cannot materialize")

    elif isinstance(payload, RangeDistribution):
        if (payload.specs is None) == (payload.spec is None):
            add("range.mode", "exactly one of per-item specs and a shared spec must be set")
            return
        _check_value_field(scope, dataset, add, "range")
        specs = payload.specs if payload.specs is not None else {}
        if payload.specs is not None:
            refs = _scope_refs_or_all(scope, dataset)
            for k in sorted(set(specs) - set(refs)):
                add("range.keys", f"spec for {k!r} outside scope item_refs")
        all_specs = list(specs.values()) + ([payload.spec] if payload.spec else [])
        for spec in all_specs:
            if isinstance(spec, (Interval, UniformDist)) and spec.lo > spec.hi:
                add("range.bounds", f"{spec.kind} lo <= hi violated: ({spec.lo}, {spec.hi})")
            elif isinstance(spec, NormalDist) and spec.sd < 0:
                add("range.sd", f"normal sd >= 0 violated: {spec.sd}")

    elif isinstance(payload, ModelBased):
        if payload.variance < 0:
            add("model.variance", f"variance sd >= 0 violated: {payload.variance}")
        if not (isinstance(payload.n_points, int) and payload.n_points >= 1):
            add("model.n_points", f"n_points must be a positive integer, got {payload.n_points!r}")
        lo, hi = payload.domain
        if not (lo < hi):
            add("model.domain", f"domain must be non-degenerate, got [{lo}, {hi}]")
        if isinstance(payload.model, ExponentialModel) and payload.model.a == 0:
            add("model.family", "exponential a must be non-zero")
        if isinstance(payload.model, CustomModel):
            try:
                from .expr import parse_expr

                parse_expr(payload.model.expr.text, payload.model.expr.variable)
            except ExprError as e:
                add("model.family", str(e))
        for attr in ("x_field", "y_field"):
            name = getattr(payload, attr)
            if name is not None:
                f = dataset.get_field(name)
                if f is None:
                    add(f"model.{attr}", f"unknown field {name!r}")
                elif f.kind != "quantitative":
                    add(f"model.{attr}", f"field {name!r} is {f.kind}, expected quantitative")

    elif isinstance(payload, Markup):
        if not payload.strokes.strokes:
            add("markup.strokes", "markup requires at least one stroke")
        for i, stroke in enumerate(payload.strokes.strokes):
            if len(stroke) < 2:
                add("markup.strokes", f"stroke {i} has fewer than 2 points")
        if payload.strokes.style not in STROKE_STYLES:
            add("markup.style", f"unknown stroke style {payload.strokes.style!r}")
        if payload.transcription is not None:
            if isinstance(payload.transcription, Markup):
                add("markup.transcription", "transcription must not itself be a markup")
            elif top_level:
                _check_payload(payload.transcription, hunch, dataset, add, top_level=False)

    elif isinstance(payload, Annotation):
        if not hunch.context.rationale:
            add("annotation.text", "annotation hunches carry their text in context.rationale")

    else:
        add("payload.kind", f"unknown payload {payload!r}")
