"""The hunch taxonomy: scopes, payload variants, context, and the record itself.

A data hunch is a person's knowledge about how representative data is of a
phenomenon of interest, captured as scope + typed payload + context. The
payload is a sum type over the five judgment kinds (assessment, exclusion/
inclusion, directionality, value, range/distribution) plus three carriers:
model-based hunches, raw graphical markups, and annotation-only records.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import ClassVar, Mapping, Optional, Union

from .expr import Expr, eval_expr, parse_expr

SCOPE_KINDS = ("single_item", "item_group", "whole_dataset")
DIRECTIONS = ("higher", "lower")
STROKE_STYLES = ("freeform", "arrow", "strike", "hline")


# ---------------------------------------------------------------------------
# Scope

@dataclass(frozen=True)
class Scope:
    """Extent of a hunch: one item, a group, or the whole dataset."""

    kind: str
    item_refs: frozenset[str] = frozenset()
    field_ref: Optional[str] = None

    @classmethod
    def single_item(cls, item_id: str, field_ref: Optional[str] = None) -> "Scope":
        return cls("single_item", frozenset([item_id]), field_ref)

    @classmethod
    def item_group(cls, item_ids, field_ref: Optional[str] = None) -> "Scope":
        return cls("item_group", frozenset(item_ids), field_ref)

    @classmethod
    def whole_dataset(cls, field_ref: Optional[str] = None) -> "Scope":
        return cls("whole_dataset", frozenset(), field_ref)

    def structural_problems(self) -> list[str]:
        out = []
        if self.kind not in SCOPE_KINDS:
            out.append(f"unknown scope kind {self.kind!r}")
            return out
        n = len(self.item_refs)
        if self.kind == "single_item" and n != 1:
            out.append(f"single_item requires exactly 1 item_ref, got {n}")
        elif self.kind == "item_group" and n < 2:
            out.append(f"item_group requires at least 2 item_refs, got {n}")
        elif self.kind == "whole_dataset" and n != 0:
            out.append(f"whole_dataset requires no item_refs, got {n}")
        return out

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "item_refs": sorted(self.item_refs),
            "field_ref": self.field_ref,
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "Scope":
        return cls(
            kind=d["kind"],
            item_refs=frozenset(d.get("item_refs") or ()),
            field_ref=d.get("field_ref"),
        )


# ---------------------------------------------------------------------------
# Range / distribution specs

@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    kind: ClassVar[str] = "interval"


@dataclass(frozen=True)
class NormalDist:
    mean: float
    sd: float
    kind: ClassVar[str] = "normal"


@dataclass(frozen=True)
class UniformDist:
    lo: float
    hi: float
    kind: ClassVar[str] = "uniform"


RangeSpec = Union[Interval, NormalDist, UniformDist]


def range_midpoint(spec: RangeSpec) -> float:
    """Point preview of a range spec: interval/uniform midpoint, normal mean."""
    if isinstance(spec, NormalDist):
        return spec.mean
    return (spec.lo + spec.hi) / 2


def range_bounds(spec: RangeSpec) -> Optional[tuple[float, float]]:
    """(lo, hi) for specs with a hard support; None for a normal."""
    if isinstance(spec, NormalDist):
        return None
    return (spec.lo, spec.hi)


def _range_to_dict(spec: RangeSpec) -> dict:
    if isinstance(spec, Interval):
        return {"kind": "interval", "lo": spec.lo, "hi": spec.hi}
    if isinstance(spec, NormalDist):
        return {"kind": "normal", "mean": spec.mean, "sd": spec.sd}
    return {"kind": "uniform", "lo": spec.lo, "hi": spec.hi}


def _range_from_dict(d: Mapping) -> RangeSpec:
    kind = d["kind"]
    if kind == "interval":
        return Interval(d["lo"], d["hi"])
    if kind == "normal":
        return NormalDist(d["mean"], d["sd"])
    if kind == "uniform":
        return UniformDist(d["lo"], d["hi"])
    raise ValueError(f"unknown range spec kind {kind!r}")


# ---------------------------------------------------------------------------
# Model specs (curve families for model-based hunches)

@dataclass(frozen=True)
class LinearModel:
    slope: float
    intercept: float
    family: ClassVar[str] = "linear"


@dataclass(frozen=True)
class ExponentialModel:
    """y = a * e^(b*x); a must be non-zero."""

    a: float
    b: float
    family: ClassVar[str] = "exponential"


@dataclass(frozen=True)
class CustomModel:
    expr: Expr  # over "x"
    family: ClassVar[str] = "custom"


ModelSpec = Union[LinearModel, ExponentialModel, CustomModel]


def model_eval(spec: ModelSpec, x: float) -> float:
    if isinstance(spec, LinearModel):
        return spec.slope * x + spec.intercept
    if isinstance(spec, ExponentialModel):
        return spec.a * math.exp(spec.b * x)
    return eval_expr(spec.expr, x)


def model_to_dict(spec: ModelSpec) -> dict:
    if isinstance(spec, LinearModel):
        return {"family": "linear", "slope": spec.slope, "intercept": spec.intercept}
    if isinstance(spec, ExponentialModel):
        return {"family": "exponential", "a": spec.a, "b": spec.b}
    return {"family": "custom", "expr": spec.expr.text}


def model_from_dict(d: Mapping) -> ModelSpec:
    family = d["family"]
    if family == "linear":
        return LinearModel(d["slope"], d["intercept"])
    if family == "exponential":
        return ExponentialModel(d["a"], d["b"])
    if family == "custom":
        return CustomModel(parse_expr(d["expr"], variable="x"))
    raise ValueError(f"unknown model family {family!r}")


# ---------------------------------------------------------------------------
# Markup strokes

@dataclass(frozen=True)
class MarkupStrokes:
    """Polylines in view pixel coordinates, plus the declaring tool's style.

    style is "freeform" unless a controlled tool (arrow, strike, hline) was
    used, in which case the declaration is authoritative for transcription.
    """

    strokes: tuple[tuple[tuple[float, float], ...], ...]
    style: str = "freeform"

    @classmethod
    def of(cls, strokes, style: str = "freeform") -> "MarkupStrokes":
        return cls(
            strokes=tuple(tuple((float(x), float(y)) for x, y in s) for s in strokes),
            style=style,
        )

    def to_json_dict(self) -> dict:
        return {
            "strokes": [[[x, y] for x, y in s] for s in self.strokes],
            "style": self.style,
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "MarkupStrokes":
        return cls.of(d["strokes"], style=d.get("style", "freeform"))


# ---------------------------------------------------------------------------
# Payload variants

@dataclass(frozen=True)
class Assessment:
    """Trust rating for the scoped data, 1 (untrustworthy) to 5 (fully trusted)."""

    rating: int
    kind: ClassVar[str] = "assessment"


@dataclass(frozen=True)
class Exclusion:
    """The scoped items should not be in the dataset; the scope carries them."""

    kind: ClassVar[str] = "exclusion"


@dataclass(frozen=True)
class Inclusion:
    """A missing item, with its assumed values for every schema field."""

    new_item: Mapping[str, object]
    provisional_item_id: str
    kind: ClassVar[str] = "inclusion"


@dataclass(frozen=True)
class Directionality:
    direction: str  # "higher" | "lower"
    kind: ClassVar[str] = "directionality"


@dataclass(frozen=True)
class Value:
    """How values should differ: absolute per-item values or an expression.

    Exactly one of ``values`` (item_id -> scalar) and ``expression`` is set.
    """

    values: Optional[Mapping[str, float]] = None
    expression: Optional[Expr] = None
    kind: ClassVar[str] = "value"

    @property
    def mode(self) -> str:
        return "absolute" if self.values is not None else "expression"


@dataclass(frozen=True)
class RangeDistribution:
    """Expected ranges or distributions, one spec per item or one for all.

    Exactly one of ``specs`` (item_id -> RangeSpec) and ``spec`` is set;
    ``spec`` applies to every item the scope resolves to.
    """

    specs: Optional[Mapping[str, RangeSpec]] = None
    spec: Optional[RangeSpec] = None
    kind: ClassVar[str] = "range_distribution"

    def spec_for(self, item_id: str) -> Optional[RangeSpec]:
        if self.specs is not None:
            return self.specs.get(item_id)
        return self.spec


@dataclass(frozen=True)
class ModelBased:
    """A hunch expressed as a curve family plus variance and sampling rules.

    x_field/y_field bind generated points to dataset fields so views can
    materialize them; when unset the hunch is qualitative (no value change).
    """

    model: ModelSpec
    variance: float
    n_points: int
    domain: tuple[float, float]
    seed: int = 0
    x_field: Optional[str] = None
    y_field: Optional[str] = None
    kind: ClassVar[str] = "model_based"


@dataclass(frozen=True)
class Markup:
    """Raw sketch strokes, optionally transcribed into a structured payload."""

    strokes: MarkupStrokes
    transcription: Optional["HunchPayload"] = None
    kind: ClassVar[str] = "markup"


@dataclass(frozen=True)
class Annotation:
    """Annotation-only carrier: the text itself lives in context.rationale."""

    kind: ClassVar[str] = "annotation"


HunchPayload = Union[
    Assessment,
    Exclusion,
    Inclusion,
    Directionality,
    Value,
    RangeDistribution,
    ModelBased,
    Markup,
    Annotation,
]

PAYLOAD_KINDS = (
    "assessment",
    "exclusion",
    "inclusion",
    "directionality",
    "value",
    "range_distribution",
    "model_based",
    "markup",
    "annotation",
)


def payload_to_dict(p: HunchPayload) -> dict:
    d: dict = {"type": p.kind}
    if isinstance(p, Assessment):
        d["rating"] = p.rating
    elif isinstance(p, Inclusion):
        d["new_item"] = dict(p.new_item)
        d["provisional_item_id"] = p.provisional_item_id
    elif isinstance(p, Directionality):
        d["direction"] = p.direction
    elif isinstance(p, Value):
        d["mode"] = p.mode
        if p.values is not None:
            d["values"] = dict(p.values)
        if p.expression is not None:
            d["expression"] = p.expression.text
    elif isinstance(p, RangeDistribution):
        if p.specs is not None:
            d["specs"] = {k: _range_to_dict(v) for k, v in p.specs.items()}
        if p.spec is not None:
            d["spec"] = _range_to_dict(p.spec)
    elif isinstance(p, ModelBased):
        d.update(
            model=model_to_dict(p.model),
            variance=p.variance,
            n_points=p.n_points,
            domain=[p.domain[0], p.domain[1]],
            seed=p.seed,
            x_field=p.x_field,
            y_field=p.y_field,
        )
    elif isinstance(p, Markup):
        d["strokes"] = p.strokes.to_json_dict()
        d["transcription"] = payload_to_dict(p.transcription) if p.transcription else None
    return d


def payload_from_dict(d: Mapping) -> HunchPayload:
    t = d["type"]
    if t == "assessment":
        return Assessment(rating=d["rating"])
    if t == "exclusion":
        return Exclusion()
    if t == "inclusion":
        return Inclusion(new_item=dict(d["new_item"]), provisional_item_id=d["provisional_item_id"])
    if t == "directionality":
        return Directionality(direction=d["direction"])
    if t == "value":
        expr = parse_expr(d["expression"]) if d.get("expression") else None
        values = dict(d["values"]) if d.get("values") is not None else None
        return Value(values=values, expression=expr)
    if t == "range_distribution":
        specs = d.get("specs")
        return RangeDistribution(
            specs={k: _range_from_dict(v) for k, v in specs.items()} if specs is not None else None,
            spec=_range_from_dict(d["spec"]) if d.get("spec") else None,
        )
    if t == "model_based":
        return ModelBased(
            model=model_from_dict(d["model"]),
            variance=d["variance"],
            n_points=d["n_points"],
            domain=(d["domain"][0], d["domain"][1]),
            seed=d.get("seed", 0),
            x_field=d.get("x_field"),
            y_field=d.get("y_field"),
        )
    if t == "markup":
        return Markup(
            strokes=MarkupStrokes.from_json_dict(d["strokes"]),
            transcription=payload_from_dict(d["transcription"]) if d.get("transcription") else None,
        )
    if t == "annotation":
        return Annotation()
    raise ValueError(f"unknown payload type {t!r}")


# ---------------------------------------------------------------------------
# Context and the hunch record

@dataclass(frozen=True)
class AuthorRef:
    author_id: str
    display_name: str = ""
    role: Optional[str] = None
    reputation: Optional[int] = None  # externally supplied score, used by filters

    def to_json_dict(self) -> dict:
        return {
            "author_id": self.author_id,
            "display_name": self.display_name,
            "role": self.role,
            "reputation": self.reputation,
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "AuthorRef":
        return cls(
            author_id=d["author_id"],
            display_name=d.get("display_name", ""),
            role=d.get("role"),
            reputation=d.get("reputation"),
        )


@dataclass(frozen=True)
class HunchContext:
    """The why of a hunch: authorship, reasoning, confidence, expected impact."""

    author: AuthorRef
    created_at: str  # RFC 3339 UTC, stamped by the engine
    rationale: Optional[str] = None
    confidence: Optional[int] = None  # 1..5
    impact_note: Optional[str] = None
    adjustment_note: Optional[str] = None
    extra: Mapping[str, object] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        d = {
            "author": self.author.to_json_dict(),
            "created_at": self.created_at,
            "rationale": self.rationale,
            "confidence": self.confidence,
            "impact_note": self.impact_note,
            "adjustment_note": self.adjustment_note,
        }
        d.update(self.extra)
        return d

    _KNOWN: ClassVar = {"author", "created_at", "rationale", "confidence", "impact_note", "adjustment_note"}

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "HunchContext":
        return cls(
            author=AuthorRef.from_json_dict(d["author"]),
            created_at=d["created_at"],
            rationale=d.get("rationale"),
            confidence=d.get("confidence"),
            impact_note=d.get("impact_note"),
            adjustment_note=d.get("adjustment_note"),
            extra={k: v for k, v in d.items() if k not in cls._KNOWN},
        )


@dataclass(frozen=True)
class ChartAnchor:
    """A chart state reference: view id plus pixel coordinates within it."""

    view_id: str
    px: float
    py: float

    def to_json_dict(self) -> dict:
        return {"view_id": self.view_id, "px": self.px, "py": self.py}

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "ChartAnchor":
        return cls(view_id=d["view_id"], px=d["px"], py=d["py"])


@dataclass(frozen=True)
class DataHunch:
    hunch_id: str
    dataset_id: str
    dataset_fingerprint: str
    scope: Scope
    payload: HunchPayload
    context: HunchContext
    chart_anchor: Optional[ChartAnchor] = None
    extra: Mapping[str, object] = field(default_factory=dict)

    def with_payload(self, payload: HunchPayload) -> "DataHunch":
        return replace(self, payload=payload)

    def to_json_dict(self) -> dict:
        d = {
            "hunch_id": self.hunch_id,
            "dataset_id": self.dataset_id,
            "dataset_fingerprint": self.dataset_fingerprint,
            "scope": self.scope.to_json_dict(),
            "payload": payload_to_dict(self.payload),
            "context": self.context.to_json_dict(),
            "chart_anchor": self.chart_anchor.to_json_dict() if self.chart_anchor else None,
        }
        d.update(self.extra)
        return d

    _KNOWN: ClassVar = {
        "hunch_id", "dataset_id", "dataset_fingerprint",
        "scope", "payload", "context", "chart_anchor",
    }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "DataHunch":
        return cls(
            hunch_id=d["hunch_id"],
            dataset_id=d["dataset_id"],
            dataset_fingerprint=d["dataset_fingerprint"],
            scope=Scope.from_json_dict(d["scope"]),
            payload=payload_from_dict(d["payload"]),
            context=HunchContext.from_json_dict(d["context"]),
            chart_anchor=ChartAnchor.from_json_dict(d["chart_anchor"]) if d.get("chart_anchor") else None,
            extra={k: v for k, v in d.items() if k not in cls._KNOWN},
        )


def effective_payload(hunch: DataHunch) -> HunchPayload:
    """The payload that carries data-space semantics.

    A transcribed markup acts as its transcription; everything else acts
    as itself.
    """
    p = hunch.payload
    if isinstance(p, Markup) and p.transcription is not None:
        return p.transcription
    return p


def is_stale(hunch: DataHunch, dataset) -> bool:
    """True when the hunch was recorded against different dataset content."""
    return hunch.dataset_fingerprint != dataset.fingerprint
