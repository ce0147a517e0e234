"""Core dataset model, hunch taxonomy, validation, and view materialization."""

from .dataset import DataItem, Dataset, Field, Scalar, compute_fingerprint
from .expr import Expr, eval_expr, parse_expr
from .hunch import (
    Annotation,
    Assessment,
    AuthorRef,
    ChartAnchor,
    CustomModel,
    DataHunch,
    Directionality,
    Exclusion,
    ExponentialModel,
    HunchContext,
    HunchPayload,
    Inclusion,
    Interval,
    LinearModel,
    Markup,
    MarkupStrokes,
    ModelBased,
    ModelSpec,
    NormalDist,
    RangeDistribution,
    RangeSpec,
    Scope,
    UniformDist,
    Value,
    effective_payload,
    is_stale,
    model_eval,
    model_from_dict,
    model_to_dict,
    payload_from_dict,
    payload_to_dict,
    range_bounds,
    range_midpoint,
)
from .validation import STALE_MESSAGE, ValidationReport, Violation, resolve_scope, validate_hunch
from .views import Delta, DatasetView, ViewItem, apply_hunch_view, diff_view

__all__ = [name for name in dir() if not name.startswith("_")]
