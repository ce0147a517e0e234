"""Externalization techniques: forms, annotations, sketches, drags, edits, models."""

from ..core.hunch import (
    CustomModel,
    ExponentialModel,
    LinearModel,
    MarkupStrokes,
    ModelSpec,
)
from .axes import AxisSpec, ChartViewSpec, default_chart_view
from .models import (
    GaussianStream,
    SplitMix64,
    flag_model_outliers,
    generate_model_points,
    sample_xs,
)
from .recording import (
    ElicitationForm,
    record_annotation,
    record_data_edit,
    record_elicitation,
    record_group_manipulation,
    record_manipulation,
    record_markup,
    record_model_hunch,
)
from .sketch import Transcription, transcribe_markup

__all__ = [name for name in dir() if not name.startswith("_")]
