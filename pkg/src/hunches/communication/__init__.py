"""Aggregation, filtering, weighing, and social curation of hunches."""

from .consensus import ConsensusRecord, SummaryArtifact, consensus_for_item, quartiles, summarize
from .curation import (
    Comment,
    CurationReport,
    CurationState,
    NarrativeRecord,
    NARRATIVE_PROMPTS,
    Theme,
    add_comment,
    cast_vote,
    comment_threads,
    compile_report,
    link_provenance,
    provenance_ancestors,
    rank_hunches,
    tombstone,
)
from .filtering import FilterSpec, WeightSpec, filter_hunches, hunch_matches

__all__ = [name for name in dir() if not name.startswith("_")]
