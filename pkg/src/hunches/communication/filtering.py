"""Filtering and weighing of hunch collections.

Filters are pure, order-preserving subset operations over hunch metadata:
author, role, time window, presence of rationale, author reputation, a
reader's trust list, and payload type. Weights never change membership,
only the scores used by ranking and summary visuals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from ..core.hunch import DataHunch


@dataclass(frozen=True)
class FilterSpec:
    authors: Optional[frozenset[str]] = None
    roles: Optional[frozenset[str]] = None
    after: Optional[str] = None  # RFC 3339; inclusive
    before: Optional[str] = None  # inclusive
    requires_context: bool = False
    min_score: Optional[int] = None  # author reputation threshold
    known_authors_of: Optional[str] = None
    types: Optional[frozenset[str]] = None  # payload kinds

    def __post_init__(self):
        if self.after is not None and self.before is not None and self.after > self.before:
            raise ValueError("filter window requires after <= before")

    def is_empty(self) -> bool:
        return self == FilterSpec()

    def to_json_dict(self) -> dict:
        return {
            "authors": sorted(self.authors) if self.authors is not None else None,
            "roles": sorted(self.roles) if self.roles is not None else None,
            "after": self.after,
            "before": self.before,
            "requires_context": self.requires_context,
            "min_score": self.min_score,
            "known_authors_of": self.known_authors_of,
            "types": sorted(self.types) if self.types is not None else None,
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "FilterSpec":
        opt = lambda key: frozenset(d[key]) if d.get(key) is not None else None
        return cls(
            authors=opt("authors"),
            roles=opt("roles"),
            after=d.get("after"),
            before=d.get("before"),
            requires_context=bool(d.get("requires_context", False)),
            min_score=d.get("min_score"),
            known_authors_of=d.get("known_authors_of"),
            types=opt("types"),
        )


@dataclass(frozen=True)
class WeightSpec:
    """Multiplicative weights; defaults double hunches that explain themselves."""

    context_weight: float = 2.0
    base_weight: float = 1.0
    confidence_scaling: bool = False

    def __post_init__(self):
        for name in ("context_weight", "base_weight"):
            v = getattr(self, name)
            if not (v >= 0 and v == v and v != float("inf")):
                raise ValueError(f"{name} must be finite and >= 0, got {v!r}")

    def weight_of(self, hunch: DataHunch) -> float:
        w = self.base_weight
        if hunch.context.rationale:
            w *= self.context_weight
        if self.confidence_scaling and hunch.context.confidence is not None:
            w *= hunch.context.confidence / 5.0
        return w


def hunch_matches(
    hunch: DataHunch,
    spec: FilterSpec,
    trust_lists: Optional[Mapping[str, frozenset[str]]] = None,
) -> bool:
    ctx = hunch.context
    if spec.authors is not None and ctx.author.author_id not in spec.authors:
        return False
    if spec.roles is not None and (ctx.author.role is None or ctx.author.role not in spec.roles):
        return False
    if spec.after is not None and ctx.created_at < spec.after:
        return False
    if spec.before is not None and ctx.created_at > spec.before:
        return False
    if spec.requires_context and not ctx.rationale:
        return False
    if spec.min_score is not None:
        rep = ctx.author.reputation
        if rep is None or rep < spec.min_score:
            return False
    if spec.known_authors_of is not None:
        known = (trust_lists or {}).get(spec.known_authors_of, frozenset())
        if ctx.author.author_id != spec.known_authors_of and ctx.author.author_id not in known:
            return False
    if spec.types is not None and hunch.payload.kind not in spec.types:
        return False
    return True


def filter_hunches(
    hunches: Sequence[DataHunch],
    spec: FilterSpec,
    trust_lists: Optional[Mapping[str, frozenset[str]]] = None,
) -> list[DataHunch]:
    """Order-preserving subset of hunches matching the filter."""
    return [h for h in hunches if hunch_matches(h, spec, trust_lists)]
