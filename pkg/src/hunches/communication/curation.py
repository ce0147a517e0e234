"""Social curation: votes, threaded comments, provenance links, reports.

CurationState is an immutable snapshot; every mutation returns a new state
so readers can keep aggregating against the old one. Votes overwrite per
(hunch, author); provenance edges must keep the graph acyclic; deletion is
soft (tombstones) so reports and provenance never dangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Sequence

from ..core.hunch import AuthorRef, DataHunch
from ..errors import (
    CrossHunchParent,
    CycleDetected,
    EmptyText,
    SelfLink,
    UnknownHunch,
    UnknownParent,
)
from ..jsonutil import new_id, utc_now_rfc3339
from .filtering import WeightSpec


@dataclass(frozen=True)
class Comment:
    comment_id: str
    hunch_id: str
    author: AuthorRef
    text: str
    created_at: str
    parent_comment_id: Optional[str] = None

    def to_json_dict(self) -> dict:
        return {
            "comment_id": self.comment_id,
            "hunch_id": self.hunch_id,
            "author": self.author.to_json_dict(),
            "text": self.text,
            "created_at": self.created_at,
            "parent_comment_id": self.parent_comment_id,
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "Comment":
        return cls(
            comment_id=d["comment_id"],
            hunch_id=d["hunch_id"],
            author=AuthorRef.from_json_dict(d["author"]),
            text=d["text"],
            created_at=d["created_at"],
            parent_comment_id=d.get("parent_comment_id"),
        )


@dataclass(frozen=True)
class CurationState:
    hunch_ids: frozenset[str] = frozenset()
    votes: Mapping[tuple[str, str], int] = field(default_factory=dict)
    comments: tuple[Comment, ...] = ()
    provenance_edges: frozenset[tuple[str, str]] = frozenset()  # (child, parent)
    tombstones: frozenset[str] = frozenset()
    extra: Mapping[str, object] = field(default_factory=dict)

    def with_hunch(self, hunch_id: str) -> "CurationState":
        return replace(self, hunch_ids=self.hunch_ids | {hunch_id})

    def net_votes(self, hunch_id: str) -> int:
        return sum(v for (hid, _a), v in self.votes.items() if hid == hunch_id)

    def comments_for(self, hunch_id: str) -> tuple[Comment, ...]:
        return tuple(c for c in self.comments if c.hunch_id == hunch_id)

    def to_json_dict(self) -> dict:
        d = {
            "hunch_ids": sorted(self.hunch_ids),
            "votes": [
                {"hunch_id": hid, "author_id": aid, "value": v}
                for (hid, aid), v in sorted(self.votes.items())
            ],
            "comments": [c.to_json_dict() for c in self.comments],
            "provenance_edges": [
                {"child": c, "parent": p} for c, p in sorted(self.provenance_edges)
            ],
            "tombstones": sorted(self.tombstones),
        }
        d.update(self.extra)
        return d

    _KNOWN = {"hunch_ids", "votes", "comments", "provenance_edges", "tombstones"}

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "CurationState":
        return cls(
            hunch_ids=frozenset(d.get("hunch_ids", ())),
            votes={
                (v["hunch_id"], v["author_id"]): v["value"] for v in d.get("votes", ())
            },
            comments=tuple(Comment.from_json_dict(c) for c in d.get("comments", ())),
            provenance_edges=frozenset(
                (e["child"], e["parent"]) for e in d.get("provenance_edges", ())
            ),
            tombstones=frozenset(d.get("tombstones", ())),
            extra={k: v for k, v in d.items() if k not in cls._KNOWN},
        )


def _require_hunch(curation: CurationState, hunch_id: str) -> None:
    if hunch_id not in curation.hunch_ids:
        raise UnknownHunch(f"unknown hunch {hunch_id!r}", hunch_id=hunch_id)


def cast_vote(
    curation: CurationState, hunch_id: str, author: AuthorRef, value: int
) -> CurationState:
    """Record a +1/-1 vote; one vote per author per hunch, re-votes overwrite."""
    _require_hunch(curation, hunch_id)
    if value not in (1, -1):
        raise ValueError(f"vote must be +1 or -1, got {value!r}")
    votes = dict(curation.votes)
    votes[(hunch_id, author.author_id)] = value
    return replace(curation, votes=votes)


def add_comment(
    curation: CurationState,
    hunch_id: str,
    author: AuthorRef,
    text: str,
    parent_comment_id: Optional[str] = None,
    comment_id: Optional[str] = None,
    created_at: Optional[str] = None,
) -> CurationState:
    """Append a comment; replies must target a comment on the same hunch."""
    _require_hunch(curation, hunch_id)
    if not text or not text.strip():
        raise EmptyText("comment text must be non-empty")
    if parent_comment_id is not None:
        parent = next(
            (c for c in curation.comments if c.comment_id == parent_comment_id), None
        )
        if parent is None:
            raise UnknownParent(f"unknown parent comment {parent_comment_id!r}")
        if parent.hunch_id != hunch_id:
            raise CrossHunchParent(
                f"parent comment {parent_comment_id!r} belongs to hunch {parent.hunch_id!r}"
            )
    comment = Comment(
        comment_id=comment_id or new_id("c"),
        hunch_id=hunch_id,
        author=author,
        text=text,
        created_at=created_at or utc_now_rfc3339(),
        parent_comment_id=parent_comment_id,
    )
    return replace(curation, comments=curation.comments + (comment,))


def comment_threads(curation: CurationState, hunch_id: str) -> list[dict]:
    """Reconstruct the comment forest for a hunch, ordered by timestamp."""
    comments = sorted(
        curation.comments_for(hunch_id), key=lambda c: (c.created_at, c.comment_id)
    )
    nodes = {c.comment_id: {"comment": c, "replies": []} for c in comments}
    roots = []
    for c in comments:
        node = nodes[c.comment_id]
        if c.parent_comment_id and c.parent_comment_id in nodes:
            nodes[c.parent_comment_id]["replies"].append(node)
        else:
            roots.append(node)
    return roots


def provenance_ancestors(curation: CurationState, hunch_id: str) -> frozenset[str]:
    """Every hunch a hunch transitively builds on."""
    parents: dict[str, set[str]] = {}
    for child, parent in curation.provenance_edges:
        parents.setdefault(child, set()).add(parent)
    seen: set[str] = set()
    frontier = [hunch_id]
    while frontier:
        node = frontier.pop()
        for p in parents.get(node, ()):
            if p not in seen:
                seen.add(p)
                frontier.append(p)
    return frozenset(seen)


def link_provenance(
    curation: CurationState, child_hunch: str, parent_hunch: str
) -> CurationState:
    """Record that child builds on parent, refusing self-links and cycles."""
    _require_hunch(curation, child_hunch)
    _require_hunch(curation, parent_hunch)
    if child_hunch == parent_hunch:
        raise SelfLink(f"hunch {child_hunch!r} cannot build on itself")
    if child_hunch in provenance_ancestors(curation, parent_hunch):
        raise CycleDetected(
            f"linking {child_hunch!r} -> {parent_hunch!r} would create a cycle"
        )
    return replace(
        curation, provenance_edges=curation.provenance_edges | {(child_hunch, parent_hunch)}
    )


def tombstone(curation: CurationState, hunch_id: str) -> CurationState:
    """Soft-delete: the hunch stays resolvable but drops out of default listings."""
    _require_hunch(curation, hunch_id)
    return replace(curation, tombstones=curation.tombstones | {hunch_id})


def rank_hunches(
    hunches: Sequence[DataHunch],
    curation: CurationState,
    weights: WeightSpec,
) -> list[tuple[DataHunch, float]]:
    """Hunches by score = net votes x weight, descending.

    Ties break on earlier created_at, then lexicographic hunch id, so the
    all-zero case degrades to creation order.
    """
    scored = [
        (h, curation.net_votes(h.hunch_id) * weights.weight_of(h)) for h in hunches
    ]
    scored.sort(key=lambda hs: (-hs[1], hs[0].context.created_at, hs[0].hunch_id))
    return scored


# ---------------------------------------------------------------------------
# Narratives and curated reports

NARRATIVE_PROMPTS = (
    "belief about source",
    "relevant experience",
    "background knowledge",
)


@dataclass(frozen=True)
class NarrativeRecord:
    author: AuthorRef
    created_at: str
    prompt_answers: Mapping[str, str] = field(default_factory=dict)
    free_text: Optional[str] = None
    extra: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        answered = any(v and v.strip() for v in self.prompt_answers.values())
        if not answered and not (self.free_text and self.free_text.strip()):
            raise EmptyText("a narrative needs at least one non-empty field")
        unknown = set(self.prompt_answers) - set(NARRATIVE_PROMPTS)
        if unknown:
            raise ValueError(f"unknown narrative prompts {sorted(unknown)}")

    def to_json_dict(self) -> dict:
        d = {
            "author": self.author.to_json_dict(),
            "created_at": self.created_at,
            "prompt_answers": dict(sorted(self.prompt_answers.items())),
            "free_text": self.free_text,
        }
        d.update(self.extra)
        return d

    _KNOWN = {"author", "created_at", "prompt_answers", "free_text"}

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "NarrativeRecord":
        return cls(
            author=AuthorRef.from_json_dict(d["author"]),
            created_at=d["created_at"],
            prompt_answers=dict(d.get("prompt_answers", {})),
            free_text=d.get("free_text"),
            extra={k: v for k, v in d.items() if k not in cls._KNOWN},
        )


@dataclass(frozen=True)
class Theme:
    title: str
    text: str
    hunch_refs: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {"title": self.title, "text": self.text, "hunch_refs": list(self.hunch_refs)}

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "Theme":
        return cls(title=d["title"], text=d["text"], hunch_refs=tuple(d.get("hunch_refs", ())))


@dataclass(frozen=True)
class CurationReport:
    report_id: str
    curator: AuthorRef
    created_at: str
    included_hunch_ids: tuple[str, ...]
    themes: tuple[Theme, ...]
    narrative: str = ""
    extra: Mapping[str, object] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        d = {
            "report_id": self.report_id,
            "curator": self.curator.to_json_dict(),
            "created_at": self.created_at,
            "included_hunch_ids": list(self.included_hunch_ids),
            "themes": [t.to_json_dict() for t in self.themes],
            "narrative": self.narrative,
        }
        d.update(self.extra)
        return d

    _KNOWN = {"report_id", "curator", "created_at", "included_hunch_ids", "themes", "narrative"}

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "CurationReport":
        return cls(
            report_id=d["report_id"],
            curator=AuthorRef.from_json_dict(d["curator"]),
            created_at=d["created_at"],
            included_hunch_ids=tuple(d.get("included_hunch_ids", ())),
            themes=tuple(Theme.from_json_dict(t) for t in d.get("themes", ())),
            narrative=d.get("narrative", ""),
            extra={k: v for k, v in d.items() if k not in cls._KNOWN},
        )


def compile_report(
    hunches: Sequence[DataHunch],
    curation: CurationState,
    curator: AuthorRef,
    themes: Sequence[Theme],
    narrative: str = "",
    report_id: Optional[str] = None,
    created_at: Optional[str] = None,
) -> CurationReport:
    """Curate the given hunches into a report; every reference must resolve.

    Reports follow live records: they store ids, not snapshots, so later
    reads see hunches as they are (tombstoned ones included).
    """
    included = tuple(h.hunch_id for h in hunches)
    for hid in included:
        _require_hunch(curation, hid)
    for theme in themes:
        for hid in theme.hunch_refs:
            _require_hunch(curation, hid)
    return CurationReport(
        report_id=report_id or new_id("r"),
        curator=curator,
        created_at=created_at or utc_now_rfc3339(),
        included_hunch_ids=included,
        themes=tuple(themes),
        narrative=narrative,
    )
