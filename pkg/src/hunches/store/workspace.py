"""Per-dataset workspace: the single-writer store behind service and CLI.

Layout under the store root:

    <root>/<dataset_id>/dataset.json    immutable original, written once
    <root>/<dataset_id>/hunchfile.json  interchange snapshot (on save)
    <root>/<dataset_id>/events.log      append-only mutation log

The dataset file is never rewritten; every mutation appends one event whose
payload is the fully materialized record, and live state is exactly what
replaying the log produces. Writers hold an advisory file lock; readers
open read-only against the last durable state.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Optional

from filelock import FileLock

from ..communication.curation import (
    CurationReport,
    CurationState,
    NarrativeRecord,
    add_comment,
    cast_vote,
    link_provenance,
    tombstone,
)
from ..core.dataset import Dataset
from ..core.hunch import AuthorRef, DataHunch
from ..errors import UnknownDataset, UnknownHunch, UnknownView
from ..externalization.axes import ChartViewSpec
from ..jsonutil import canonical_bytes
from . import events as eventlog
from . import hunchfile as hf

DATASET_FILE = "dataset.json"
HUNCHFILE = "hunchfile.json"
EVENTS_FILE = "events.log"
LOCK_FILE = ".lock"


class Workspace:
    """Live state for one dataset plus its append-only history."""

    def __init__(self, directory: Path, dataset: Dataset, readonly: bool = False):
        self.directory = Path(directory)
        self.dataset = dataset
        self.readonly = readonly
        self.hunches: dict[str, DataHunch] = {}
        self.chart_views: dict[str, ChartViewSpec] = {}
        self.curation = CurationState()
        self.narratives: list[NarrativeRecord] = []
        self.reports: list[CurationReport] = []
        self.blind_mode = False
        self.next_seq = 1
        self._lock: Optional[FileLock] = None
        if not readonly:
            # thread_local=False: the service mutates from request worker
            # threads and releases at shutdown from the main thread.
            self._lock = FileLock(str(self.directory / LOCK_FILE), thread_local=False)
            self._lock.acquire(timeout=10)

    # -- lifecycle ---------------------------------------------------------

    @classmethod
    def create(cls, root: Path, dataset: Dataset) -> "Workspace":
        directory = Path(root) / dataset.dataset_id
        directory.mkdir(parents=True, exist_ok=True)
        dataset_path = directory / DATASET_FILE
        if dataset_path.exists():
            raise FileExistsError(f"dataset already ingested at {dataset_path}")
        hf.atomic_write_bytes(dataset_path, canonical_bytes(dataset.to_json_dict()))
        return cls(directory, dataset)

    @classmethod
    def open(cls, root: Path, dataset_id: str, readonly: bool = False) -> "Workspace":
        directory = Path(root) / dataset_id
        dataset_path = directory / DATASET_FILE
        if not dataset_path.exists():
            raise UnknownDataset(f"no dataset at {dataset_path}", dataset_id=dataset_id)
        dataset = Dataset.from_json_dict(hf.loads_json(dataset_path))
        ws = cls(directory, dataset, readonly=readonly)
        for event in eventlog.read_events(directory / EVENTS_FILE):
            ws._apply(event.kind, event.data)
            ws.next_seq = event.seq + 1
        return ws

    def close(self) -> None:
        if self._lock is not None:
            self._lock.release()
            self._lock = None

    def __enter__(self) -> "Workspace":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # -- event plumbing ------------------------------------------------------

    def _record(self, kind: str, data: Mapping) -> None:
        if self.readonly:
            raise PermissionError("workspace opened read-only")
        self._apply(kind, data)
        eventlog.append_event(self.directory / EVENTS_FILE, self.next_seq, kind, data)
        self.next_seq += 1

    def _apply(self, kind: str, data: Mapping) -> None:
        if kind == "hunch_recorded":
            hunch = DataHunch.from_json_dict(data)
            self.hunches[hunch.hunch_id] = hunch
            self.curation = self.curation.with_hunch(hunch.hunch_id)
        elif kind == "vote_cast":
            self.curation = cast_vote(
                self.curation,
                data["hunch_id"],
                AuthorRef.from_json_dict(data["author"]),
                data["value"],
            )
        elif kind == "comment_added":
            self.curation = add_comment(
                self.curation,
                data["hunch_id"],
                AuthorRef.from_json_dict(data["author"]),
                data["text"],
                parent_comment_id=data.get("parent_comment_id"),
                comment_id=data["comment_id"],
                created_at=data["created_at"],
            )
        elif kind == "provenance_linked":
            self.curation = link_provenance(self.curation, data["child"], data["parent"])
        elif kind == "narrative_added":
            self.narratives.append(NarrativeRecord.from_json_dict(data))
        elif kind == "report_compiled":
            self.reports.append(CurationReport.from_json_dict(data))
        elif kind == "blind_mode_set":
            self.blind_mode = bool(data["enabled"])
        elif kind == "hunch_deleted":
            self.curation = tombstone(self.curation, data["hunch_id"])
            if data.get("superseded_by"):
                extra = dict(self.curation.extra)
                supersedes = dict(extra.get("superseded", {}))
                supersedes[data["hunch_id"]] = data["superseded_by"]
                extra["superseded"] = supersedes
                from dataclasses import replace

                self.curation = replace(self.curation, extra=extra)
        elif kind == "chart_view_registered":
            view = ChartViewSpec.from_json_dict(data)
            self.chart_views[view.view_id] = view
        else:
            raise ValueError(f"unknown event kind {kind!r}")

    # -- mutations -----------------------------------------------------------

    def add_hunch(self, hunch: DataHunch) -> DataHunch:
        self._record("hunch_recorded", hunch.to_json_dict())
        return hunch

    def vote(self, hunch_id: str, author: AuthorRef, value: int) -> None:
        if hunch_id not in self.curation.hunch_ids:
            raise UnknownHunch(f"unknown hunch {hunch_id!r}", hunch_id=hunch_id)
        self._record(
            "vote_cast",
            {"hunch_id": hunch_id, "author": author.to_json_dict(), "value": value},
        )

    def comment(
        self,
        hunch_id: str,
        author: AuthorRef,
        text: str,
        parent_comment_id: Optional[str] = None,
    ):
        # Build through the pure operation first so errors surface before logging.
        probe = add_comment(self.curation, hunch_id, author, text, parent_comment_id)
        comment = probe.comments[-1]
        self._record("comment_added", comment.to_json_dict())
        return comment

    def link(self, child_hunch: str, parent_hunch: str) -> None:
        link_provenance(self.curation, child_hunch, parent_hunch)  # raises on cycle
        self._record("provenance_linked", {"child": child_hunch, "parent": parent_hunch})

    def add_narrative(self, narrative: NarrativeRecord) -> NarrativeRecord:
        self._record("narrative_added", narrative.to_json_dict())
        return narrative

    def add_report(self, report: CurationReport) -> CurationReport:
        self._record("report_compiled", report.to_json_dict())
        return report

    def set_blind_mode(self, enabled: bool) -> None:
        self._record("blind_mode_set", {"enabled": bool(enabled)})

    def delete_hunch(self, hunch_id: str, superseded_by: Optional[str] = None) -> None:
        if hunch_id not in self.curation.hunch_ids:
            raise UnknownHunch(f"unknown hunch {hunch_id!r}", hunch_id=hunch_id)
        if superseded_by is not None and superseded_by not in self.curation.hunch_ids:
            raise UnknownHunch(f"unknown hunch {superseded_by!r}", hunch_id=superseded_by)
        self._record("hunch_deleted", {"hunch_id": hunch_id, "superseded_by": superseded_by})

    def register_chart_view(self, view: ChartViewSpec) -> ChartViewSpec:
        view.check(self.dataset)
        self._record("chart_view_registered", view.to_json_dict())
        return view

    # -- reads ---------------------------------------------------------------

    def list_hunches(self, include_deleted: bool = False) -> list[DataHunch]:
        return [
            h
            for h in self.hunches.values()
            if include_deleted or h.hunch_id not in self.curation.tombstones
        ]

    def get_hunch(self, hunch_id: str) -> DataHunch:
        if hunch_id not in self.hunches:
            raise UnknownHunch(f"unknown hunch {hunch_id!r}", hunch_id=hunch_id)
        return self.hunches[hunch_id]

    def get_chart_view(self, view_id: str) -> ChartViewSpec:
        if view_id not in self.chart_views:
            raise UnknownView(f"unknown chart view {view_id!r}", view_id=view_id)
        return self.chart_views[view_id]

    def has_contributed(self, author_id: str) -> bool:
        return any(
            h.context.author.author_id == author_id for h in self.hunches.values()
        )

    def dataset_bytes(self) -> bytes:
        """Raw bytes of the ingested dataset file, for bitwise immutability checks."""
        return (self.directory / DATASET_FILE).read_bytes()

    # -- snapshots -------------------------------------------------------------

    def to_hunchfile(self, embed_dataset: bool = True) -> hf.HunchFile:
        return hf.HunchFile(
            dataset=self.dataset if embed_dataset else None,
            dataset_ref=None
            if embed_dataset
            else {"dataset_id": self.dataset.dataset_id, "fingerprint": self.dataset.fingerprint},
            hunches=tuple(self.hunches.values()),
            curation=self.curation,
            narratives=tuple(self.narratives),
            reports=tuple(self.reports),
            blind_mode=self.blind_mode,
        )

    def save(self) -> Path:
        path = self.directory / HUNCHFILE
        hf.save(self.to_hunchfile(), path)
        return path

    def state_bytes(self) -> bytes:
        """Canonical serialization of the full state; equal states, equal bytes."""
        return hf.dumps(self.to_hunchfile())


def replay(root: Path, dataset_id: str) -> Workspace:
    """Rebuild state purely from dataset.json and the event log."""
    return Workspace.open(root, dataset_id, readonly=True)


def list_dataset_ids(root: Path) -> list[str]:
    root = Path(root)
    if not root.exists():
        return []
    return sorted(
        p.name for p in root.iterdir() if (p / DATASET_FILE).exists()
    )
