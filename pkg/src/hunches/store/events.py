"""Append-only event log: one JSON record per line, gapless sequence numbers.

Events carry fully materialized records (hunch documents, comments with
their ids and timestamps), so replaying a log reproduces live state exactly
without re-stamping anything.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from ..errors import CorruptFile, GapDetected
from ..jsonutil import canonical_dumps, utc_now_rfc3339

EVENT_KINDS = (
    "hunch_recorded",
    "vote_cast",
    "comment_added",
    "provenance_linked",
    "narrative_added",
    "report_compiled",
    "blind_mode_set",
    "hunch_deleted",
    "chart_view_registered",
)


@dataclass(frozen=True)
class Event:
    seq: int
    ts: str
    kind: str
    data: Mapping

    def to_json_dict(self) -> dict:
        return {"seq": self.seq, "ts": self.ts, "kind": self.kind, "data": dict(self.data)}

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "Event":
        return cls(seq=d["seq"], ts=d["ts"], kind=d["kind"], data=d.get("data", {}))


def append_event(path: Path, seq: int, kind: str, data: Mapping) -> Event:
    if kind not in EVENT_KINDS:
        raise ValueError(f"unknown event kind {kind!r}")
    event = Event(seq=seq, ts=utc_now_rfc3339(), kind=kind, data=dict(data))
    line = canonical_dumps(event.to_json_dict())
    with open(path, "a", encoding="utf-8") as f:
        f.write(line + "\n")
    return event


def read_events(path: Path) -> list[Event]:
    """Parse the full log, checking the sequence is gapless from 1."""
    path = Path(path)
    if not path.exists():
        return []
    events = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorruptFile(
                    f"invalid JSON on log line {lineno}: {e.msg}", line=lineno
                ) from None
            events.append(Event.from_json_dict(doc))
    for i, event in enumerate(events, start=1):
        if event.seq != i:
            raise GapDetected(
                f"expected seq {i}, found {event.seq}", expected=i, found=event.seq
            )
    return events
