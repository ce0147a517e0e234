"""Persistence: ingestion, the interchange format, the event log, workspaces."""

from .events import EVENT_KINDS, Event, append_event, read_events
from .hunchfile import FORMAT_VERSION, HunchFile, atomic_write_bytes, dumps, load, loads, save
from .ingest import ingest_csv, ingest_dataset, ingest_rows
from .workspace import Workspace, list_dataset_ids, replay

__all__ = [name for name in dir() if not name.startswith("_")]
