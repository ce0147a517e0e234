"""The portable hunch interchange document.

A HunchFile carries everything needed to read a community's hunches in
context: the dataset (embedded or referenced by fingerprint), every hunch,
the curation state, narratives, and reports. Serialization is canonical so
serialize-parse-serialize is a fixed point, and unknown fields survive the
round trip for forward compatibility.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from ..communication.curation import CurationReport, CurationState, NarrativeRecord
from ..core.dataset import Dataset
from ..core.hunch import DataHunch
from ..core.validation import ValidationReport, validate_hunch
from ..errors import CorruptFile, VersionUnsupported
from ..jsonutil import canonical_bytes

FORMAT_VERSION = "1"


@dataclass(frozen=True)
class HunchFile:
    dataset: Optional[Dataset]  # embedded, or None when only referenced
    dataset_ref: Optional[dict] = None  # {"dataset_id":..., "fingerprint":...}
    hunches: tuple[DataHunch, ...] = ()
    curation: CurationState = field(default_factory=CurationState)
    narratives: tuple[NarrativeRecord, ...] = ()
    reports: tuple[CurationReport, ...] = ()
    blind_mode: bool = False
    format_version: str = FORMAT_VERSION
    extra: Mapping[str, object] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        if self.dataset is not None:
            dataset_doc = self.dataset.to_json_dict()
        else:
            dataset_doc = dict(self.dataset_ref or {})
        d = {
            "format_version": self.format_version,
            "dataset": dataset_doc,
            "hunches": [h.to_json_dict() for h in self.hunches],
            "curation": self.curation.to_json_dict(),
            "narratives": [n.to_json_dict() for n in self.narratives],
            "reports": [r.to_json_dict() for r in self.reports],
            "blind_mode": self.blind_mode,
        }
        d.update(self.extra)
        return d

    _KNOWN = {
        "format_version", "dataset", "hunches", "curation",
        "narratives", "reports", "blind_mode",
    }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "HunchFile":
        version = d.get("format_version")
        if version != FORMAT_VERSION:
            raise VersionUnsupported(
                f"format_version {version!r} not supported (expected {FORMAT_VERSION!r})"
            )
        dataset_doc = d.get("dataset") or {}
        if "items" in dataset_doc:
            dataset, ref = Dataset.from_json_dict(dataset_doc), None
        else:
            dataset, ref = None, dict(dataset_doc)
        return cls(
            dataset=dataset,
            dataset_ref=ref,
            hunches=tuple(DataHunch.from_json_dict(h) for h in d.get("hunches", ())),
            curation=CurationState.from_json_dict(d.get("curation", {})),
            narratives=tuple(NarrativeRecord.from_json_dict(n) for n in d.get("narratives", ())),
            reports=tuple(CurationReport.from_json_dict(r) for r in d.get("reports", ())),
            blind_mode=bool(d.get("blind_mode", False)),
            extra={k: v for k, v in d.items() if k not in cls._KNOWN},
        )

    def validation_reports(self) -> dict[str, ValidationReport]:
        """Validate every embedded hunch against the embedded dataset."""
        if self.dataset is None:
            return {}
        return {h.hunch_id: validate_hunch(h, self.dataset) for h in self.hunches}

    def stale_hunch_ids(self) -> frozenset[str]:
        """Hunches recorded against different dataset content."""
        if self.dataset is not None:
            current = self.dataset.fingerprint
        elif self.dataset_ref and "fingerprint" in self.dataset_ref:
            current = self.dataset_ref["fingerprint"]
        else:
            return frozenset()
        return frozenset(
            h.hunch_id for h in self.hunches if h.dataset_fingerprint != current
        )


def dumps(hf: HunchFile) -> bytes:
    return canonical_bytes(hf.to_json_dict())


def loads(data: bytes) -> HunchFile:
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as e:
        raise CorruptFile(f"not UTF-8 at byte {e.start}", offset=e.start) from None
    except json.JSONDecodeError as e:
        raise CorruptFile(
            f"invalid JSON at line {e.lineno} column {e.colno}", line=e.lineno, offset=e.pos
        ) from None
    if not isinstance(doc, dict):
        raise CorruptFile("top level must be a JSON object")
    return HunchFile.from_json_dict(doc)


def loads_json(path) -> dict:
    """Parse a JSON document from disk, mapping failures to CorruptFile."""
    data = Path(path).read_bytes()
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as e:
        raise CorruptFile(f"not UTF-8 at byte {e.start}", offset=e.start) from None
    except json.JSONDecodeError as e:
        raise CorruptFile(
            f"invalid JSON at line {e.lineno} column {e.colno}", line=e.lineno, offset=e.pos
        ) from None
    if not isinstance(doc, dict):
        raise CorruptFile("top level must be a JSON object")
    return doc


def atomic_write_bytes(path: Path, data: bytes) -> None:
    """Write via a temp file in the same directory plus rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(hf: HunchFile, path) -> None:
    atomic_write_bytes(Path(path), dumps(hf))


def load(path) -> HunchFile:
    return loads(Path(path).read_bytes())
