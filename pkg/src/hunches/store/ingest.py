"""Tabular ingestion: CSV or JSON rows into immutable datasets.

Item ids come from a declared id column when there is one, else from the
row index ("r0", "r1", ...). Field kinds can be declared or are inferred:
all-numeric columns are quantitative, ISO-date columns temporal, the rest
categorical (ordinal only ever by declaration). Re-ingesting identical
bytes always yields the identical fingerprint.
"""

from __future__ import annotations

import csv
import io
import math
import re
from typing import Mapping, Optional, Sequence

from ..core.dataset import DataItem, Dataset, Field, FIELD_KINDS
from ..errors import DuplicateIds, EmptyInput, RaggedRows
from ..jsonutil import new_id

_ISO_DATE = re.compile(r"^\d{4}-\d{2}-\d{2}([T ]\d{2}:\d{2}(:\d{2})?(\.\d+)?(Z|[+-]\d{2}:\d{2})?)?$")


def _coerce_cell(text: str):
    """CSV cell -> scalar: int, float, or string; empty means null."""
    if text == "":
        return None
    try:
        return int(text)
    except ValueError:
        pass
    try:
        v = float(text)
        return v if math.isfinite(v) else text
    except ValueError:
        return text


def _infer_kind(values) -> str:
    present = [v for v in values if v is not None]
    if not present:
        return "categorical"
    if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in present):
        return "quantitative"
    if all(isinstance(v, str) and _ISO_DATE.match(v) for v in present):
        return "temporal"
    return "categorical"


def _build_dataset(
    names: Sequence[str],
    rows: Sequence[Mapping[str, object]],
    dataset_id: Optional[str],
    id_field: Optional[str],
    kinds: Optional[Mapping[str, str]],
) -> Dataset:
    if not rows:
        raise EmptyInput("no data rows")
    kinds = dict(kinds or {})
    for name, kind in kinds.items():
        if kind not in FIELD_KINDS:
            raise ValueError(f"unknown declared kind {kind!r} for field {name!r}")
        if name not in names:
            raise ValueError(f"declared kind for unknown field {name!r}")

    items = []
    seen = set()
    for index, row in enumerate(rows):
        if id_field is not None:
            raw = row.get(id_field)
            if raw is None:
                raise RaggedRows(f"row {index} has no id value in {id_field!r}")
            item_id = str(raw)
        else:
            item_id = f"r{index}"
        if item_id in seen:
            raise DuplicateIds(f"duplicate item_id {item_id!r}", item_id=item_id)
        seen.add(item_id)
        items.append(DataItem(item_id, {n: row.get(n) for n in names}))

    schema = [
        Field(n, kinds.get(n) or _infer_kind([it.values[n] for it in items]))
        for n in names
    ]
    return Dataset.create(dataset_id or new_id("d"), schema, items)


def ingest_csv(
    text: str,
    dataset_id: Optional[str] = None,
    id_field: Optional[str] = None,
    kinds: Optional[Mapping[str, str]] = None,
) -> Dataset:
    """UTF-8, comma-separated, first row header."""
    reader = csv.reader(io.StringIO(text))
    table = [row for row in reader]
    if not table or not any(cell.strip() for cell in table[0]):
        raise EmptyInput("empty CSV input")
    header = [h.strip() for h in table[0]]
    rows = []
    for lineno, raw in enumerate(table[1:], start=2):
        if len(raw) != len(header):
            raise RaggedRows(
                f"line {lineno}: expected {len(header)} cells, got {len(raw)}", line=lineno
            )
        rows.append({h: _coerce_cell(c) for h, c in zip(header, raw)})
    return _build_dataset(header, rows, dataset_id, id_field, kinds)


def ingest_rows(
    rows: Sequence[Mapping[str, object]],
    dataset_id: Optional[str] = None,
    id_field: Optional[str] = None,
    kinds: Optional[Mapping[str, str]] = None,
) -> Dataset:
    """JSON-style row dicts; the schema is the union of keys in row order."""
    if not rows:
        raise EmptyInput("no rows")
    names: list[str] = []
    for row in rows:
        for k in row:
            if k not in names:
                names.append(k)
    return _build_dataset(names, rows, dataset_id, id_field, kinds)


def ingest_dataset(
    source,
    dataset_id: Optional[str] = None,
    id_field: Optional[str] = None,
    kinds: Optional[Mapping[str, str]] = None,
) -> Dataset:
    """Dispatch on source type: CSV text or a sequence of row mappings."""
    if isinstance(source, str):
        return ingest_csv(source, dataset_id, id_field, kinds)
    return ingest_rows(source, dataset_id, id_field, kinds)
