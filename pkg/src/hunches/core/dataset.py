"""Immutable tabular datasets.

A dataset is the fixed "original data" perspective: an ordered schema, an
ordered list of identified items, and a content fingerprint. Nothing in
the engine ever mutates a dataset after ingest; every value-level change
lives in a derived view instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from ..errors import DuplicateIds
from ..jsonutil import content_hash

FIELD_KINDS = ("quantitative", "ordinal", "categorical", "temporal")

Scalar = Optional[object]  # int | float | str | bool | None


@dataclass(frozen=True)
class Field:
    name: str
    kind: str

    def __post_init__(self):
        if self.kind not in FIELD_KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")

    def to_json_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind}

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "Field":
        return cls(name=d["name"], kind=d["kind"])


@dataclass(frozen=True)
class DataItem:
    """One identified row. ``values`` maps every schema field to a scalar or None."""

    item_id: str
    values: Mapping[str, Scalar]

    def to_json_dict(self) -> dict:
        return {"item_id": self.item_id, "values": dict(self.values)}

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "DataItem":
        return cls(item_id=d["item_id"], values=dict(d["values"]))


def compute_fingerprint(schema: Sequence[Field], items: Sequence[DataItem]) -> str:
    """Content hash over schema and items; a pure function of both."""
    return content_hash(
        {
            "schema": [f.to_json_dict() for f in schema],
            "items": [it.to_json_dict() for it in items],
        }
    )


@dataclass(frozen=True)
class Dataset:
    dataset_id: str
    schema: tuple[Field, ...]
    items: tuple[DataItem, ...]
    fingerprint: str
    _by_id: Mapping[str, DataItem] = field(compare=False, repr=False, default=None)

    @classmethod
    def create(cls, dataset_id: str, schema: Sequence[Field], items: Sequence[DataItem]) -> "Dataset":
        """Build a dataset, normalizing item values to the schema and fingerprinting.

        Missing fields become None; a value for a field not in the schema is
        an error; duplicate item ids are rejected.
        """
        schema = tuple(schema)
        names = [f.name for f in schema]
        if len(set(names)) != len(names):
            raise ValueError("duplicate field names in schema")
        norm = []
        seen = set()
        for it in items:
            if it.item_id in seen:
                raise DuplicateIds(f"duplicate item_id {it.item_id!r}", item_id=it.item_id)
            seen.add(it.item_id)
            extra = set(it.values) - set(names)
            if extra:
                raise ValueError(f"item {it.item_id!r} has values for unknown fields {sorted(extra)}")
            norm.append(DataItem(it.item_id, {n: it.values.get(n) for n in names}))
        norm = tuple(norm)
        return cls(
            dataset_id=dataset_id,
            schema=schema,
            items=norm,
            fingerprint=compute_fingerprint(schema, norm),
            _by_id={it.item_id: it for it in norm},
        )

    def __post_init__(self):
        if self._by_id is None:
            object.__setattr__(self, "_by_id", {it.item_id: it for it in self.items})

    @property
    def item_ids(self) -> tuple[str, ...]:
        return tuple(it.item_id for it in self.items)

    def has_item(self, item_id: str) -> bool:
        return item_id in self._by_id

    def get_item(self, item_id: str) -> DataItem:
        return self._by_id[item_id]

    def field_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.schema)

    def get_field(self, name: str) -> Optional[Field]:
        for f in self.schema:
            if f.name == name:
                return f
        return None

    def quantitative_fields(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.schema if f.kind == "quantitative")

    def to_json_dict(self) -> dict:
        return {
            "dataset_id": self.dataset_id,
            "schema": [f.to_json_dict() for f in self.schema],
            "items": [it.to_json_dict() for it in self.items],
            "fingerprint": self.fingerprint,
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "Dataset":
        ds = cls.create(
            dataset_id=d["dataset_id"],
            schema=[Field.from_json_dict(f) for f in d["schema"]],
            items=[DataItem.from_json_dict(it) for it in d["items"]],
        )
        stored = d.get("fingerprint")
        if stored is not None and stored != ds.fingerprint:
            # Keep the recomputed value authoritative; a mismatch means the
            # document was edited by hand.
            raise ValueError("stored fingerprint does not match dataset content")
        return ds
