"""Canonical JSON, content hashing, timestamps and id generation.

The interchange format depends on byte-stable serialization: object keys
sorted, no whitespace, floats in shortest round-trip decimal form, UTF-8
emitted verbatim. Equal states must serialize to equal bytes, so every
persisted document goes through :func:`canonical_dumps`.
"""

from __future__ import annotations

import hashlib
import json
import uuid
from datetime import datetime, timezone


def canonical_dumps(obj) -> str:
    """Serialize to the canonical JSON form (sorted keys, no whitespace).

    Floats use Python's repr, which is the shortest string that round-trips
    to the same double. Non-finite numbers are rejected: the interchange
    format is strict JSON.
    """
    return json.dumps(
        obj,
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
        allow_nan=False,
    )


def canonical_bytes(obj) -> bytes:
    return canonical_dumps(obj).encode("utf-8")


def content_hash(obj) -> str:
    """sha256 hex digest of the canonical serialization."""
    return hashlib.sha256(canonical_bytes(obj)).hexdigest()


def utc_now_rfc3339() -> str:
    """Current UTC time as RFC 3339 with millisecond precision."""
    now = datetime.now(timezone.utc)
    return now.strftime("%Y-%m-%dT%H:%M:%S.") + f"{now.microsecond // 1000:03d}Z"


def parse_rfc3339(ts: str) -> datetime:
    if ts.endswith("Z"):
        ts = ts[:-1] + "+00:00"
    return datetime.fromisoformat(ts)


def new_id(prefix: str) -> str:
    return f"{prefix}-{uuid.uuid4().hex[:12]}"
