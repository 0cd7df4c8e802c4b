"""Deterministic CSV/JSON export and the content-addressed zero cache.

CSV uses a header row, '.' decimal and 17 significant digits so doubles
round-trip exactly.  Data files never contain timestamps; run metadata
goes into a '.meta.json' sidecar.
"""

from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path

from .errors import CacheIOError


def fmt(x) -> str:
    """17-significant-digit decimal rendering of one value."""
    if isinstance(x, float):
        return format(x, ".17g")
    if x is None:
        return ""
    return str(x)


def write_csv(rows, header, out: str | None) -> None:
    """Write rows (iterables of cells) with a header line."""
    lines = [",".join(header)]
    lines.extend(",".join(fmt(c) for c in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def write_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, default=_jsonable) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _jsonable(obj):
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    if hasattr(obj, "tolist"):
        return obj.tolist()
    raise TypeError(f"not JSON-serializable: {type(obj)}")


def write_sidecar(out: str | None, meta: dict) -> None:
    if out is None:
        return
    Path(str(out) + ".meta.json").write_text(
        json.dumps(meta, indent=2, default=_jsonable) + "\n"
    )


def request_key(request: dict) -> str:
    """Content hash of a canonicalized request dict."""
    blob = json.dumps(request, sort_keys=True, default=_jsonable).encode()
    return hashlib.sha256(blob).hexdigest()


class ZeroCache:
    """Zero lists keyed by the content hash of their request."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def path_for(self, request: dict) -> Path:
        return self.directory / (request_key(request) + ".json")

    def load(self, request: dict) -> dict | None:
        p = self.path_for(request)
        if not p.exists():
            return None
        try:
            return json.loads(p.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CacheIOError(f"cache read failed at {p}: {exc}") from exc

    def store(self, request: dict, payload: dict) -> None:
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            self.path_for(request).write_text(
                json.dumps(payload, indent=2, default=_jsonable) + "\n"
            )
        except OSError as exc:
            raise CacheIOError(f"cache write failed: {exc}") from exc
