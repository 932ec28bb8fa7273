"""Deterministic artifact persistence.

Every JSON artifact is written with sorted keys and no timestamps, via a
temp file and atomic rename, so reruns with an identical configuration
produce byte-identical files. Model payloads are self-describing: they
embed the vocabulary (or embedding-table fingerprints), the preprocessing
config, the training config fingerprint, and all seeds.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Sequence

from .errors import DataError

__all__ = ["SCHEMA_VERSION", "canonical_json", "fingerprint",
           "atomic_write_text", "write_json", "read_json", "write_tsv"]

SCHEMA_VERSION = 1


def _plain(obj):
    """Recursively convert numpy scalars/arrays so json can serialize."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "tolist") and not isinstance(obj, (str, bytes)):
        # covers numpy arrays and numpy scalars alike
        return obj.tolist()
    return obj


def canonical_json(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, ensure_ascii=False,
                      indent=2)


def fingerprint(obj) -> str:
    """sha256 over the canonical JSON encoding."""
    payload = json.dumps(_plain(obj), sort_keys=True, ensure_ascii=False,
                         separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def atomic_write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.tmp{os.getpid()}")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def write_json(path: str | Path, payload: dict) -> None:
    atomic_write_text(path, canonical_json(payload) + "\n")


def read_json(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise DataError(f"file not found: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON ({exc.msg})") from exc


def write_tsv(path: str | Path, header: Sequence[str],
              rows: Sequence[Sequence]) -> None:
    """Plain TSV with repr-stable float formatting."""
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(_cell(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def _cell(value) -> str:
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        value = value.item()
    if isinstance(value, float):
        # builtin repr is shortest-round-trip and deterministic
        return repr(value)
    return str(value)
