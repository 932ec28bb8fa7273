"""Publication corpus I/O and deterministic splitting.

Records are (id, optional binary label, title, abstract); supported file
formats are tab-delimited TSV with a header and JSONL with one object per
line (see the format notes in the README). Splitting is seeded, optionally
stratified, and order-normalized by id so the partition does not depend on
file row order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DataError

__all__ = ["DocumentRecord", "CorpusSplit", "load_corpus", "save_corpus",
           "split_corpus"]

_MAX_REPORTED_ROWS = 20


@dataclass(frozen=True)
class DocumentRecord:
    """One publication: identifier, optional label, title and abstract."""

    id: str
    label: int | None
    title: str
    abstract: str

    def __post_init__(self):
        if not self.id:
            raise DataError("record id must be non-empty")
        if not self.title and not self.abstract:
            raise DataError(f"empty document {self.id}")
        if self.label is not None and self.label not in (0, 1):
            raise DataError(f"label of {self.id} must be 0 or 1, got {self.label!r}")

    @property
    def text(self) -> str:
        """Title and abstract joined by a single space."""
        return " ".join(part for part in (self.title, self.abstract) if part)


@dataclass(frozen=True)
class CorpusSplit:
    """Disjoint train / meta-train / validation partition of a corpus."""

    train: tuple[DocumentRecord, ...]
    meta_train: tuple[DocumentRecord, ...]
    validation: tuple[DocumentRecord, ...]
    seed: int

    def __post_init__(self):
        ids = [r.id for part in (self.train, self.meta_train, self.validation)
               for r in part]
        if len(ids) != len(set(ids)):
            raise DataError("split parts are not disjoint by id")

    @property
    def parts(self) -> dict[str, tuple[DocumentRecord, ...]]:
        return {"train": self.train, "meta_train": self.meta_train,
                "validation": self.validation}


def _infer_format(path: Path, format: str | None) -> str:
    if format is not None:
        if format not in ("tsv", "jsonl"):
            raise DataError(f"unsupported corpus format {format!r}")
        return format
    suffix = path.suffix.lower()
    if suffix == ".tsv":
        return "tsv"
    if suffix in (".jsonl", ".json"):
        return "jsonl"
    raise DataError(f"cannot infer corpus format from {path.name!r}; "
                    "pass format='tsv' or 'jsonl'")


def _parse_label(value, where: str):
    if value is None or value == "":
        return None
    if value in (0, 1):
        return int(value)
    if value in ("0", "1"):
        return int(value)
    raise DataError(f"{where}: label must be 0 or 1, got {value!r}")


def load_corpus(path: str | Path, format: str | None = None) -> list[DocumentRecord]:
    """Load records from a TSV or JSONL file.

    Rows violating the record invariants are collected and reported with
    their line numbers; duplicate ids are rejected.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"corpus file not found: {path}")
    fmt = _infer_format(path, format)
    records: list[DocumentRecord] = []
    problems: list[str] = []
    seen: dict[str, int] = {}

    with path.open("r", encoding="utf-8", newline="") as f:
        if fmt == "tsv":
            header_line = f.readline()
            if not header_line:
                raise DataError(f"{path}: empty file")
            header = header_line.rstrip("\r\n").split("\t")
            required = {"id", "title", "abstract"}
            missing = required - set(header)
            if missing:
                raise DataError(f"{path}: header lacks columns {sorted(missing)}")
            col = {name: i for i, name in enumerate(header)}
            has_label = "label" in col
            for lineno, line in enumerate(f, start=2):
                line = line.rstrip("\r\n")
                if not line:
                    continue
                cells = line.split("\t")
                if len(cells) != len(header):
                    problems.append(f"line {lineno}: expected {len(header)} "
                                    f"columns, got {len(cells)}")
                    continue
                try:
                    label = _parse_label(cells[col["label"]] if has_label else None,
                                         f"line {lineno}")
                    rec = DocumentRecord(id=cells[col["id"]], label=label,
                                         title=cells[col["title"]],
                                         abstract=cells[col["abstract"]])
                except DataError as exc:
                    problems.append(f"line {lineno}: {exc}")
                    continue
                _register(rec, lineno, seen, records, problems)
        else:
            for lineno, line in enumerate(f, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    problems.append(f"line {lineno}: invalid JSON ({exc.msg})")
                    continue
                if not isinstance(obj, dict):
                    problems.append(f"line {lineno}: expected an object")
                    continue
                try:
                    rec = DocumentRecord(
                        id=str(obj.get("id", "")),
                        label=_parse_label(obj.get("label"), f"line {lineno}"),
                        title=str(obj.get("title", "") or ""),
                        abstract=str(obj.get("abstract", "") or ""),
                    )
                except DataError as exc:
                    problems.append(f"line {lineno}: {exc}")
                    continue
                _register(rec, lineno, seen, records, problems)

    if problems:
        shown = "; ".join(problems[:_MAX_REPORTED_ROWS])
        more = len(problems) - _MAX_REPORTED_ROWS
        if more > 0:
            shown += f"; ... and {more} more"
        raise DataError(f"{path}: {len(problems)} bad row(s): {shown}")
    return records


def _register(rec, lineno, seen, records, problems):
    if rec.id in seen:
        problems.append(f"line {lineno}: duplicate id {rec.id!r} "
                        f"(first seen line {seen[rec.id]})")
        return
    seen[rec.id] = lineno
    records.append(rec)


def save_corpus(path: str | Path, records: Iterable[DocumentRecord],
                format: str | None = None) -> None:
    """Write records to TSV or JSONL; loading the file back yields
    field-identical records.

    TSV cannot carry tabs or newlines inside fields; such records are
    rejected rather than silently mangled (use JSONL for arbitrary text).
    """
    path = Path(path)
    fmt = _infer_format(path, format)
    records = list(records)
    lines: list[str] = []
    if fmt == "tsv":
        lines.append("id\tlabel\ttitle\tabstract")
        for rec in records:
            for name, value in (("id", rec.id), ("title", rec.title),
                                ("abstract", rec.abstract)):
                if any(ch in value for ch in "\t\r\n"):
                    raise DataError(f"record {rec.id}: {name} contains a tab or "
                                    "newline; write JSONL instead")
            label = "" if rec.label is None else str(rec.label)
            lines.append(f"{rec.id}\t{label}\t{rec.title}\t{rec.abstract}")
    else:
        for rec in records:
            lines.append(json.dumps(
                {"id": rec.id, "label": rec.label, "title": rec.title,
                 "abstract": rec.abstract},
                ensure_ascii=False, sort_keys=True))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _apportion(n: int, fractions: Sequence[float]) -> list[int]:
    """Largest-remainder rounding of n * fractions to integers summing to n."""
    quotas = [f * n for f in fractions]
    counts = [math.floor(q) for q in quotas]
    shortfall = n - sum(counts)
    by_remainder = sorted(range(len(fractions)),
                          key=lambda i: (-(quotas[i] - counts[i]), i))
    for i in by_remainder[:shortfall]:
        counts[i] += 1
    return counts


def split_corpus(corpus: Sequence[DocumentRecord],
                 fractions: tuple[float, float, float],
                 stratified: bool = True,
                 seed: int = 0) -> CorpusSplit:
    """Partition a labelled corpus into train / meta-train / validation.

    Deterministic given the seed and independent of input order (records
    are order-normalized by id before the seeded shuffle). When
    stratified, per-class part sizes stay within one record of the
    requested fractions. A meta fraction of 0 yields an empty meta slice.
    """
    f_train, f_meta, f_val = fractions
    if any(f < 0 for f in fractions) or f_train <= 0:
        raise DataError(f"fractions must be non-negative with train > 0, "
                        f"got {fractions}")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise DataError(f"fractions must sum to 1, got {sum(fractions)!r}")
    unlabelled = [r.id for r in corpus if r.label is None]
    if unlabelled:
        raise DataError(f"cannot split: unlabelled record(s) "
                        f"{unlabelled[:_MAX_REPORTED_ROWS]}")
    ids = [r.id for r in corpus]
    if len(ids) != len(set(ids)):
        raise DataError("corpus contains duplicate ids")

    ordered = sorted(corpus, key=lambda r: r.id)
    rng = np.random.default_rng(seed)
    if stratified:
        groups = [[r for r in ordered if r.label == y] for y in (0, 1)]
    else:
        groups = [list(ordered)]

    parts: tuple[list[DocumentRecord], ...] = ([], [], [])
    for group in groups:
        perm = rng.permutation(len(group))
        shuffled = [group[i] for i in perm]
        counts = _apportion(len(group), fractions)
        start = 0
        for part, count in zip(parts, counts):
            part.extend(shuffled[start:start + count])
            start += count
    return CorpusSplit(train=tuple(parts[0]), meta_train=tuple(parts[1]),
                       validation=tuple(parts[2]), seed=seed)
