"""Pre-trained word-embedding tables and document vector composition.

Two ingestion paths: the textual word2vec interchange format (header line
"count dimension", then one term plus components per line), and a TSV
sidecar of precomputed per-document vectors for the sentence-vector
pathway (the sentence encoder itself is an external artifact). Document
embeddings are the arithmetic mean of in-table token vectors; tokens
missing from the table are skipped, and documents with no in-table token
at all get the zero vector and are flagged.

Tables at real biomedical scale hold millions of terms, so parsing is
streaming: one line in memory at a time.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DataError

__all__ = ["EmbeddingTable", "load_embedding_table", "average_embedding",
           "embed_documents", "load_document_vectors"]

logger = logging.getLogger(__name__)


@dataclass
class EmbeddingTable:
    """Fixed-dimension term-to-vector map."""

    dimension: int
    vectors: dict[str, np.ndarray]
    name: str = "embedding"

    def __contains__(self, term: str) -> bool:
        return term in self.vectors

    def __getitem__(self, term: str) -> np.ndarray:
        return self.vectors[term]

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def fingerprint(self) -> str:
        head = hashlib.sha256()
        head.update(f"{self.name}|{self.dimension}|{len(self.vectors)}".encode())
        return head.hexdigest()


def load_embedding_table(path: str | Path, format: str = "w2v_text",
                         name: str | None = None) -> EmbeddingTable:
    """Parse a textual word2vec table; the binary variant is unsupported.

    Duplicate terms keep the last occurrence (with a warning). Rows whose
    component count disagrees with the header, or with non-finite or
    non-numeric components, are rejected with their line number.
    """
    if format != "w2v_text":
        raise DataError(f"unsupported embedding format {format!r}")
    path = Path(path)
    if not path.exists():
        raise DataError(f"embedding file not found: {path}")
    vectors: dict[str, np.ndarray] = {}
    with path.open("r", encoding="utf-8") as f:
        header = f.readline()
        if not header.strip():
            raise DataError(f"{path}: empty embedding file")
        parts = header.split()
        if len(parts) != 2:
            raise DataError(f"{path}: line 1: header must be 'count dimension'")
        try:
            count, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise DataError(f"{path}: line 1: header must be 'count dimension'")
        if dim < 1:
            raise DataError(f"{path}: line 1: dimension must be >= 1")
        duplicates = 0
        for lineno, line in enumerate(f, start=2):
            if not line.strip():
                continue
            cells = line.rstrip("\n").split(" ")
            # tolerate a trailing space before the newline (common in exports)
            if cells and cells[-1] == "":
                cells.pop()
            if len(cells) != dim + 1:
                raise DataError(f"{path}: line {lineno}: expected {dim} "
                                f"components, got {len(cells) - 1}")
            term = cells[0]
            try:
                vec = np.array(cells[1:], dtype=np.float64)
            except ValueError:
                raise DataError(f"{path}: line {lineno}: non-numeric component")
            if not np.all(np.isfinite(vec)):
                raise DataError(f"{path}: line {lineno}: non-finite component")
            if term in vectors:
                duplicates += 1
            vectors[term] = vec
    if duplicates:
        logger.warning("%s: %d duplicate term(s); last occurrence kept",
                       path, duplicates)
    if not vectors:
        raise DataError(f"{path}: no embedding rows")
    if count != len(vectors) + duplicates:
        logger.warning("%s: header declared %d terms, parsed %d",
                       path, count, len(vectors) + duplicates)
    return EmbeddingTable(dimension=dim, vectors=vectors,
                          name=name or path.stem)


def _mean_of_hits(doc: Sequence[str], table: EmbeddingTable
                  ) -> tuple[np.ndarray, int]:
    total = np.zeros(table.dimension)
    hits = 0
    for token in doc:
        vec = table.vectors.get(token)
        if vec is not None:
            total += vec
            hits += 1
    return (total / hits if hits else total), hits


def average_embedding(doc: Sequence[str], table: EmbeddingTable) -> np.ndarray:
    """Mean of the embeddings of in-table tokens, with multiplicity.

    Returns the zero vector when no token is in the table (logged per
    document so the effect of skipping is measurable).
    """
    mean, hits = _mean_of_hits(doc, table)
    if hits == 0:
        logger.debug("document with no in-table token under %s", table.name)
    return mean


def embed_documents(docs: Sequence[Sequence[str]], table: EmbeddingTable
                    ) -> tuple[np.ndarray, list[int]]:
    """Embed a batch of token sequences; returns (matrix, flagged rows).

    Flagged rows are the documents that had no in-table token and were
    mapped to the zero vector.
    """
    out = np.zeros((len(docs), table.dimension))
    flagged = []
    for row, doc in enumerate(docs):
        mean, hits = _mean_of_hits(doc, table)
        out[row] = mean
        if hits == 0:
            flagged.append(row)
    if flagged:
        logger.debug("%d/%d documents had no in-table token under %s",
                     len(flagged), len(docs), table.name)
    return out, flagged


def load_document_vectors(path: str | Path) -> dict[str, np.ndarray]:
    """Load a TSV sidecar of precomputed document vectors (id, then
    components); dimension must be constant and ids unique."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"document-vector file not found: {path}")
    out: dict[str, np.ndarray] = {}
    dim: int | None = None
    with path.open("r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\r\n")
            if not line:
                continue
            cells = line.split("\t")
            if len(cells) < 2:
                raise DataError(f"{path}: line {lineno}: expected id plus "
                                "components")
            doc_id = cells[0]
            if doc_id in out:
                raise DataError(f"{path}: line {lineno}: duplicate id {doc_id!r}")
            try:
                vec = np.array(cells[1:], dtype=np.float64)
            except ValueError:
                raise DataError(f"{path}: line {lineno}: non-numeric component")
            if not np.all(np.isfinite(vec)):
                raise DataError(f"{path}: line {lineno}: non-finite component")
            if dim is None:
                dim = vec.size
            elif vec.size != dim:
                raise DataError(f"{path}: line {lineno}: dimension {vec.size} "
                                f"differs from {dim}")
            out[doc_id] = vec
    return out
