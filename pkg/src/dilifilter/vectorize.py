"""Frozen vocabulary and sparse document vectors (BOW and TF-IDF).

The vocabulary is fit once on training tokens and never grows; terms seen
only at prediction time are silently dropped. TF-IDF uses raw term counts
times the smoothed inverse document frequency ln((1+N)/(1+df)) + 1,
followed by L2 normalization of each document vector, so every non-zero
document has unit Euclidean norm and no division by zero can occur.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse

from .errors import DataError

__all__ = ["Vocabulary", "SparseVector", "fit_vocabulary", "bow_vector",
           "tfidf_vector", "docs_to_matrix"]


@dataclass(frozen=True)
class SparseVector:
    """Term-indexed sparse vector; only non-zero values are stored."""

    entries: dict[int, float]
    dimension: int

    def __post_init__(self):
        for index, value in self.entries.items():
            if not 0 <= index < self.dimension:
                raise ValueError(f"index {index} outside dimension {self.dimension}")
            if value == 0:
                raise ValueError(f"stored zero at index {index}")

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dimension)
        for index, value in self.entries.items():
            out[index] = value
        return out


class Vocabulary:
    """Bidirectional term/index map with per-term document frequencies."""

    def __init__(self, term_to_index: dict[str, int],
                 document_frequency: dict[str, int], corpus_size: int):
        self.term_to_index = term_to_index
        self.document_frequency = document_frequency
        self.corpus_size = corpus_size
        self.terms = [None] * len(term_to_index)
        for term, index in term_to_index.items():
            self.terms[index] = term
        if any(t is None for t in self.terms):
            raise ValueError("term indices must be 0..V-1 without gaps")
        # idf aligned with indices, shared by all vectorization calls
        n = corpus_size
        self.idf = np.array(
            [math.log((1 + n) / (1 + document_frequency[t])) + 1
             for t in self.terms])

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.term_to_index

    def to_dict(self) -> dict:
        return {"terms": list(self.terms),
                "df": [self.document_frequency[t] for t in self.terms],
                "n_docs": self.corpus_size}

    @classmethod
    def from_dict(cls, d: dict) -> "Vocabulary":
        terms = d["terms"]
        return cls({t: i for i, t in enumerate(terms)},
                   dict(zip(terms, d["df"])), d["n_docs"])

    @property
    def fingerprint(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True,
                             ensure_ascii=False).encode("utf-8")
        return hashlib.sha256(payload).hexdigest()


def fit_vocabulary(docs: Sequence[Sequence[str]], min_df: int = 1,
                   max_df: float = 1.0) -> Vocabulary:
    """Build a frozen vocabulary from training token sequences.

    df(t) counts documents containing t (not occurrences); indices follow
    lexicographic term order. min_df/max_df pruning is off by default.
    """
    n_docs = len(docs)
    df: Counter[str] = Counter()
    for doc in docs:
        df.update(set(doc))
    if not df:
        raise DataError("all documents empty; cannot fit a vocabulary")
    max_count = max_df * n_docs if isinstance(max_df, float) else max_df
    kept = sorted(t for t, c in df.items() if min_df <= c <= max_count)
    if not kept:
        raise DataError("df pruning removed every term")
    return Vocabulary({t: i for i, t in enumerate(kept)},
                      {t: df[t] for t in kept}, n_docs)


def bow_vector(doc: Sequence[str], vocab: Vocabulary) -> SparseVector:
    """Raw term-occurrence counts over the frozen vocabulary."""
    counts: Counter[int] = Counter()
    index = vocab.term_to_index
    for token in doc:
        i = index.get(token)
        if i is not None:
            counts[i] += 1
    return SparseVector({i: float(c) for i, c in sorted(counts.items())},
                        len(vocab))


def tfidf_vector(doc: Sequence[str], vocab: Vocabulary) -> SparseVector:
    """Count x smoothed-idf vector scaled to unit Euclidean norm.

    A document with no in-vocabulary term maps to the zero vector.
    """
    bow = bow_vector(doc, vocab)
    if not bow.entries:
        return bow
    idf = vocab.idf
    raw = {i: c * idf[i] for i, c in bow.entries.items()}
    norm = math.sqrt(sum(v * v for v in raw.values()))
    return SparseVector({i: v / norm for i, v in raw.items()}, len(vocab))


def docs_to_matrix(docs: Sequence[Sequence[str]], vocab: Vocabulary,
                   scheme: str = "tfidf") -> sparse.csr_matrix:
    """Stack per-document sparse vectors into a CSR matrix.

    Rows are produced by the same per-document functions used for single
    vectors, so batch and single-document paths agree bit for bit.
    """
    if scheme == "tfidf":
        vectorize = tfidf_vector
    elif scheme == "bow":
        vectorize = bow_vector
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    indptr = [0]
    indices: list[int] = []
    values: list[float] = []
    for doc in docs:
        vec = vectorize(doc, vocab)
        indices.extend(vec.entries.keys())
        values.extend(vec.entries.values())
        indptr.append(len(indices))
    return sparse.csr_matrix(
        (np.array(values, dtype=np.float64),
         np.array(indices, dtype=np.int64),
         np.array(indptr, dtype=np.int64)),
        shape=(len(docs), len(vocab)))
