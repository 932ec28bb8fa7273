"""Feature-space context: one object holding the preprocessing config and
every fitted vectorizer resource, able to turn document records into
feature matrices for any family.

Families:
  bow, tfidf      sparse vectors over the vocabulary fitted on training
                  tokens (bow is available stand-alone but excluded from
                  the ensemble bank)
  w2v_table_1/2   mean of pre-trained token embeddings
  sent_vectors    precomputed per-document vectors from a TSV sidecar;
                  without a sidecar the family degrades to averaging over
                  a configured fallback embedding table, and the
                  substitution is recorded
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .corpus import DocumentRecord
from .embeddings import EmbeddingTable, embed_documents
from .errors import ConfigError, DataError
from .textprep import PrepConfig, preprocess
from .vectorize import Vocabulary, docs_to_matrix, fit_vocabulary

__all__ = ["FeatureSpace", "FAMILIES", "BANK_FAMILIES"]

FAMILIES = ("bow", "tfidf", "w2v_table_1", "w2v_table_2", "sent_vectors")
# the ensemble bank excludes bow
BANK_FAMILIES = ("tfidf", "w2v_table_1", "w2v_table_2", "sent_vectors")


class FeatureSpace:
    """Preprocessing plus fitted vectorizer resources for all families."""

    def __init__(self, prep: PrepConfig,
                 embedding_tables: dict[str, EmbeddingTable] | None = None,
                 document_vectors: dict[str, np.ndarray] | None = None,
                 sent_fallback: str | None = None,
                 min_df: int = 1, max_df: float = 1.0):
        self.prep = prep
        self.embedding_tables = embedding_tables or {}
        self.document_vectors = document_vectors
        self.sent_fallback = sent_fallback
        self.min_df = min_df
        self.max_df = max_df
        self.vocabulary: Vocabulary | None = None
        self._token_cache: dict[str, list[str]] = {}

    # -- preprocessing ---------------------------------------------------

    def tokens(self, records: Sequence[DocumentRecord]) -> list[list[str]]:
        out = []
        for rec in records:
            cached = self._token_cache.get(rec.id)
            if cached is None:
                cached = preprocess(rec.text, self.prep)
                self._token_cache[rec.id] = cached
            out.append(cached)
        return out

    # -- fitting ---------------------------------------------------------

    def fit(self, records: Sequence[DocumentRecord]) -> "FeatureSpace":
        """Fit the vocabulary on these records' tokens (training slice
        only; never call with validation or meta data)."""
        self.vocabulary = fit_vocabulary(self.tokens(records),
                                         min_df=self.min_df,
                                         max_df=self.max_df)
        return self

    @property
    def uses_sent_fallback(self) -> bool:
        return self.document_vectors is None and self.sent_fallback is not None

    # -- matrices --------------------------------------------------------

    def matrix(self, family: str, records: Sequence[DocumentRecord]):
        """Feature matrix for one family, rows aligned with records."""
        if family in ("bow", "tfidf"):
            if self.vocabulary is None:
                raise ConfigError("vocabulary not fitted; call fit() first")
            return docs_to_matrix(self.tokens(records), self.vocabulary,
                                  scheme=family)
        if family in ("w2v_table_1", "w2v_table_2"):
            table = self.embedding_tables.get(family)
            if table is None:
                raise ConfigError(f"no embedding table configured for {family}")
            matrix, _ = embed_documents(self.tokens(records), table)
            return matrix
        if family == "sent_vectors":
            if self.document_vectors is not None:
                return self._sidecar_matrix(records)
            if self.sent_fallback is not None:
                table = self.embedding_tables.get(self.sent_fallback)
                if table is None:
                    raise ConfigError(f"sent_vectors fallback table "
                                      f"{self.sent_fallback!r} not loaded")
                matrix, _ = embed_documents(self.tokens(records), table)
                return matrix
            raise ConfigError("sent_vectors requires a document-vector "
                              "sidecar or a configured fallback table")
        raise ConfigError(f"unknown vectorizer family {family!r}")

    def _sidecar_matrix(self, records: Sequence[DocumentRecord]) -> np.ndarray:
        missing = [r.id for r in records if r.id not in self.document_vectors]
        if missing:
            raise DataError(f"no sentence vector for record(s) "
                            f"{missing[:10]}{'...' if len(missing) > 10 else ''}")
        return np.vstack([self.document_vectors[r.id] for r in records])

    def dimension(self, family: str) -> int:
        if family in ("bow", "tfidf"):
            if self.vocabulary is None:
                raise ConfigError("vocabulary not fitted")
            return len(self.vocabulary)
        if family in ("w2v_table_1", "w2v_table_2"):
            return self.embedding_tables[family].dimension
        if family == "sent_vectors":
            if self.document_vectors is not None:
                return next(iter(self.document_vectors.values())).size
            return self.embedding_tables[self.sent_fallback].dimension
        raise ConfigError(f"unknown vectorizer family {family!r}")

    def family_id(self, family: str) -> str:
        """Stable identifier binding a model to its feature space."""
        if family in ("bow", "tfidf"):
            if self.vocabulary is None:
                raise ConfigError("vocabulary not fitted")
            return f"{family}:{self.vocabulary.fingerprint}"
        if family in ("w2v_table_1", "w2v_table_2"):
            return f"{family}:{self.embedding_tables[family].fingerprint}"
        if family == "sent_vectors":
            if self.document_vectors is not None:
                dim = next(iter(self.document_vectors.values())).size
                return f"sent_vectors:sidecar:{len(self.document_vectors)}x{dim}"
            table = self.embedding_tables[self.sent_fallback]
            return f"sent_vectors:fallback:{self.sent_fallback}:{table.fingerprint}"
        raise ConfigError(f"unknown vectorizer family {family!r}")
