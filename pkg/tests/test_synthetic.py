"""Synthetic benchmark generator sanity checks."""

import numpy as np

from dilifilter.textprep import PrepConfig, preprocess, stopword_set
from dilifilter.porter import stem
from dilifilter.synthetic import synthetic_corpus
from dilifilter.vectorize import fit_vocabulary


class TestSyntheticCorpus:
    def test_balanced_and_sized(self, small_benchmark):
        labels = [r.label for r in small_benchmark.records]
        assert len(labels) == 400
        assert labels.count(1) == labels.count(0) == 200

    def test_deterministic(self):
        a = synthetic_corpus(n_docs=50, seed=3)
        b = synthetic_corpus(n_docs=50, seed=3)
        assert a.records == b.records

    def test_seed_changes_text(self):
        a = synthetic_corpus(n_docs=50, seed=3)
        b = synthetic_corpus(n_docs=50, seed=4)
        assert a.records != b.records

    def test_shared_fraction(self, small_benchmark):
        shared = len(small_benchmark.topic_terms["shared"])
        pos = len(small_benchmark.topic_terms["pos"])
        assert shared / (shared + pos) == 0.3

    def test_terms_are_stem_stable_non_stopwords(self, small_benchmark):
        stops = stopword_set("english-v1")
        for group in small_benchmark.topic_terms.values():
            for term in group:
                assert stem(term) == term
                assert term not in stops
                assert len(term) >= 4

    def test_preprocess_idempotent_on_benchmark(self, small_benchmark):
        config = PrepConfig(stemming=True)
        for rec in small_benchmark.records[:40]:
            tokens = preprocess(rec.text, config)
            assert preprocess(" ".join(tokens), config) == tokens

    def test_stemming_never_grows_vocabulary(self, small_benchmark):
        texts = [r.text for r in small_benchmark.records[:100]]
        stemmed = [preprocess(t, PrepConfig(stemming=True)) for t in texts]
        plain = [preprocess(t, PrepConfig(stemming=False)) for t in texts]
        assert len(fit_vocabulary(stemmed)) <= len(fit_vocabulary(plain))


class TestBenchmarkResources:
    def test_tables_cover_topic_terms(self, small_benchmark):
        all_terms = {t for group in small_benchmark.topic_terms.values()
                     for t in group}
        for table in small_benchmark.tables.values():
            assert all_terms <= set(table.vectors)

    def test_sidecar_covers_every_record(self, small_benchmark):
        ids = {r.id for r in small_benchmark.records}
        assert set(small_benchmark.document_vectors) == ids
        dims = {v.size for v in small_benchmark.document_vectors.values()}
        assert dims == {32}

    def test_vectors_finite(self, small_benchmark):
        for table in small_benchmark.tables.values():
            sample = list(table.vectors.values())[:50]
            assert np.all(np.isfinite(np.vstack(sample)))
