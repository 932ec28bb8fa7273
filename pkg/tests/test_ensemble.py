"""Stacked-ensemble tests on the synthetic benchmark."""

import numpy as np
import pytest

from dilifilter.corpus import CorpusSplit, split_corpus
from dilifilter.ensemble import (DEFAULT_META_CONFIG, BaseLearnerSpec,
                                 EnsembleModel, base_probabilities,
                                 default_specs, enumerate_specs,
                                 fit_ensemble, predict_proba_ensemble)
from dilifilter.errors import ConfigError, DataError
from dilifilter.features import FeatureSpace
from dilifilter.linear import LrConfig, fit_lr, predict_proba
from dilifilter.textprep import PrepConfig


def make_features(bench, **kwargs):
    return FeatureSpace(prep=PrepConfig(), embedding_tables=bench.tables,
                        document_vectors=bench.document_vectors, **kwargs)


@pytest.fixture(scope="module")
def fitted(small_benchmark):
    split = split_corpus(small_benchmark.records, (0.6, 0.2, 0.2),
                         stratified=True, seed=7)
    features = make_features(small_benchmark)
    model = fit_ensemble(split, default_specs(), features=features, seed=7)
    return split, features, model


class TestEnumerateSpecs:
    def test_full_bank_is_twelve(self):
        specs = default_specs()
        assert len(specs) == 12
        families = [s.vectorizer for s in specs]
        # vectorizer-major order
        assert families == (["tfidf"] * 3 + ["w2v_table_1"] * 3
                            + ["w2v_table_2"] * 3 + ["sent_vectors"] * 3)
        weights = [s.class_weight for s in specs[:3]]
        assert weights == [(1.0, 1.0), (2.0, 1.0), (4.0, 1.0)]

    def test_default_penalties(self):
        specs = default_specs()
        by_family = {s.vectorizer: s.lr_config.penalty_strength
                     for s in specs}
        assert by_family == {"tfidf": 0.1, "w2v_table_1": 0.1,
                             "w2v_table_2": 0.1, "sent_vectors": 1.0}
        assert DEFAULT_META_CONFIG.penalty_strength == 10.0
        assert DEFAULT_META_CONFIG.class_weight == (1.0, 1.0)

    def test_single_spec(self):
        specs = enumerate_specs(("tfidf",), ((1.0, 1.0),))
        assert len(specs) == 1

    def test_order_stable(self):
        a = enumerate_specs(("w2v_table_1", "tfidf"), ((2.0, 1.0), (1.0, 1.0)))
        b = enumerate_specs(("w2v_table_1", "tfidf"), ((2.0, 1.0), (1.0, 1.0)))
        assert a == b
        assert a[0].vectorizer == "w2v_table_1"
        assert a[0].class_weight == (2.0, 1.0)

    def test_empty_rejected(self):
        with pytest.raises(DataError):
            enumerate_specs((), ((1.0, 1.0),))

    def test_spec_weight_consistency_enforced(self):
        with pytest.raises(DataError):
            BaseLearnerSpec(vectorizer="tfidf", class_weight=(2.0, 1.0),
                            lr_config=LrConfig(class_weight=(1.0, 1.0)))

    def test_unknown_family_rejected(self):
        with pytest.raises(DataError):
            BaseLearnerSpec(vectorizer="bow", class_weight=(1.0, 1.0),
                            lr_config=LrConfig())


class TestFitEnsemble:
    def test_fit_produces_twelve_base_models(self, fitted):
        _, _, model = fitted
        assert len(model.base) == 12
        assert model.meta.weights.size == 12
        assert model.metadata["sent_substitution"] is False

    def test_leakage_guard(self, small_benchmark):
        records = small_benchmark.records[:40]
        split = CorpusSplit(train=tuple(records[:20]),
                            meta_train=tuple(records[20:30]),
                            validation=tuple(records[30:]), seed=0)
        bad = CorpusSplit.__new__(CorpusSplit)
        object.__setattr__(bad, "train", tuple(records[:20]))
        object.__setattr__(bad, "meta_train", tuple(records[15:25]))
        object.__setattr__(bad, "validation", tuple(records[30:]))
        object.__setattr__(bad, "seed", 0)
        with pytest.raises(DataError, match="share record ids"):
            fit_ensemble(bad, default_specs(),
                         features=make_features(small_benchmark), seed=0)
        fit_ensemble(split, default_specs()[:1],
                     features=make_features(small_benchmark), seed=0)

    def test_empty_meta_rejected(self, small_benchmark):
        split = split_corpus(small_benchmark.records, (0.8, 0.0, 0.2), seed=1)
        with pytest.raises(DataError, match="meta"):
            fit_ensemble(split, default_specs(),
                         features=make_features(small_benchmark), seed=1)

    def test_meta_features_inside_unit_interval(self, fitted):
        split, features, model = fitted
        probs = base_probabilities(model, split.meta_train, features)
        assert probs.shape == (len(split.meta_train), 12)
        assert np.all((probs > 0) & (probs < 1))

    def test_base_learner_failure_names_spec(self, small_benchmark):
        split = split_corpus(small_benchmark.records, (0.6, 0.2, 0.2), seed=2)
        specs = [BaseLearnerSpec(
            vectorizer="w2v_table_1", class_weight=(1.0, 1.0),
            lr_config=LrConfig(class_weight=(1.0, 1.0)))]
        features = make_features(small_benchmark)
        features.embedding_tables = {}  # resource missing -> fit must fail
        with pytest.raises(ConfigError, match="w2v_table_1"):
            fit_ensemble(split, specs, features=features, seed=2)


class TestPredictEnsemble:
    def test_monotone_in_single_learner(self, small_benchmark):
        split = split_corpus(small_benchmark.records, (0.6, 0.2, 0.2), seed=3)
        features = make_features(small_benchmark)
        specs = enumerate_specs(("tfidf",), ((1.0, 1.0),))
        model = fit_ensemble(split, specs, features=features, seed=3)
        assert model.meta.weights[0] > 0     # separable fixture
        base = base_probabilities(model, split.validation, features)[:, 0]
        combined = predict_proba_ensemble(model, split.validation, features)
        # a positive-weight monotone map preserves the document ranking
        assert np.array_equal(np.argsort(base, kind="stable"),
                              np.argsort(combined, kind="stable"))

    def test_identical_base_probabilities_match_single_feature_fit(self):
        rng = np.random.default_rng(23)
        y = np.array([1, 0] * 40)
        p = np.clip(0.5 + (y - 0.5) * 0.5 + rng.normal(0, 0.15, 80),
                    0.02, 0.98)
        duplicated = np.column_stack([p, p, p])
        meta_config = LrConfig(max_iterations=800)
        multi = fit_lr(duplicated, y, meta_config, seed=0)
        single = fit_lr(p.reshape(-1, 1), y, meta_config, seed=0)
        pred_multi = predict_proba(multi, duplicated) >= 0.5
        pred_single = predict_proba(single, p.reshape(-1, 1)) >= 0.5
        assert np.array_equal(pred_multi, pred_single)

    def test_single_record_returns_float(self, fitted):
        split, features, model = fitted
        proba = predict_proba_ensemble(model, split.validation[0], features)
        assert isinstance(proba, float)
        assert 0 < proba < 1

    def test_missing_sidecar_vector_fails(self, fitted, small_benchmark):
        split, _, model = fitted
        partial = dict(small_benchmark.document_vectors)
        partial.pop(split.validation[0].id)
        features = make_features(small_benchmark)
        features.fit(split.train)
        features.document_vectors = partial
        with pytest.raises(DataError, match="no sentence vector"):
            predict_proba_ensemble(model, split.validation, features)

    def test_fallback_substitution_recorded(self, small_benchmark):
        split = split_corpus(small_benchmark.records, (0.6, 0.2, 0.2), seed=4)
        features = FeatureSpace(prep=PrepConfig(),
                                embedding_tables=small_benchmark.tables,
                                document_vectors=None,
                                sent_fallback="w2v_table_2")
        model = fit_ensemble(split, default_specs(), features=features,
                             seed=4)
        assert model.metadata["sent_substitution"] is True

    def test_no_sidecar_no_fallback_rejected(self, small_benchmark):
        split = split_corpus(small_benchmark.records, (0.6, 0.2, 0.2), seed=5)
        features = FeatureSpace(prep=PrepConfig(),
                                embedding_tables=small_benchmark.tables)
        with pytest.raises(ConfigError, match="sent_vectors"):
            fit_ensemble(split, default_specs(), features=features, seed=5)

    def test_serialization_round_trip(self, fitted):
        split, features, model = fitted
        clone = EnsembleModel.from_dict(model.to_dict())
        original = predict_proba_ensemble(model, split.validation, features)
        restored = predict_proba_ensemble(clone, split.validation, features)
        assert np.array_equal(original, restored)
        assert [s.name for s in clone.specs] == [s.name for s in model.specs]

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_meta_contributions_nonnegative_on_benchmark(self, fitted):
        # statistical expectation at this fixed seed, not a universal law:
        # every base learner contributes with a non-negative bootstrap-mean
        # coefficient on the separable benchmark
        from dilifilter.interpret import meta_contributions

        split, features, model = fitted
        meta_X = base_probabilities(model, split.meta_train, features)
        y_meta = np.array([r.label for r in split.meta_train])
        result = meta_contributions(model, meta_X, y_meta, B=30, seed=7)
        assert not result.sign_flagged
        assert (result.mean_coefficients >= 0).all()
        assert result.contributions.sum() == pytest.approx(1.0, abs=1e-12)
