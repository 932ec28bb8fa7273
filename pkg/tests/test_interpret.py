"""Bootstrap interpretation tests."""

import numpy as np
import pytest

pytestmark = pytest.mark.filterwarnings("ignore::RuntimeWarning")

import dilifilter.interpret as interpret_module
from dilifilter.errors import DataError
from dilifilter.interpret import (CoefficientSummary, bootstrap_coefficients,
                                  coefficient_quantiles, meta_contributions,
                                  top_terms)
from dilifilter.linear import LrConfig, fit_lr

FAST = dict(max_iterations=300, tolerance=1e-7)


def planted_problem(rng, n=60):
    """Feature 0 fires only in positives, feature 1 only in negatives."""
    y = np.array([1, 0] * (n // 2))
    X = rng.normal(0, 0.3, size=(n, 5))
    X[:, 0] += (y == 1) * 1.5
    X[:, 1] += (y == 0) * 1.5
    return X, y


class TestBootstrapCoefficients:
    def test_identity_resample_equals_direct_fit(self, monkeypatch):
        rng = np.random.default_rng(3)
        X, y = planted_problem(rng)
        config = LrConfig(**FAST)
        monkeypatch.setattr(interpret_module, "_resample_indices",
                            lambda rng, n: np.arange(n))
        summaries = bootstrap_coefficients(X, y, config, B=1, seed=0)
        direct = fit_lr(X, y, config, seed=0)
        for j, summary in enumerate(summaries):
            assert summary.coef_samples[0] == direct.weights[j]
            assert summary.mean_coef == direct.weights[j]

    def test_identical_resamples_zero_variance(self, monkeypatch):
        rng = np.random.default_rng(5)
        X, y = planted_problem(rng)
        monkeypatch.setattr(interpret_module, "_resample_indices",
                            lambda rng, n: np.arange(n))
        summaries = bootstrap_coefficients(X, y, LrConfig(**FAST), B=2, seed=0)
        for summary in summaries:
            assert summary.coef_samples[0] == summary.coef_samples[1]

    def test_planted_term_ranks_top_positive(self):
        rng = np.random.default_rng(7)
        X, y = planted_problem(rng)
        names = ["hepatotox", "unrelated", "f2", "f3", "f4"]
        summaries = bootstrap_coefficients(X, y, LrConfig(**FAST), B=8,
                                           seed=1, feature_names=names)
        ranked = top_terms(summaries, k=2, direction="positive")
        assert ranked[0][0] == "hepatotox"
        assert ranked[0][1] > 0
        negative = top_terms(summaries, k=1, direction="negative")
        assert negative[0][0] == "unrelated"

    def test_mean_matches_samples(self):
        rng = np.random.default_rng(9)
        X, y = planted_problem(rng)
        summaries = bootstrap_coefficients(X, y, LrConfig(**FAST), B=6, seed=2)
        for summary in summaries:
            assert summary.mean_coef == pytest.approx(
                float(summary.coef_samples.mean()), abs=1e-12)
            assert summary.coef_samples.size == 6

    def test_deterministic(self):
        rng = np.random.default_rng(11)
        X, y = planted_problem(rng)
        a = bootstrap_coefficients(X, y, LrConfig(**FAST), B=4, seed=5)
        b = bootstrap_coefficients(X, y, LrConfig(**FAST), B=4, seed=5)
        for sa, sb in zip(a, b):
            assert np.array_equal(sa.coef_samples, sb.coef_samples)

    def test_single_class_resamples_redrawn(self):
        # tiny, near-degenerate data still succeeds via redraws
        X = np.array([[1.0], [0.9], [-1.0], [-0.9]])
        y = np.array([1, 1, 0, 0])
        summaries = bootstrap_coefficients(X, y, LrConfig(**FAST), B=20,
                                           seed=3)
        assert summaries[0].coef_samples.size == 20

    def test_b_zero_rejected(self):
        with pytest.raises(DataError):
            bootstrap_coefficients(np.ones((4, 1)), np.array([1, 0, 1, 0]),
                                   LrConfig(**FAST), B=0)


class TestTopTerms:
    def summaries(self, values):
        return [CoefficientSummary(term=t, mean_coef=v,
                                   coef_samples=np.array([v]))
                for t, v in values]

    def test_k_zero_empty(self):
        assert top_terms(self.summaries([("a", 1.0)]), k=0) == []

    def test_tie_breaks_lexicographic(self):
        ranked = top_terms(self.summaries([("zeta", 1.0), ("alpha", 1.0)]),
                           k=2, direction="positive")
        assert [t for t, _ in ranked] == ["alpha", "zeta"]

    def test_k_too_large_rejected(self):
        with pytest.raises(DataError):
            top_terms(self.summaries([("a", 1.0)]), k=2)

    def test_positive_scaling_preserves_order(self):
        base = [("a", 0.5), ("b", 2.0), ("c", -1.0), ("d", 0.1)]
        ranked = top_terms(self.summaries(base), k=4)
        scaled = top_terms(self.summaries([(t, 7.5 * v) for t, v in base]),
                           k=4)
        assert [t for t, _ in ranked] == [t for t, _ in scaled]


class TestMetaContributions:
    def make_ensemble(self, meta_X, y, n_learners):
        # minimal stand-in: only .specs names and .meta.config are used
        from dilifilter.ensemble import BaseLearnerSpec, EnsembleModel
        specs = [BaseLearnerSpec(vectorizer="tfidf", class_weight=(1.0, 1.0),
                                 lr_config=LrConfig(class_weight=(1.0, 1.0),
                                                    **FAST))
                 for _ in range(n_learners)]
        meta = fit_lr(meta_X, y, LrConfig(**FAST), seed=0)
        base = [fit_lr(meta_X[:, [j]], y, specs[j].lr_config, seed=0)
                for j in range(n_learners)]
        return EnsembleModel(base=base, meta=meta, specs=specs)

    def probs(self, rng, y, informative=True):
        n = y.size
        p = np.clip(0.5 + (y - 0.5) * 0.6 + rng.normal(0, 0.1, n), 0.02, 0.98)
        return p if informative else np.full(n, 0.5)

    def test_duplicated_features_share_contribution(self):
        rng = np.random.default_rng(13)
        y = np.array([1, 0] * 30)
        p = self.probs(rng, y)
        meta_X = np.column_stack([p, p])
        model = self.make_ensemble(meta_X, y, 2)
        result = meta_contributions(model, meta_X, y, B=10, seed=0)
        assert result.contributions[0] == pytest.approx(
            result.contributions[1], abs=0.05)
        assert result.contributions.sum() == pytest.approx(1.0, abs=1e-12)

    def test_single_learner_contribution_is_one(self):
        rng = np.random.default_rng(17)
        y = np.array([1, 0] * 30)
        meta_X = self.probs(rng, y).reshape(-1, 1)
        model = self.make_ensemble(meta_X, y, 1)
        result = meta_contributions(model, meta_X, y, B=5, seed=0)
        assert result.contributions.tolist() == [1.0]
        assert not result.sign_flagged

    def test_all_nonnegative_sums_to_one(self):
        rng = np.random.default_rng(19)
        y = np.array([1, 0] * 40)
        meta_X = np.column_stack([self.probs(rng, y) for _ in range(3)])
        model = self.make_ensemble(meta_X, y, 3)
        result = meta_contributions(model, meta_X, y, B=15, seed=1)
        assert not result.sign_flagged
        assert (result.contributions >= 0).all()
        assert result.contributions.sum() == pytest.approx(1.0, abs=1e-12)


class TestCoefficientQuantiles:
    def test_rows_and_order(self):
        s = CoefficientSummary(term="t", mean_coef=2.0,
                               coef_samples=np.arange(101, dtype=float))
        row = coefficient_quantiles([s])[0]
        assert row["term"] == "t"
        assert row["q2.5"] == pytest.approx(2.5)
        assert row["q50"] == pytest.approx(50.0)
        assert row["q97.5"] == pytest.approx(97.5)
