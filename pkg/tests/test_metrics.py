"""Metric tests against brute-force oracles.

auroc is checked exactly against O(n^2) pair counting (ties half), and
auprc against a threshold-enumeration oracle; both oracles live here and
share no code with the implementation.
"""

import numpy as np
import pytest

from dilifilter.errors import DataError
from dilifilter.metrics import (ConfusionMatrix, auprc, auroc, confusion,
                                error_overlap, evaluate_scores,
                                point_metrics, pr_points, roc_points)


def pair_count_auroc(scores, y):
    """O(n^2) oracle: fraction of (pos, neg) pairs ranked correctly."""
    scores = list(map(float, scores))
    pos = [s for s, t in zip(scores, y) if t == 1]
    neg = [s for s, t in zip(scores, y) if t == 0]
    total = 0.0
    for p in pos:
        for q in neg:
            if p > q:
                total += 1.0
            elif p == q:
                total += 0.5
    return total / (len(pos) * len(neg))


def threshold_sweep_auprc(scores, y):
    """Oracle: enumerate distinct thresholds descending, accumulate
    precision times recall increments."""
    scores = np.asarray(scores, dtype=float)
    y = np.asarray(y)
    n_pos = int(y.sum())
    area = 0.0
    prev_recall = 0.0
    for thr in sorted(set(scores.tolist()), reverse=True):
        pred = scores >= thr
        tp = int((pred & (y == 1)).sum())
        fp = int((pred & (y == 0)).sum())
        precision = tp / (tp + fp)
        recall = tp / n_pos
        area += (recall - prev_recall) * precision
        prev_recall = recall
    return area


def random_instances(n_instances=200, max_size=60, seed=20240):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n_instances):
        n = int(rng.integers(2, max_size + 1))
        n_pos = int(rng.integers(1, n))
        y = np.zeros(n, dtype=int)
        y[rng.choice(n, size=n_pos, replace=False)] = 1
        kind = i % 4
        if kind == 0:
            scores = rng.normal(size=n)
        elif kind == 1:
            # heavy ties from a tiny score alphabet
            scores = rng.choice([0.1, 0.5, 0.9], size=n)
        elif kind == 2:
            scores = np.full(n, 0.5)
        else:
            scores = rng.integers(0, 4, size=n).astype(float)
        out.append((scores, y))
    return out


class TestConfusion:
    def test_hand_count(self):
        cm = confusion([1, 1, 0, 0], [1, 0, 0, 1])
        assert (cm.tp, cm.fn, cm.tn, cm.fp) == (1, 1, 1, 1)

    def test_identical_vectors(self):
        cm = confusion([1, 0, 1], [1, 0, 1])
        assert cm.fp == 0 and cm.fn == 0

    def test_all_positive_predictions_on_negative_truth(self):
        cm = confusion([0, 0, 0], [1, 1, 1])
        assert cm.tn == 0 and cm.tp == 0 and cm.fp == 3

    def test_length_mismatch(self):
        with pytest.raises(DataError):
            confusion([1, 0], [1])

    def test_non_binary(self):
        with pytest.raises(DataError):
            confusion([1, 2], [1, 0])


class TestPointMetrics:
    def test_perfect(self):
        pm = point_metrics(ConfusionMatrix(tp=50, fp=0, tn=50, fn=0))
        assert pm.accuracy == pm.precision == pm.recall == pm.f1 == 1.0

    def test_degenerate_no_positive_predictions(self):
        pm = point_metrics(ConfusionMatrix(tp=0, fp=0, tn=5, fn=5))
        assert pm.precision == 0.0 and pm.recall == 0.0 and pm.f1 == 0.0
        assert "no_positive_predictions" in pm.flags

    def test_empty_matrix(self):
        with pytest.raises(DataError):
            point_metrics(ConfusionMatrix(0, 0, 0, 0))

    def test_degenerate_no_positive_labels(self):
        pm = point_metrics(ConfusionMatrix(tp=0, fp=2, tn=3, fn=0))
        assert pm.recall == 0.0
        assert "no_positive_labels" in pm.flags

    def test_accuracy_equals_direct_mean(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            n = int(rng.integers(1, 40))
            t = rng.integers(0, 2, size=n)
            p = rng.integers(0, 2, size=n)
            pm = point_metrics(confusion(t, p))
            assert pm.accuracy == pytest.approx(float((t == p).mean()), abs=0)


class TestAuroc:
    def test_perfect_separation(self):
        assert auroc([0.9, 0.8, 0.3, 0.2], [1, 1, 0, 0]) == 1.0

    def test_single_tied_pair(self):
        assert auroc([0.5, 0.5], [1, 0]) == 0.5

    def test_matches_pair_counting_oracle(self):
        for scores, y in random_instances():
            fast = auroc(scores, y)
            slow = pair_count_auroc(scores, y)
            assert abs(fast - slow) <= 1e-12

    def test_complement_identity(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            n = int(rng.integers(2, 40))
            y = rng.integers(0, 2, size=n)
            if y.min() == y.max():
                continue
            s = rng.normal(size=n)
            assert auroc(s, y) + auroc(s, 1 - y) == pytest.approx(1.0, abs=1e-12)

    def test_trapezoid_of_roc_points_equals_rank_value(self):
        for scores, y in random_instances(80):
            pts = roc_points(scores, y)
            trapezoid = float(np.trapezoid(pts[:, 1], pts[:, 0]))
            assert abs(trapezoid - auroc(scores, y)) <= 1e-12

    def test_invariant_under_monotone_transform(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            n = int(rng.integers(2, 50))
            y = rng.integers(0, 2, size=n)
            if y.min() == y.max():
                continue
            s = rng.normal(size=n)
            assert auroc(np.exp(s), y) == pytest.approx(auroc(s, y), abs=1e-12)

    def test_single_class_rejected(self):
        with pytest.raises(DataError):
            auroc([0.1, 0.2], [1, 1])


class TestAuprc:
    def test_perfect_ranking(self):
        assert auprc([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0]) == 1.0

    def test_constant_scores_give_prevalence(self):
        assert auprc([0.3, 0.3, 0.3, 0.3], [1, 0, 0, 0]) == 0.25
        assert auprc([0.9] * 10, [1] * 3 + [0] * 7) == pytest.approx(0.3, abs=0)

    def test_worst_ranking_one_pos_three_neg(self):
        assert auprc([0.1, 0.9, 0.8, 0.7], [1, 0, 0, 0]) == 0.25

    def test_matches_threshold_enumeration_oracle(self):
        for scores, y in random_instances():
            fast = auprc(scores, y)
            slow = threshold_sweep_auprc(scores, y)
            assert abs(fast - slow) <= 1e-12

    def test_invariant_under_monotone_transform(self):
        rng = np.random.default_rng(13)
        for _ in range(30):
            n = int(rng.integers(2, 50))
            y = rng.integers(0, 2, size=n)
            if y.sum() == 0:
                continue
            s = rng.normal(size=n)
            assert auprc(2 * s + 3, y) == pytest.approx(auprc(s, y), abs=1e-12)

    def test_no_positives_rejected(self):
        with pytest.raises(DataError):
            auprc([0.1, 0.2], [0, 0])


class TestCurves:
    def test_roc_points_monotone(self):
        for scores, y in random_instances(60):
            pts = roc_points(scores, y)
            assert np.all(np.diff(pts[:, 0]) >= 0)
            assert np.all(np.diff(pts[:, 1]) >= 0)
            assert tuple(pts[0]) == (0.0, 0.0)
            assert tuple(pts[-1]) == (1.0, 1.0)

    def test_pr_recall_monotone(self):
        for scores, y in random_instances(60):
            pts = pr_points(scores, y)
            assert np.all(np.diff(pts[:, 0]) >= 0)
            assert pts[-1, 0] == 1.0


class TestEvaluateScores:
    def test_explicit_predictions_respected(self):
        y = [1, 0, 1, 0]
        s = [0.9, 0.8, 0.2, 0.1]
        report = evaluate_scores(y, s, threshold=None, y_pred=[1, 1, 1, 1])
        assert report.confusion.fp == 2
        assert report.threshold is None

    def test_threshold_or_predictions_required(self):
        with pytest.raises(DataError):
            evaluate_scores([1, 0], [0.6, 0.4], threshold=None)

    def test_report_fields_consistent(self):
        y = [1, 1, 1, 0, 0, 0]
        s = [0.9, 0.7, 0.4, 0.6, 0.2, 0.1]
        report = evaluate_scores(y, s, threshold=0.5)
        pm = point_metrics(report.confusion)
        assert report.accuracy == pm.accuracy
        assert report.f1 == pm.f1
        assert report.auroc == auroc(s, y)
        d = report.to_dict()
        assert d["auprc_convention"] == "step_average_precision"
        assert d["n_records"] == 6


class TestErrorOverlap:
    def test_identical_error_sets(self):
        report = error_overlap({"a": ({1, 2}, {3}), "b": ({1, 2}, {3})})
        assert report.fp_regions[("a", "b")] == 2
        assert report.fp_regions[("a",)] == 0
        assert report.fn_regions[("a", "b")] == 1

    def test_disjoint_error_sets(self):
        report = error_overlap({"a": ({1}, set()), "b": ({2}, set())})
        assert report.fp_regions[("a", "b")] == 0
        assert report.fp_regions[("a",)] == 1
        assert report.fp_regions[("b",)] == 1

    def test_four_models_regions_sum_to_union(self):
        rng = np.random.default_rng(3)
        models = {}
        for name in "abcd":
            fp = set(rng.choice(30, size=10, replace=False).tolist())
            fn = set(rng.choice(30, size=8, replace=False).tolist())
            models[name] = (fp, fn)
        report = error_overlap(models)
        assert len(report.fp_regions) == 15
        fp_union = set().union(*(fp for fp, _ in models.values()))
        fn_union = set().union(*(fn for _, fn in models.values()))
        assert sum(report.fp_regions.values()) == len(fp_union)
        assert sum(report.fn_regions.values()) == len(fn_union)

    def test_brute_force_region_check(self):
        models = {"m1": ({1, 2, 3}, set()), "m2": ({2, 3, 4}, set()),
                  "m3": ({3, 4, 5}, set())}
        report = error_overlap(models)
        # region (m1, m2) holds ids in m1 and m2 but not m3: {2}
        assert report.fp_regions[("m1", "m2")] == 1
        assert report.fp_regions[("m1", "m2", "m3")] == 1  # {3}
        assert report.fp_regions[("m2", "m3")] == 1  # {4}
        assert report.fp_regions[("m1",)] == 1  # {1}
