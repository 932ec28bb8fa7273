"""Classification metrics: confusion counts, threshold metrics, ROC/PR
curves and their areas, and cross-model false-prediction overlap.

AUROC is computed from tie-averaged ranks and therefore equals the
pairwise probability that a positive outscores a negative, ties counted
half. AUPRC uses the step (average-precision) convention, sum of
(recall step) x precision over the descending-score sweep; linear PR
interpolation is deliberately not used. Thresholds sit at distinct score
values only, so tied scores move through the sweep together.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DataError

__all__ = ["ConfusionMatrix", "PointMetrics", "EvalReport", "confusion",
           "point_metrics", "roc_points", "auroc", "pr_points", "auprc",
           "evaluate_scores", "error_overlap", "OverlapReport"]

AUPRC_CONVENTION = "step_average_precision"


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def to_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn}


@dataclass(frozen=True)
class PointMetrics:
    """Threshold metrics; degenerate denominators yield 0 and a flag."""

    accuracy: float
    precision: float
    recall: float
    f1: float
    flags: tuple[str, ...] = ()


def _as_binary(values, name: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1 or arr.size == 0:
        raise DataError(f"{name} must be a non-empty 1-d sequence")
    if not np.isin(arr, (0, 1)).all():
        raise DataError(f"{name} must contain only 0 and 1")
    return arr.astype(np.int64)


def confusion(y_true, y_pred) -> ConfusionMatrix:
    """Standard binary confusion counts."""
    t = _as_binary(y_true, "y_true")
    p = _as_binary(y_pred, "y_pred")
    if t.size != p.size:
        raise DataError(f"length mismatch: {t.size} labels vs {p.size} predictions")
    return ConfusionMatrix(tp=int(((t == 1) & (p == 1)).sum()),
                           fp=int(((t == 0) & (p == 1)).sum()),
                           tn=int(((t == 0) & (p == 0)).sum()),
                           fn=int(((t == 1) & (p == 0)).sum()))


def point_metrics(cm: ConfusionMatrix) -> PointMetrics:
    """Accuracy, precision, recall and F1 from a confusion matrix."""
    if cm.total == 0:
        raise DataError("empty confusion matrix")
    flags = []
    accuracy = (cm.tp + cm.tn) / cm.total
    if cm.tp + cm.fp == 0:
        precision = 0.0
        flags.append("no_positive_predictions")
    else:
        precision = cm.tp / (cm.tp + cm.fp)
    if cm.tp + cm.fn == 0:
        recall = 0.0
        flags.append("no_positive_labels")
    else:
        recall = cm.tp / (cm.tp + cm.fn)
    f1 = 0.0 if precision + recall == 0 else \
        2 * precision * recall / (precision + recall)
    return PointMetrics(accuracy, precision, recall, f1, tuple(flags))


def _scores_and_labels(scores, y_true) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(scores, dtype=np.float64)
    y = _as_binary(y_true, "y_true")
    if s.ndim != 1 or s.size != y.size:
        raise DataError("scores and labels must be 1-d with equal length")
    if not np.all(np.isfinite(s)):
        raise DataError("scores contain non-finite values")
    return s, y


def _sweep_counts(scores: np.ndarray, y: np.ndarray
                  ) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative (tp, fp) after each distinct-score threshold, descending."""
    order = np.argsort(-scores, kind="mergesort")
    s_sorted = scores[order]
    y_sorted = y[order]
    # last position of each tied group
    boundary = np.nonzero(np.diff(s_sorted))[0]
    last = np.r_[boundary, s_sorted.size - 1]
    tp = np.cumsum(y_sorted)[last]
    fp = np.cumsum(1 - y_sorted)[last]
    return tp, fp


def roc_points(scores, y_true) -> np.ndarray:
    """(false positive rate, true positive rate) pairs from the sweep,
    starting at (0, 0) and ending at (1, 1)."""
    s, y = _scores_and_labels(scores, y_true)
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DataError("ROC requires both classes present")
    tp, fp = _sweep_counts(s, y)
    fpr = np.r_[0.0, fp / n_neg]
    tpr = np.r_[0.0, tp / n_pos]
    return np.column_stack([fpr, tpr])


def auroc(scores, y_true) -> float:
    """Rank-based AUROC (Mann-Whitney with tie correction).

    Equals the fraction of positive/negative pairs where the positive
    outscores the negative, ties counted one half; identical to trapezoid
    integration of the tie-grouped ROC curve.
    """
    s, y = _scores_and_labels(scores, y_true)
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DataError("AUROC requires both classes present")
    order = np.argsort(s, kind="mergesort")
    s_sorted = s[order]
    ranks = np.empty(s.size, dtype=np.float64)
    i = 0
    while i < s.size:
        j = i
        while j + 1 < s.size and s_sorted[j + 1] == s_sorted[i]:
            j += 1
        # 1-based midrank for the tied block [i, j]
        ranks[order[i:j + 1]] = (i + j) / 2 + 1
        i = j + 1
    pos_rank_sum = float(ranks[y == 1].sum())
    return (pos_rank_sum - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg)


def pr_points(scores, y_true) -> np.ndarray:
    """(recall, precision) pairs over the descending-score sweep."""
    s, y = _scores_and_labels(scores, y_true)
    n_pos = int(y.sum())
    if n_pos == 0:
        raise DataError("PR curve requires at least one positive")
    tp, fp = _sweep_counts(s, y)
    recall = tp / n_pos
    precision = tp / (tp + fp)
    return np.column_stack([recall, precision])


def auprc(scores, y_true) -> float:
    """Area under the PR curve, step convention: sum of
    (recall_k - recall_{k-1}) * precision_k over the threshold sweep."""
    points = pr_points(scores, y_true)
    recall = points[:, 0]
    precision = points[:, 1]
    steps = np.diff(np.r_[0.0, recall])
    return float(np.sum(steps * precision))


@dataclass(frozen=True)
class EvalReport:
    """Full metric suite for one model on one labelled set."""

    confusion: ConfusionMatrix
    accuracy: float
    precision: float
    recall: float
    f1: float
    auroc: float
    auprc: float
    roc_points: np.ndarray
    pr_points: np.ndarray
    threshold: float | None
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "confusion": self.confusion.to_dict(),
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "auroc": self.auroc,
            "auprc": self.auprc,
            "auprc_convention": AUPRC_CONVENTION,
            "threshold": self.threshold,
            "flags": list(self.flags),
            "n_records": self.confusion.total,
        }


def evaluate_scores(y_true, scores, threshold: float | None = 0.5,
                    y_pred=None) -> EvalReport:
    """Assemble the complete report from scores (and optionally explicit
    predicted labels; otherwise labels come from thresholding)."""
    s, y = _scores_and_labels(scores, y_true)
    if y_pred is None:
        if threshold is None:
            raise DataError("either a threshold or predicted labels required")
        pred = (s >= threshold).astype(np.int64)
    else:
        pred = _as_binary(y_pred, "y_pred")
    cm = confusion(y, pred)
    pm = point_metrics(cm)
    return EvalReport(confusion=cm, accuracy=pm.accuracy,
                      precision=pm.precision, recall=pm.recall, f1=pm.f1,
                      auroc=auroc(s, y), auprc=auprc(s, y),
                      roc_points=roc_points(s, y), pr_points=pr_points(s, y),
                      threshold=threshold, flags=pm.flags)


@dataclass(frozen=True)
class OverlapReport:
    """Exclusive region sizes for every non-empty subset of models,
    keyed by the sorted tuple of model ids, separately for FP and FN."""

    fp_regions: dict[tuple[str, ...], int]
    fn_regions: dict[tuple[str, ...], int]


def _regions(sets: dict[str, set]) -> dict[tuple[str, ...], int]:
    from itertools import combinations

    names = sorted(sets)
    counts = {}
    for size in range(1, len(names) + 1):
        for combo in combinations(names, size):
            counts[combo] = 0
    membership: dict[str, frozenset] = {}
    for name in names:
        for item in sets[name]:
            membership.setdefault(item, frozenset())
            membership[item] = membership[item] | {name}
    for item, owners in membership.items():
        counts[tuple(sorted(owners))] += 1
    return counts


def error_overlap(per_model_errors: Mapping[str, tuple[set, set]]
                  ) -> OverlapReport:
    """Venn-style region counts of false positives and false negatives
    across models; region counts sum to the union size per error type."""
    fp_sets = {name: set(fp) for name, (fp, _) in per_model_errors.items()}
    fn_sets = {name: set(fn) for name, (_, fn) in per_model_errors.items()}
    return OverlapReport(fp_regions=_regions(fp_sets),
                         fn_regions=_regions(fn_sets))
