"""Bootstrap model interpretation.

Refits logistic regression on resamples of the training data, aggregates
per-term coefficients, ranks the strongest terms per class, and computes
normalized meta-learner coefficients (the contribution of each base
learner). Child seeds are derived up front so execution order can never
change results; resamples that miss a class are redrawn a bounded number
of times.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ensemble import EnsembleModel
from .errors import DataError, NumericError
from .linear import LrConfig, fit_lr

__all__ = ["CoefficientSummary", "MetaContributions", "bootstrap_coefficients",
           "top_terms", "meta_contributions", "coefficient_quantiles"]

_MAX_REDRAWS = 100


@dataclass(frozen=True)
class CoefficientSummary:
    """All bootstrap coefficient samples for one feature."""

    term: str
    mean_coef: float
    coef_samples: np.ndarray


def _resample_indices(rng: np.random.Generator, n: int) -> np.ndarray:
    # separate function so tests can force the identity resample
    return rng.integers(0, n, size=n)


def bootstrap_coefficients(X, y, config: LrConfig, B: int = 1000,
                           seed: int = 0,
                           feature_names: Sequence[str] | None = None
                           ) -> list[CoefficientSummary]:
    """B resamples with replacement, one fit each; coefficients per feature.

    Deterministic given (X, y, config, B, seed). A resample containing a
    single class is redrawn; after 100 failures the call errors out.
    """
    if B < 1:
        raise DataError("B must be >= 1")
    y = np.asarray(y, dtype=np.int64)
    n, dim = X.shape
    if feature_names is None:
        feature_names = [f"dim_{i}" for i in range(dim)]
    if len(feature_names) != dim:
        raise DataError(f"{len(feature_names)} names for {dim} features")

    samples = np.empty((B, dim))
    for b, seq in enumerate(np.random.SeedSequence(seed).spawn(B)):
        rng = np.random.default_rng(seq)
        for attempt in range(_MAX_REDRAWS + 1):
            idx = _resample_indices(rng, n)
            if y[idx].min() != y[idx].max():
                break
        else:
            raise NumericError(f"resample {b} missed a class "
                               f"{_MAX_REDRAWS} times; data too imbalanced")
        model = fit_lr(X[idx], y[idx], config, seed=b)
        samples[b] = model.weights
    return [CoefficientSummary(term=name,
                               mean_coef=float(samples[:, j].mean()),
                               coef_samples=samples[:, j].copy())
            for j, name in enumerate(feature_names)]


def top_terms(summaries: Sequence[CoefficientSummary], k: int,
              direction: str = "positive") -> list[tuple[str, float]]:
    """k strongest terms by mean coefficient; ties break lexicographically."""
    if k > len(summaries):
        raise DataError(f"k={k} exceeds {len(summaries)} terms")
    if direction == "positive":
        ranked = sorted(summaries, key=lambda s: (-s.mean_coef, s.term))
    elif direction == "negative":
        ranked = sorted(summaries, key=lambda s: (s.mean_coef, s.term))
    else:
        raise DataError(f"direction must be positive or negative, "
                        f"got {direction!r}")
    return [(s.term, s.mean_coef) for s in ranked[:k]]


@dataclass(frozen=True)
class MetaContributions:
    """Normalized mean meta-learner coefficient per base learner."""

    learners: tuple[str, ...]
    contributions: np.ndarray
    mean_coefficients: np.ndarray
    summaries: tuple[CoefficientSummary, ...]
    # set when a negative mean forced normalization by absolute values
    sign_flagged: bool = False


def meta_contributions(ensemble: EnsembleModel, meta_X, meta_y,
                       B: int = 1000, seed: int = 0) -> MetaContributions:
    """Bootstrap-refit the meta-learner and normalize its mean coefficients.

    When all means are non-negative they are scaled to sum to one;
    otherwise scaling uses the sum of absolute values and the result is
    flagged.
    """
    names = [spec.name for spec in ensemble.specs]
    summaries = bootstrap_coefficients(meta_X, meta_y, ensemble.meta.config,
                                       B=B, seed=seed, feature_names=names)
    means = np.array([s.mean_coef for s in summaries])
    flagged = bool((means < 0).any())
    scale = np.abs(means).sum()
    if scale == 0:
        raise NumericError("all meta coefficients are zero; cannot normalize")
    return MetaContributions(learners=tuple(names),
                             contributions=means / scale,
                             mean_coefficients=means,
                             summaries=tuple(summaries),
                             sign_flagged=flagged)


def coefficient_quantiles(summaries: Sequence[CoefficientSummary],
                          probs: Sequence[float] = (2.5, 50.0, 97.5)
                          ) -> list[dict]:
    """Rows of term, mean, and sample quantiles for box-plot style export."""
    rows = []
    for s in summaries:
        q = np.percentile(s.coef_samples, probs)
        row = {"term": s.term, "mean_coef": s.mean_coef}
        for p, value in zip(probs, q):
            row[f"q{p:g}"] = float(value)
        rows.append(row)
    return rows
