"""Weighted, L2-regularized binary logistic regression.

The objective is the mean class-weighted cross-entropy plus
||w||^2 / (2 * C * n), with C the inverse penalty strength (larger C =
weaker penalty, matching the usual inverse-regularization convention;
note that the opposite reading would invert every penalty sweep). The
bias is never penalized.

Fitting is deterministic full-batch gradient descent with backtracking
step halving, so the loss decreases monotonically and reruns are
bit-identical. Convergence is declared when the gradient infinity-norm
falls below the tolerance; otherwise fitting stops at max_iterations
with a warning. Sparse and dense feature matrices share one code path.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.special import expit

from .errors import NumericError
from .vectorize import SparseVector

__all__ = ["LrConfig", "FittedLinearModel", "loss_and_gradient", "fit_lr",
           "predict_proba", "predict"]

_Z_CLIP = 35.0  # keeps sigmoid output strictly inside (0, 1) in float64


@dataclass(frozen=True)
class LrConfig:
    """Training configuration for one logistic regression fit."""

    penalty_strength: float = 1.0          # inverse regularization C
    class_weight: tuple[float, float] = (1.0, 1.0)   # (w_pos, w_neg)
    max_iterations: int = 5000
    tolerance: float = 1e-6
    threshold: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "class_weight", tuple(self.class_weight))
        w_pos, w_neg = self.class_weight
        if not self.penalty_strength > 0:
            raise ValueError("penalty_strength must be positive")
        if not (w_pos > 0 and w_neg > 0):
            raise ValueError("class weights must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie in (0, 1)")

    def to_dict(self) -> dict:
        c = self.penalty_strength
        return {"penalty_strength": "inf" if math.isinf(c) else c,
                "class_weight": list(self.class_weight),
                "max_iterations": self.max_iterations,
                "tolerance": self.tolerance,
                "threshold": self.threshold}

    @classmethod
    def from_dict(cls, d: dict) -> "LrConfig":
        c = d.get("penalty_strength", 1.0)
        return cls(penalty_strength=math.inf if c == "inf" else float(c),
                   class_weight=tuple(d.get("class_weight", (1.0, 1.0))),
                   max_iterations=int(d.get("max_iterations", 5000)),
                   tolerance=float(d.get("tolerance", 1e-6)),
                   threshold=float(d.get("threshold", 0.5)))


@dataclass
class FittedLinearModel:
    """Weight vector, bias, and the configuration that produced them."""

    weights: np.ndarray
    bias: float
    config: LrConfig
    feature_space: str = ""
    seed: int = 0
    n_iterations: int = 0
    converged: bool = True

    def to_dict(self) -> dict:
        return {"kind": "lr",
                "weights": [float(v) for v in self.weights],
                "bias": float(self.bias),
                "config": self.config.to_dict(),
                "feature_space_id": self.feature_space,
                "training_fingerprint": {"seed": self.seed,
                                         "n_iterations": self.n_iterations,
                                         "converged": self.converged}}

    @classmethod
    def from_dict(cls, d: dict) -> "FittedLinearModel":
        fp = d.get("training_fingerprint", {})
        return cls(weights=np.array(d["weights"], dtype=np.float64),
                   bias=float(d["bias"]),
                   config=LrConfig.from_dict(d["config"]),
                   feature_space=d.get("feature_space_id", ""),
                   seed=int(fp.get("seed", 0)),
                   n_iterations=int(fp.get("n_iterations", 0)),
                   converged=bool(fp.get("converged", True)))


def _validate_problem(X, y) -> tuple:
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise ValueError("y must be 1-d")
    if X.shape[0] != y.size:
        raise ValueError(f"dimension mismatch: {X.shape[0]} rows vs "
                         f"{y.size} labels")
    if y.size < 2:
        raise ValueError("need at least two training samples")
    if not np.isin(y, (0.0, 1.0)).all():
        raise ValueError("labels must be 0 or 1")
    if y.min() == y.max():
        raise ValueError("training data contains a single class")
    data = X.data if sparse.issparse(X) else X
    if not np.all(np.isfinite(data)):
        raise ValueError("feature matrix contains non-finite values")
    return X, y


def _penalty_rate(config: LrConfig, n: int) -> float:
    c = config.penalty_strength
    return 0.0 if math.isinf(c) else 1.0 / (c * n)


def loss_and_gradient(X, y, w: np.ndarray, b: float, config: LrConfig
                      ) -> tuple[float, np.ndarray, float]:
    """Objective value and its gradient at (w, b).

    Exposed so tests can check the analytic gradient against central
    finite differences.
    """
    y = np.asarray(y, dtype=np.float64)
    n = y.size
    w_pos, w_neg = config.class_weight
    c_i = np.where(y == 1.0, w_pos, w_neg)
    z = X @ w + b
    lam = _penalty_rate(config, n)
    loss = float((c_i * (np.logaddexp(0.0, z) - y * z)).sum() / n
                 + 0.5 * lam * (w @ w))
    resid = c_i * (expit(z) - y) / n
    grad_w = X.T @ resid + lam * w
    grad_b = float(resid.sum())
    return loss, np.asarray(grad_w).ravel(), grad_b


def fit_lr(X, y, config: LrConfig, seed: int = 0) -> FittedLinearModel:
    """Fit by monotone backtracking gradient descent from zero weights.

    Deterministic given (X, y, config, seed); the seed is recorded in the
    model fingerprint. Warns when max_iterations is reached before the
    gradient tolerance.
    """
    X, y = _validate_problem(X, y)
    n, dim = X.shape
    w_pos, w_neg = config.class_weight
    c_i = np.where(y == 1.0, w_pos, w_neg)
    lam = _penalty_rate(config, n)

    w = np.zeros(dim)
    b = 0.0
    z = np.zeros(n)          # X @ w + b, maintained incrementally
    w_sq = 0.0               # ||w||^2, maintained incrementally

    def data_loss(zv):
        return float((c_i * (np.logaddexp(0.0, zv) - y * zv)).sum() / n)

    loss = data_loss(z)
    step = 1.0
    converged = False
    iterations = 0
    for iterations in range(1, config.max_iterations + 1):
        resid = c_i * (expit(z) - y) / n
        grad_w = np.asarray(X.T @ resid).ravel() + lam * w
        grad_b = float(resid.sum())
        grad_inf = max(float(np.abs(grad_w).max()) if dim else 0.0,
                       abs(grad_b))
        if grad_inf <= config.tolerance:
            converged = True
            iterations -= 1
            break

        Xg = np.asarray(X @ grad_w).ravel()
        g_sq = float(grad_w @ grad_w) + grad_b * grad_b
        w_dot_g = float(w @ grad_w)
        gw_sq = float(grad_w @ grad_w)

        t = step * 2.0
        accepted = False
        while t > 1e-30:
            z_t = z - t * (Xg + grad_b)
            w_sq_t = w_sq - 2.0 * t * w_dot_g + t * t * gw_sq
            loss_t = data_loss(z_t) + 0.5 * lam * w_sq_t
            if loss_t <= loss - 1e-4 * t * g_sq:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            # no decreasing step exists at float precision
            break
        w = w - t * grad_w
        b = b - t * grad_b
        z = z_t
        w_sq = w_sq_t
        loss = loss_t
        step = t
        if not math.isfinite(loss):
            raise NumericError("loss became non-finite during fitting")
        if iterations % 256 == 0:
            # refresh cached quantities to cancel incremental drift
            z = np.asarray(X @ w).ravel() + b
            w_sq = float(w @ w)
            loss = data_loss(z) + 0.5 * lam * w_sq

    if not converged:
        warnings.warn(f"logistic regression stopped after {iterations} "
                      f"iterations above tolerance {config.tolerance}",
                      RuntimeWarning, stacklevel=2)
    return FittedLinearModel(weights=w, bias=b, config=config, seed=seed,
                             n_iterations=iterations, converged=converged)


def _scores(model: FittedLinearModel, x):
    if isinstance(x, SparseVector):
        if x.dimension != model.weights.size:
            raise ValueError(f"dimension mismatch: vector {x.dimension} vs "
                             f"model {model.weights.size}")
        w = model.weights
        return model.bias + sum(w[i] * v for i, v in x.entries.items())
    if sparse.issparse(x) or np.asarray(x).ndim == 2:
        if x.shape[1] != model.weights.size:
            raise ValueError(f"dimension mismatch: matrix {x.shape[1]} vs "
                             f"model {model.weights.size}")
        return np.asarray(x @ model.weights).ravel() + model.bias
    x = np.asarray(x, dtype=np.float64)
    if x.size != model.weights.size:
        raise ValueError(f"dimension mismatch: vector {x.size} vs "
                         f"model {model.weights.size}")
    return float(x @ model.weights) + model.bias


def predict_proba(model: FittedLinearModel, x):
    """Positive-class probability sigma(w.x + b), strictly inside (0, 1).

    Accepts a single dense vector, a SparseVector, or a 2-d matrix (one
    row per document); returns a float or an array accordingly.
    """
    z = _scores(model, x)
    if isinstance(z, np.ndarray):
        return expit(np.clip(z, -_Z_CLIP, _Z_CLIP))
    return float(expit(min(max(z, -_Z_CLIP), _Z_CLIP)))


def predict(model: FittedLinearModel, x, threshold: float | None = None):
    """Thresholded label: 1 iff the probability is >= the threshold."""
    thr = model.config.threshold if threshold is None else threshold
    proba = predict_proba(model, x)
    if isinstance(proba, np.ndarray):
        return (proba >= thr).astype(np.int64)
    return int(proba >= thr)
