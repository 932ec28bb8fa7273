"""Random-forest baseline: bagged CART trees with Gini-impurity splits
and per-node feature subsampling.

Kept as a comparison model only; it does not participate in the stacked
ensemble. Split search enumerates midpoints between distinct consecutive
feature values; ties on impurity resolve to the lowest feature index,
then the lowest threshold, so fitting is deterministic given the seed.
Sparse input is densified per node over the candidate feature subset
only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

__all__ = ["RfConfig", "FittedForest", "fit_rf", "predict_proba_rf",
           "gini_impurity"]


@dataclass(frozen=True)
class RfConfig:
    n_estimators: int = 100
    max_depth: int = 8
    max_features: float = 1.0      # fraction of features drawn per node
    min_samples_leaf: int = 1
    seed: int = 0
    bootstrap: bool = True

    def __post_init__(self):
        if self.n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not 0 < self.max_features <= 1:
            raise ValueError("max_features must lie in (0, 1]")
        if self.min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")

    def to_dict(self) -> dict:
        return {"n_estimators": self.n_estimators, "max_depth": self.max_depth,
                "max_features": self.max_features,
                "min_samples_leaf": self.min_samples_leaf,
                "seed": self.seed, "bootstrap": self.bootstrap}

    @classmethod
    def from_dict(cls, d: dict) -> "RfConfig":
        return cls(n_estimators=int(d.get("n_estimators", 100)),
                   max_depth=int(d.get("max_depth", 8)),
                   max_features=float(d.get("max_features", 1.0)),
                   min_samples_leaf=int(d.get("min_samples_leaf", 1)),
                   seed=int(d.get("seed", 0)),
                   bootstrap=bool(d.get("bootstrap", True)))


@dataclass
class _Node:
    """Internal split or leaf; leaves carry (p_negative, p_positive)."""

    feature: int | None = None
    threshold: float = 0.0
    left: "_Node | None" = None
    right: "_Node | None" = None
    prob: tuple[float, float] | None = None


@dataclass
class FittedForest:
    trees: list[_Node]
    config: RfConfig
    n_features: int

    def to_dict(self) -> dict:
        return {"kind": "rf", "config": self.config.to_dict(),
                "n_features": self.n_features,
                "trees": [_encode_tree(t) for t in self.trees]}

    @classmethod
    def from_dict(cls, d: dict) -> "FittedForest":
        return cls(trees=[_decode_tree(t) for t in d["trees"]],
                   config=RfConfig.from_dict(d["config"]),
                   n_features=int(d["n_features"]))


def _encode_tree(root: _Node) -> list[dict]:
    """Preorder node list; children referenced by list index."""
    nodes: list[dict] = []

    def visit(node: _Node) -> int:
        index = len(nodes)
        if node.prob is not None:
            nodes.append({"leaf": [node.prob[0], node.prob[1]]})
            return index
        nodes.append({"feature": node.feature, "threshold": node.threshold})
        nodes[index]["left"] = visit(node.left)
        nodes[index]["right"] = visit(node.right)
        return index

    visit(root)
    return nodes


def _decode_tree(nodes: list[dict]) -> _Node:
    def build(index: int) -> _Node:
        raw = nodes[index]
        if "leaf" in raw:
            return _Node(prob=(raw["leaf"][0], raw["leaf"][1]))
        return _Node(feature=int(raw["feature"]),
                     threshold=float(raw["threshold"]),
                     left=build(raw["left"]), right=build(raw["right"]))

    return build(0)


def gini_impurity(labels: np.ndarray) -> float:
    """1 - p0^2 - p1^2 over a node's binary label multiset."""
    n = labels.size
    if n == 0:
        return 0.0
    p1 = float(labels.sum()) / n
    p0 = 1.0 - p1
    return 1.0 - p0 * p0 - p1 * p1


def _column(X, feature: int, rows: np.ndarray) -> np.ndarray:
    if sparse.issparse(X):
        return np.asarray(X[:, [feature]].todense()).ravel()[rows]
    return X[rows, feature]


def _leaf(y_rows: np.ndarray) -> _Node:
    n = y_rows.size
    p1 = float(y_rows.sum()) / n
    return _Node(prob=(1.0 - p1, p1))


def _best_split(X, y, rows: np.ndarray, features: np.ndarray,
                min_leaf: int) -> tuple[int, float] | None:
    """Exhaustive threshold search over the candidate features; returns
    (feature, threshold) of the strictly best weighted Gini, or None."""
    y_rows = y[rows]
    n = rows.size
    best = None
    best_gini = math.inf
    for feature in features:
        values = _column(X, int(feature), rows)
        order = np.argsort(values, kind="mergesort")
        v_sorted = values[order]
        y_sorted = y_rows[order]
        pos_prefix = np.cumsum(y_sorted)
        total_pos = pos_prefix[-1]
        for i in range(min_leaf, n - min_leaf + 1):
            if v_sorted[i - 1] == v_sorted[i]:
                continue
            n_left = i
            n_right = n - i
            pos_left = pos_prefix[i - 1]
            pos_right = total_pos - pos_left
            p1l = pos_left / n_left
            p1r = pos_right / n_right
            gini = (n_left * (1.0 - p1l * p1l - (1 - p1l) * (1 - p1l))
                    + n_right * (1.0 - p1r * p1r - (1 - p1r) * (1 - p1r))) / n
            if gini < best_gini:
                best_gini = gini
                best = (int(feature), (v_sorted[i - 1] + v_sorted[i]) / 2.0)
    return best


def _grow(X, y, rows: np.ndarray, depth: int, rng: np.random.Generator,
          cfg: RfConfig, n_features: int) -> _Node:
    y_rows = y[rows]
    if (depth >= cfg.max_depth or rows.size < 2 * cfg.min_samples_leaf
            or y_rows.min() == y_rows.max()):
        return _leaf(y_rows)
    k = math.ceil(cfg.max_features * n_features)
    features = np.sort(rng.choice(n_features, size=k, replace=False))
    split = _best_split(X, y, rows, features, cfg.min_samples_leaf)
    if split is None:
        return _leaf(y_rows)
    feature, threshold = split
    values = _column(X, feature, rows)
    left_mask = values <= threshold
    return _Node(feature=feature, threshold=threshold,
                 left=_grow(X, y, rows[left_mask], depth + 1, rng, cfg,
                            n_features),
                 right=_grow(X, y, rows[~left_mask], depth + 1, rng, cfg,
                             n_features))


def fit_rf(X, y, config: RfConfig) -> FittedForest:
    """Fit bagged trees; deterministic given (X, y, config)."""
    y = np.asarray(y, dtype=np.int64)
    if X.shape[0] != y.size:
        raise ValueError("dimension mismatch between X and y")
    if y.min() == y.max():
        raise ValueError("training data contains a single class")
    n, n_features = X.shape
    seeds = np.random.SeedSequence(config.seed).spawn(config.n_estimators)
    trees = []
    for seq in seeds:
        rng = np.random.default_rng(seq)
        rows = rng.integers(0, n, size=n) if config.bootstrap else np.arange(n)
        trees.append(_grow(X, y, np.asarray(rows), 0, rng, config, n_features))
    return FittedForest(trees=trees, config=config, n_features=n_features)


def _tree_proba(node: _Node, x_dense: np.ndarray) -> float:
    while node.prob is None:
        node = node.left if x_dense[node.feature] <= node.threshold else node.right
    return node.prob[1]


def predict_proba_rf(model: FittedForest, x):
    """Mean over trees of the positive-class leaf probability.

    Accepts a single vector or a matrix; returns a float or an array.
    """
    if sparse.issparse(x):
        x = np.asarray(x.todense())
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    rows = x.reshape(1, -1) if single else x
    if rows.shape[1] != model.n_features:
        raise ValueError(f"dimension mismatch: {rows.shape[1]} vs "
                         f"{model.n_features}")
    out = np.empty(rows.shape[0])
    for i, row in enumerate(rows):
        out[i] = sum(_tree_proba(t, row) for t in model.trees) / len(model.trees)
    return float(out[0]) if single else out
