"""Stacked generalization over diversified logistic-regression learners.

The bank is the cross product of vectorizer families x class weights
(4 x 3 = 12 by default, bow excluded). Base learners fit on the train
slice only; their predicted probabilities on the meta slice become the
features of a logistic meta-learner. Validation records never touch any
fit, and the three slices are asserted disjoint at fit time. Base order
is part of the model: meta features are position-sensitive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .corpus import CorpusSplit, DocumentRecord
from .errors import DataError
from .features import BANK_FAMILIES, FeatureSpace
from .linear import FittedLinearModel, LrConfig, fit_lr, predict_proba

__all__ = ["BaseLearnerSpec", "EnsembleModel", "enumerate_specs",
           "default_specs", "DEFAULT_META_CONFIG", "fit_ensemble",
           "base_probabilities", "predict_proba_ensemble"]

# penalty strengths selected by the original tuning runs
DEFAULT_PENALTY_BY_FAMILY = {"tfidf": 0.1, "w2v_table_1": 0.1,
                             "w2v_table_2": 0.1, "sent_vectors": 1.0}
DEFAULT_CLASS_WEIGHTS = ((1.0, 1.0), (2.0, 1.0), (4.0, 1.0))
DEFAULT_META_CONFIG = LrConfig(penalty_strength=10.0, class_weight=(1.0, 1.0))


@dataclass(frozen=True)
class BaseLearnerSpec:
    """One (vectorizer family, class weight) slot in the bank."""

    vectorizer: str
    class_weight: tuple[float, float]
    lr_config: LrConfig

    def __post_init__(self):
        object.__setattr__(self, "class_weight", tuple(self.class_weight))
        if self.vectorizer not in BANK_FAMILIES:
            raise DataError(f"vectorizer must be one of {BANK_FAMILIES}, "
                            f"got {self.vectorizer!r}")
        if self.class_weight != self.lr_config.class_weight:
            raise DataError("spec class_weight must match lr_config.class_weight")

    @property
    def name(self) -> str:
        w_pos, w_neg = self.class_weight
        return f"{self.vectorizer}@{w_pos:g}:{w_neg:g}"

    def to_dict(self) -> dict:
        return {"vectorizer": self.vectorizer,
                "class_weight": list(self.class_weight),
                "lr_config": self.lr_config.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "BaseLearnerSpec":
        return cls(vectorizer=d["vectorizer"],
                   class_weight=tuple(d["class_weight"]),
                   lr_config=LrConfig.from_dict(d["lr_config"]))


def enumerate_specs(vectorizers: Sequence[str],
                    class_weights: Sequence[tuple[float, float]],
                    penalty_by_family: dict[str, float] | None = None,
                    **lr_overrides) -> list[BaseLearnerSpec]:
    """Deterministic vectorizer-major cross product of the bank axes."""
    if not vectorizers or not class_weights:
        raise DataError("vectorizers and class_weights must be non-empty")
    penalties = penalty_by_family or DEFAULT_PENALTY_BY_FAMILY
    specs = []
    for family in vectorizers:
        for weight in class_weights:
            config = LrConfig(penalty_strength=penalties.get(family, 1.0),
                              class_weight=tuple(weight), **lr_overrides)
            specs.append(BaseLearnerSpec(vectorizer=family,
                                         class_weight=tuple(weight),
                                         lr_config=config))
    return specs


def default_specs() -> list[BaseLearnerSpec]:
    """The standard 12-learner bank: 4 families x 3 class weights."""
    return enumerate_specs(BANK_FAMILIES, DEFAULT_CLASS_WEIGHTS)


@dataclass
class EnsembleModel:
    """Ordered bank of fitted base learners plus the meta-learner."""

    base: list[FittedLinearModel]
    meta: FittedLinearModel
    specs: list[BaseLearnerSpec]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.base) != len(self.specs):
            raise DataError("one fitted model required per spec")
        if self.meta.weights.size != len(self.base):
            raise DataError(f"meta dimension {self.meta.weights.size} != "
                            f"{len(self.base)} base learners")

    def to_dict(self) -> dict:
        return {"kind": "ensemble",
                "base": [{"spec": s.to_dict(), "model": m.to_dict()}
                         for s, m in zip(self.specs, self.base)],
                "meta": self.meta.to_dict(),
                "metadata": dict(self.metadata)}

    @classmethod
    def from_dict(cls, d: dict) -> "EnsembleModel":
        return cls(base=[FittedLinearModel.from_dict(b["model"])
                         for b in d["base"]],
                   meta=FittedLinearModel.from_dict(d["meta"]),
                   specs=[BaseLearnerSpec.from_dict(b["spec"])
                          for b in d["base"]],
                   metadata=dict(d.get("metadata", {})))


def _labels(records: Sequence[DocumentRecord], part: str) -> np.ndarray:
    missing = [r.id for r in records if r.label is None]
    if missing:
        raise DataError(f"{part} slice has unlabelled record(s): {missing[:10]}")
    return np.array([r.label for r in records], dtype=np.int64)


def fit_ensemble(split: CorpusSplit, specs: Sequence[BaseLearnerSpec],
                 meta_config: LrConfig | None = None,
                 features: FeatureSpace | None = None,
                 seed: int = 0) -> EnsembleModel:
    """Fit the bank on split.train and the meta-learner on split.meta_train.

    The vocabulary is (re)fit on split.train inside this call, so no meta
    or validation text can leak into any feature space.
    """
    if features is None:
        raise DataError("fit_ensemble requires a FeatureSpace with the "
                        "embedding resources the specs reference")
    if not specs:
        raise DataError("specs must be non-empty")
    if not split.train:
        raise DataError("split has an empty train slice")
    if not split.meta_train:
        raise DataError("ensemble fitting needs a non-empty meta slice")
    _assert_no_leakage(split)
    y_train = _labels(split.train, "train")
    y_meta = _labels(split.meta_train, "meta_train")

    features.fit(split.train)
    train_matrices: dict[str, object] = {}
    meta_matrices: dict[str, object] = {}
    base_models: list[FittedLinearModel] = []
    meta_features = np.empty((len(split.meta_train), len(specs)))
    for j, spec in enumerate(specs):
        family = spec.vectorizer
        if family not in train_matrices:
            train_matrices[family] = features.matrix(family, split.train)
            meta_matrices[family] = features.matrix(family, split.meta_train)
        try:
            model = fit_lr(train_matrices[family], y_train, spec.lr_config,
                           seed=seed)
        except Exception as exc:
            raise type(exc)(f"base learner {spec.name}: {exc}") from exc
        model.feature_space = features.family_id(family)
        base_models.append(model)
        meta_features[:, j] = predict_proba(model, meta_matrices[family])

    assert np.all((meta_features > 0) & (meta_features < 1))
    meta_model = fit_lr(meta_features, y_meta,
                        meta_config or DEFAULT_META_CONFIG, seed=seed)
    meta_model.feature_space = f"meta:{len(specs)}"
    metadata = {"seed": seed,
                "n_train": len(split.train),
                "n_meta": len(split.meta_train),
                "sent_substitution": features.uses_sent_fallback,
                "learners": [s.name for s in specs]}
    return EnsembleModel(base=base_models, meta=meta_model,
                         specs=list(specs), metadata=metadata)


def _assert_no_leakage(split: CorpusSplit) -> None:
    train = {r.id for r in split.train}
    meta = {r.id for r in split.meta_train}
    val = {r.id for r in split.validation}
    if train & meta or train & val or meta & val:
        raise DataError("split slices share record ids; refusing to fit")


def base_probabilities(model: EnsembleModel,
                       records: Sequence[DocumentRecord],
                       features: FeatureSpace) -> np.ndarray:
    """Probabilities of every base learner, columns in stored bank order."""
    matrices: dict[str, object] = {}
    out = np.empty((len(records), len(model.base)))
    for j, (spec, base) in enumerate(zip(model.specs, model.base)):
        family = spec.vectorizer
        if family not in matrices:
            matrices[family] = features.matrix(family, records)
        out[:, j] = predict_proba(base, matrices[family])
    return out


def predict_proba_ensemble(model: EnsembleModel, records, features: FeatureSpace):
    """Meta probability over the stored base order.

    Accepts one DocumentRecord or a sequence; returns float or array.
    """
    single = isinstance(records, DocumentRecord)
    batch = [records] if single else list(records)
    meta_features = base_probabilities(model, batch, features)
    proba = predict_proba(model.meta, meta_features)
    return float(proba[0]) if single else proba
