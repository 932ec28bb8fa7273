"""End-to-end orchestration behind the CLI commands.

One JSON configuration document drives an experiment; command-line flags
override file values. Every artifact embeds the schema version, the
configuration fingerprint, and all seeds, and is written atomically, so
rerunning with an identical configuration and corpus yields byte-identical
files. Model files are self-describing: prediction rebuilds the feature
space from the payload and fails fast on fingerprint mismatches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import (CorpusSplit, DocumentRecord, load_corpus, save_corpus,
                     split_corpus)
from .embeddings import load_document_vectors, load_embedding_table
from .ensemble import (DEFAULT_CLASS_WEIGHTS, DEFAULT_META_CONFIG,
                       DEFAULT_PENALTY_BY_FAMILY, EnsembleModel,
                       base_probabilities, enumerate_specs, fit_ensemble,
                       predict_proba_ensemble)
from .errors import ConfigError, DataError
from .features import FAMILIES, FeatureSpace
from .forest import FittedForest, RfConfig, fit_rf, predict_proba_rf
from .interpret import (bootstrap_coefficients, coefficient_quantiles,
                        meta_contributions, top_terms)
from .linear import FittedLinearModel, LrConfig, fit_lr, predict_proba
from .metrics import EvalReport, evaluate_scores
from .persist import (SCHEMA_VERSION, fingerprint, read_json, write_json,
                      write_tsv)
from .textprep import PrepConfig
from .tuning import GridSpec, grid_search
from .vectorize import Vocabulary

__all__ = ["PipelineConfig", "load_pipeline_config", "TrainResult",
           "run_train", "run_predict", "run_evaluate", "run_interpret",
           "run_tune", "run_split", "run_vectorize"]


@dataclass
class PipelineConfig:
    """Validated experiment configuration (one JSON document)."""

    seed: int = 0
    output_dir: str = "run"
    prep: PrepConfig = field(default_factory=PrepConfig)
    fractions: tuple[float, float, float] = (0.8, 0.0, 0.2)
    stratified: bool = True
    family: str = "tfidf"
    embedding_table_paths: dict[str, str] = field(default_factory=dict)
    document_vectors_path: str | None = None
    sent_fallback: str | None = None
    min_df: int = 1
    max_df: float = 1.0
    model_kind: str = "lr"
    lr: LrConfig = field(default_factory=LrConfig)
    rf: RfConfig = field(default_factory=RfConfig)
    ensemble_class_weights: tuple = DEFAULT_CLASS_WEIGHTS
    ensemble_penalties: dict = field(
        default_factory=lambda: dict(DEFAULT_PENALTY_BY_FAMILY))
    meta: LrConfig = DEFAULT_META_CONFIG
    grid_model: str = "lr"
    grid_params: dict = field(default_factory=dict)
    grid_folds: int = 5
    bootstrap_b: int = 1000
    top_k: int = 10

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "output_dir": self.output_dir,
            "prep": self.prep.to_dict(),
            "split": {"train": self.fractions[0], "meta": self.fractions[1],
                      "validation": self.fractions[2],
                      "stratified": self.stratified},
            "vectorizer": {"family": self.family,
                           "embedding_tables": dict(self.embedding_table_paths),
                           "document_vectors": self.document_vectors_path,
                           "sent_fallback": self.sent_fallback,
                           "min_df": self.min_df, "max_df": self.max_df},
            "model": {"kind": self.model_kind,
                      "lr": self.lr.to_dict(),
                      "rf": self.rf.to_dict(),
                      "ensemble": {
                          "class_weights": [list(w) for w in
                                            self.ensemble_class_weights],
                          "penalty_by_family": dict(self.ensemble_penalties),
                          "meta": self.meta.to_dict()}},
            "grid": {"model": self.grid_model, "params": dict(self.grid_params),
                     "folds": self.grid_folds},
            "bootstrap_b": self.bootstrap_b,
            "top_k": self.top_k,
        }

    @property
    def config_fingerprint(self) -> str:
        return fingerprint(self.to_dict())

    @classmethod
    def from_dict(cls, raw: dict) -> "PipelineConfig":
        try:
            split = raw.get("split", {})
            vec = raw.get("vectorizer", {})
            model = raw.get("model", {})
            ens = model.get("ensemble", {})
            grid = raw.get("grid", {})
            return cls(
                seed=int(raw.get("seed", 0)),
                output_dir=str(raw.get("output_dir", "run")),
                prep=PrepConfig.from_dict(raw.get("prep", {})),
                fractions=(float(split.get("train", 0.8)),
                           float(split.get("meta", 0.0)),
                           float(split.get("validation", 0.2))),
                stratified=bool(split.get("stratified", True)),
                family=str(vec.get("family", "tfidf")),
                embedding_table_paths=dict(vec.get("embedding_tables", {})),
                document_vectors_path=vec.get("document_vectors"),
                sent_fallback=vec.get("sent_fallback"),
                min_df=int(vec.get("min_df", 1)),
                max_df=float(vec.get("max_df", 1.0)),
                model_kind=str(model.get("kind", "lr")),
                lr=LrConfig.from_dict(model.get("lr", {})),
                rf=RfConfig.from_dict(model.get("rf", {})) if model.get("rf")
                else RfConfig(),
                ensemble_class_weights=tuple(
                    tuple(w) for w in ens.get("class_weights",
                                              DEFAULT_CLASS_WEIGHTS)),
                ensemble_penalties=dict(ens.get("penalty_by_family",
                                                DEFAULT_PENALTY_BY_FAMILY)),
                meta=LrConfig.from_dict(ens.get("meta",
                                                DEFAULT_META_CONFIG.to_dict())),
                grid_model=str(grid.get("model", "lr")),
                grid_params={k: tuple(v) for k, v in
                             grid.get("params", {}).items()},
                grid_folds=int(grid.get("folds", 5)),
                bootstrap_b=int(raw.get("bootstrap_b", 1000)),
                top_k=int(raw.get("top_k", 10)),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid configuration: {exc}") from exc

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ConfigError(f"vectorizer family must be one of {FAMILIES}, "
                              f"got {self.family!r}")
        if self.model_kind not in ("lr", "rf", "ensemble"):
            raise ConfigError(f"model kind must be lr, rf or ensemble, "
                              f"got {self.model_kind!r}")
        for family, path in self.embedding_table_paths.items():
            if not Path(path).exists():
                raise ConfigError(f"embedding table for {family} not found: "
                                  f"{path}")
        if (self.document_vectors_path is not None
                and not Path(self.document_vectors_path).exists()):
            raise ConfigError(f"document vectors not found: "
                              f"{self.document_vectors_path}")


def load_pipeline_config(path: str | Path,
                         overrides: dict | None = None) -> PipelineConfig:
    """Load and validate a configuration file; flags override file values."""
    raw = read_json(path)
    config = PipelineConfig.from_dict(raw)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if not hasattr(config, key):
            raise ConfigError(f"unknown override {key!r}")
        setattr(config, key, value)
    config.validate()
    return config


def build_feature_space(config: PipelineConfig) -> FeatureSpace:
    tables = {family: load_embedding_table(path, name=family)
              for family, path in config.embedding_table_paths.items()}
    doc_vectors = (load_document_vectors(config.document_vectors_path)
                   if config.document_vectors_path else None)
    return FeatureSpace(prep=config.prep, embedding_tables=tables,
                        document_vectors=doc_vectors,
                        sent_fallback=config.sent_fallback,
                        min_df=config.min_df, max_df=config.max_df)


def _labels_of(records: Sequence[DocumentRecord], part: str) -> np.ndarray:
    missing = [r.id for r in records if r.label is None]
    if missing:
        raise DataError(f"{part}: unlabelled record(s) {missing[:10]}")
    return np.array([r.label for r in records], dtype=np.int64)


# ---------------------------------------------------------------------------
# train
# ---------------------------------------------------------------------------

@dataclass
class TrainResult:
    model_path: Path
    report_path: Path
    report: EvalReport
    model: object
    features: FeatureSpace
    split: CorpusSplit


def _feature_context_payload(config: PipelineConfig, features: FeatureSpace,
                             families: Sequence[str]) -> dict:
    """Everything prediction needs to rebuild the feature space."""
    payload: dict = {"prep": config.prep.to_dict(),
                     "families": list(families),
                     "min_df": config.min_df, "max_df": config.max_df,
                     "vocabulary": None, "embedding_tables": {},
                     "document_vectors": None,
                     "sent_fallback": None}
    if any(f in ("bow", "tfidf") for f in families):
        payload["vocabulary"] = features.vocabulary.to_dict()
    for family in families:
        table = features.embedding_tables.get(family)
        if family in ("w2v_table_1", "w2v_table_2") and table is not None:
            payload["embedding_tables"][family] = {
                "path": config.embedding_table_paths[family],
                "dimension": table.dimension, "terms": len(table),
                "fingerprint": table.fingerprint}
    if "sent_vectors" in families:
        if features.document_vectors is not None:
            dim = next(iter(features.document_vectors.values())).size
            payload["document_vectors"] = {
                "path": config.document_vectors_path,
                "count": len(features.document_vectors), "dimension": int(dim)}
        else:
            payload["sent_fallback"] = config.sent_fallback
            table = features.embedding_tables[config.sent_fallback]
            payload["embedding_tables"][config.sent_fallback] = {
                "path": config.embedding_table_paths[config.sent_fallback],
                "dimension": table.dimension, "terms": len(table),
                "fingerprint": table.fingerprint}
    return payload


def run_train(config: PipelineConfig, corpus_path: str | Path) -> TrainResult:
    """Split, preprocess, vectorize, fit, and evaluate on the validation
    slice; writes model.json, report.json and the two curve TSVs."""
    config.validate()
    corpus = load_corpus(corpus_path)
    if config.model_kind == "ensemble" and config.fractions[1] <= 0:
        raise ConfigError("ensemble training needs a positive meta fraction "
                          "(e.g. 0.6/0.2/0.2)")
    if config.model_kind != "ensemble" and config.fractions[1] != 0:
        raise ConfigError("non-ensemble training uses a zero meta fraction "
                          "(e.g. 0.8/0.0/0.2)")
    split = split_corpus(corpus, config.fractions, config.stratified,
                         config.seed)
    features = build_feature_space(config)
    y_val = _labels_of(split.validation, "validation")

    per_base = None
    if config.model_kind == "ensemble":
        specs = enumerate_specs(
            ("tfidf", "w2v_table_1", "w2v_table_2", "sent_vectors"),
            config.ensemble_class_weights, config.ensemble_penalties)
        model = fit_ensemble(split, specs, config.meta, features,
                             seed=config.seed)
        scores = predict_proba_ensemble(model, split.validation, features)
        threshold = config.meta.threshold
        base_scores = base_probabilities(model, split.validation, features)
        per_base = []
        for j, spec in enumerate(specs):
            base_report = evaluate_scores(y_val, base_scores[:, j],
                                          spec.lr_config.threshold)
            per_base.append({"learner": spec.name,
                             **base_report.to_dict()})
        model_payload = model.to_dict()
        families = ["tfidf", "w2v_table_1", "w2v_table_2", "sent_vectors"]
    else:
        features.fit(split.train)
        X_train = features.matrix(config.family, split.train)
        X_val = features.matrix(config.family, split.validation)
        y_train = _labels_of(split.train, "train")
        if config.model_kind == "lr":
            model = fit_lr(X_train, y_train, config.lr, seed=config.seed)
            model.feature_space = features.family_id(config.family)
            scores = predict_proba(model, X_val)
            threshold = config.lr.threshold
        else:
            model = fit_rf(X_train, y_train, config.rf)
            scores = predict_proba_rf(model, X_val)
            threshold = 0.5
        model_payload = model.to_dict()
        families = [config.family]

    report = evaluate_scores(y_val, scores, threshold)
    out = Path(config.output_dir)
    model_doc = {"schema_version": SCHEMA_VERSION,
                 "model": model_payload,
                 "feature_context": _feature_context_payload(config, features,
                                                             families),
                 "training_config": config.to_dict(),
                 "config_fingerprint": config.config_fingerprint,
                 "corpus": {"path": str(corpus_path),
                            "n_records": len(corpus)}}
    report_doc = {"schema_version": SCHEMA_VERSION,
                  "report": report.to_dict(),
                  "config_fingerprint": config.config_fingerprint,
                  "split_sizes": {k: len(v) for k, v in split.parts.items()},
                  "seed": config.seed}
    if per_base is not None:
        report_doc["per_base_learner"] = per_base
    model_path = out / "model.json"
    report_path = out / "report.json"
    write_json(model_path, model_doc)
    write_json(report_path, report_doc)
    write_tsv(out / "roc_curve.tsv", ("false_positive_rate", "true_positive_rate"),
              report.roc_points.tolist())
    write_tsv(out / "pr_curve.tsv", ("recall", "precision"),
              report.pr_points.tolist())
    return TrainResult(model_path=model_path, report_path=report_path,
                       report=report, model=model, features=features,
                       split=split)


# ---------------------------------------------------------------------------
# predict
# ---------------------------------------------------------------------------

def _load_model_doc(model_path: str | Path) -> dict:
    doc = read_json(model_path)
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DataError(f"unsupported model schema version {version!r} "
                        f"(supported: {SCHEMA_VERSION})")
    return doc


def _restore_model(doc: dict):
    kind = doc["model"].get("kind")
    if kind == "lr":
        return FittedLinearModel.from_dict(doc["model"])
    if kind == "rf":
        return FittedForest.from_dict(doc["model"])
    if kind == "ensemble":
        return EnsembleModel.from_dict(doc["model"])
    raise DataError(f"unknown model kind {kind!r}")


def _restore_feature_space(doc: dict,
                           table_overrides: dict[str, str] | None = None,
                           document_vectors: str | None = None
                           ) -> FeatureSpace:
    context = doc["feature_context"]
    overrides = table_overrides or {}
    tables = {}
    for family, info in context.get("embedding_tables", {}).items():
        path = overrides.get(family, info["path"])
        table = load_embedding_table(path, name=family)
        if table.dimension != info["dimension"] or len(table) != info["terms"]:
            raise DataError(
                f"feature-space mismatch for {family}: model expects "
                f"{info['terms']} terms x {info['dimension']} dims, "
                f"{path} has {len(table)} x {table.dimension}")
        tables[family] = table
    doc_vectors = None
    dv_info = context.get("document_vectors")
    if dv_info is not None or document_vectors is not None:
        path = document_vectors or dv_info["path"]
        doc_vectors = load_document_vectors(path)
        if dv_info is not None and doc_vectors:
            dim = next(iter(doc_vectors.values())).size
            if dim != dv_info["dimension"]:
                raise DataError(f"feature-space mismatch: document vectors "
                                f"have dimension {dim}, model expects "
                                f"{dv_info['dimension']}")
    features = FeatureSpace(prep=PrepConfig.from_dict(context["prep"]),
                            embedding_tables=tables,
                            document_vectors=doc_vectors,
                            sent_fallback=context.get("sent_fallback"),
                            min_df=context.get("min_df", 1),
                            max_df=context.get("max_df", 1.0))
    if context.get("vocabulary") is not None:
        features.vocabulary = Vocabulary.from_dict(context["vocabulary"])
    return features


def _score_records(doc: dict, model, features: FeatureSpace,
                   records: Sequence[DocumentRecord]) -> tuple[np.ndarray, float]:
    kind = doc["model"]["kind"]
    if kind == "ensemble":
        scores = predict_proba_ensemble(model, records, features)
        return np.atleast_1d(scores), model.meta.config.threshold
    family = doc["feature_context"]["families"][0]
    X = features.matrix(family, records)
    if kind == "lr":
        return np.atleast_1d(predict_proba(model, X)), model.config.threshold
    return np.atleast_1d(predict_proba_rf(model, X)), 0.5


def run_predict(model_path: str | Path, corpus_path: str | Path,
                output_path: str | Path, threshold: float | None = None,
                table_overrides: dict[str, str] | None = None,
                document_vectors: str | None = None) -> Path:
    """Score a corpus with a saved model; writes id/probability/label TSV.

    A threshold override changes labels only, never probabilities.
    """
    doc = _load_model_doc(model_path)
    model = _restore_model(doc)
    features = _restore_feature_space(doc, table_overrides, document_vectors)
    records = load_corpus(corpus_path)
    scores, default_threshold = _score_records(doc, model, features, records)
    thr = default_threshold if threshold is None else threshold
    if not 0 < thr < 1:
        raise ConfigError(f"threshold must lie in (0, 1), got {thr}")
    rows = [(rec.id, float(s), int(s >= thr))
            for rec, s in zip(records, scores)]
    output_path = Path(output_path)
    write_tsv(output_path, ("id", "probability", "label"), rows)
    return output_path


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------

def read_predictions(path: str | Path) -> dict[str, tuple[float, int]]:
    """Parse a predictions TSV into id -> (probability, label)."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"predictions file not found: {path}")
    out: dict[str, tuple[float, int]] = {}
    with path.open("r", encoding="utf-8") as f:
        header = f.readline().rstrip("\r\n").split("\t")
        if header[:3] != ["id", "probability", "label"]:
            raise DataError(f"{path}: expected header id/probability/label")
        for lineno, line in enumerate(f, start=2):
            line = line.rstrip("\r\n")
            if not line:
                continue
            cells = line.split("\t")
            if len(cells) != 3:
                raise DataError(f"{path}: line {lineno}: expected 3 columns")
            doc_id, prob, label = cells
            if doc_id in out:
                raise DataError(f"{path}: line {lineno}: duplicate id {doc_id!r}")
            try:
                out[doc_id] = (float(prob), int(label))
            except ValueError:
                raise DataError(f"{path}: line {lineno}: bad probability or "
                                f"label") from None
    if not out:
        raise DataError(f"{path}: no prediction rows")
    return out


def run_evaluate(predictions_path: str | Path, truth_path: str | Path,
                 output_dir: str | Path) -> EvalReport:
    """Join predictions and truth by id and compute the full report."""
    predictions = read_predictions(predictions_path)
    truth = load_corpus(truth_path)
    truth_labels = {r.id: r.label for r in truth}
    unlabelled = [i for i, y in truth_labels.items() if y is None]
    if unlabelled:
        raise DataError(f"truth corpus has unlabelled record(s): "
                        f"{unlabelled[:10]}")
    common = set(predictions) & set(truth_labels)
    if not common:
        raise DataError("no ids in common between predictions and truth")
    only_pred = sorted(set(predictions) - common)
    only_truth = sorted(set(truth_labels) - common)
    if only_pred or only_truth:
        raise DataError(f"unmatched ids: {only_pred[:10]} only in predictions,"
                        f" {only_truth[:10]} only in truth")
    ids = sorted(common)
    y_true = [truth_labels[i] for i in ids]
    scores = [predictions[i][0] for i in ids]
    y_pred = [predictions[i][1] for i in ids]
    report = evaluate_scores(y_true, scores, threshold=None, y_pred=y_pred)
    out = Path(output_dir)
    write_json(out / "report.json",
               {"schema_version": SCHEMA_VERSION, "report": report.to_dict(),
                "predictions": str(predictions_path),
                "truth": str(truth_path)})
    write_tsv(out / "roc_curve.tsv",
              ("false_positive_rate", "true_positive_rate"),
              report.roc_points.tolist())
    write_tsv(out / "pr_curve.tsv", ("recall", "precision"),
              report.pr_points.tolist())
    return report


# ---------------------------------------------------------------------------
# interpret
# ---------------------------------------------------------------------------

def run_interpret(model_path: str | Path, corpus_path: str | Path,
                  output_dir: str | Path, B: int | None = None,
                  k: int | None = None) -> dict[str, Path]:
    """Bootstrap interpretation of a saved LR or ensemble model.

    The training split is reconstructed from the recorded configuration,
    so coefficients are bootstrapped over exactly the data the model saw.
    """
    doc = _load_model_doc(model_path)
    kind = doc["model"]["kind"]
    if kind == "rf":
        raise ConfigError("random-forest models are not supported by "
                          "interpret; use an lr or ensemble model")
    config = PipelineConfig.from_dict(doc["training_config"])
    B = config.bootstrap_b if B is None else B
    k = config.top_k if k is None else k
    model = _restore_model(doc)
    features = _restore_feature_space(doc)
    corpus = load_corpus(corpus_path)
    recorded = doc.get("corpus", {}).get("n_records")
    if recorded is not None and recorded != len(corpus):
        raise DataError(f"corpus has {len(corpus)} records but the model "
                        f"was trained from {recorded}; interpretation needs "
                        f"the original training corpus")
    split = split_corpus(corpus, config.fractions, config.stratified,
                         config.seed)
    y_train = _labels_of(split.train, "train")
    out = Path(output_dir)
    written: dict[str, Path] = {}

    if kind == "lr":
        family = doc["feature_context"]["families"][0]
        lr_config = model.config
    else:
        tfidf_specs = [s for s in model.specs if s.vectorizer == "tfidf"]
        family = "tfidf" if tfidf_specs else None
        lr_config = tfidf_specs[0].lr_config if tfidf_specs else None

    if family is not None:
        X = features.matrix(family, split.train)
        if family in ("bow", "tfidf"):
            names = list(features.vocabulary.terms)
        else:
            names = [f"dim_{i}" for i in range(X.shape[1])]
        summaries = bootstrap_coefficients(X, y_train, lr_config, B=B,
                                           seed=config.seed,
                                           feature_names=names)
        by_term = {s.term: s for s in summaries}
        rows = []
        for direction in ("positive", "negative"):
            for rank, (term, mean) in enumerate(
                    top_terms(summaries, min(k, len(summaries)), direction),
                    start=1):
                q = coefficient_quantiles([by_term[term]])[0]
                rows.append((direction, rank, term, mean,
                             q["q2.5"], q["q50"], q["q97.5"]))
        path = out / "term_importance.tsv"
        write_tsv(path, ("direction", "rank", "term", "mean_coef",
                         "q2.5", "q50", "q97.5"), rows)
        written["term_importance"] = path

    if kind == "ensemble":
        y_meta = _labels_of(split.meta_train, "meta_train")
        meta_X = base_probabilities(model, split.meta_train, features)
        mc = meta_contributions(model, meta_X, y_meta, B=B, seed=config.seed)
        rows = []
        quantiles = coefficient_quantiles(mc.summaries)
        for name, contribution, mean, q in zip(mc.learners, mc.contributions,
                                               mc.mean_coefficients, quantiles):
            rows.append((name, float(contribution), float(mean),
                         q["q2.5"], q["q50"], q["q97.5"]))
        path = out / "meta_contributions.tsv"
        write_tsv(path, ("learner", "contribution", "mean_coef",
                         "q2.5", "q50", "q97.5"), rows)
        written["meta_contributions"] = path
    return written


# ---------------------------------------------------------------------------
# tune
# ---------------------------------------------------------------------------

def run_tune(config: PipelineConfig, corpus_path: str | Path,
             output_dir: str | Path | None = None) -> dict:
    """Cross-validated grid search on the training slice."""
    config.validate()
    if not config.grid_params:
        raise ConfigError("configuration has no grid.params to search")
    corpus = load_corpus(corpus_path)
    split = split_corpus(corpus, config.fractions, config.stratified,
                         config.seed)
    features = build_feature_space(config)
    features.fit(split.train)
    X = features.matrix(config.family, split.train)
    y = _labels_of(split.train, "train")
    base = config.lr if config.grid_model == "lr" else config.rf
    grid = GridSpec(params=config.grid_params, folds=config.grid_folds)
    result = grid_search(X, y, grid, seed=config.seed, base_config=base)

    out = Path(output_dir or config.output_dir)
    names = sorted(config.grid_params)
    rows = []
    for entry in result.table:
        rows.append(tuple(repr(entry["params"][n]) for n in names)
                    + tuple(entry["per_fold"]) + (entry["mean"],))
    fold_cols = tuple(f"fold_{i}" for i in range(config.grid_folds))
    write_tsv(out / "tune_results.tsv", tuple(names) + fold_cols + ("mean",),
              rows)
    best_doc = {"schema_version": SCHEMA_VERSION,
                "best_params": {k: repr(v) for k, v in
                                result.best_params.items()},
                "best_score": result.best_score,
                "fold_fingerprint": result.fold_fingerprint,
                "config_fingerprint": config.config_fingerprint,
                "seed": config.seed}
    write_json(out / "tune_best.json", best_doc)
    return best_doc


# ---------------------------------------------------------------------------
# split / vectorize
# ---------------------------------------------------------------------------

def run_split(corpus_path: str | Path, output_dir: str | Path,
              fractions: tuple[float, float, float] = (0.8, 0.0, 0.2),
              stratified: bool = True, seed: int = 0,
              format: str | None = None) -> dict:
    """Write train/meta_train/validation corpus files plus a summary."""
    corpus = load_corpus(corpus_path, format=format)
    split = split_corpus(corpus, fractions, stratified, seed)
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    ext = Path(corpus_path).suffix or ".tsv"
    summary = {"schema_version": SCHEMA_VERSION, "seed": seed,
               "stratified": stratified,
               "fractions": list(fractions), "sizes": {}, "class_counts": {}}
    for name, records in split.parts.items():
        if records or name != "meta_train":
            save_corpus(out / f"{name}{ext}", records)
        summary["sizes"][name] = len(records)
        summary["class_counts"][name] = {
            "positive": sum(1 for r in records if r.label == 1),
            "negative": sum(1 for r in records if r.label == 0)}
    write_json(out / "split.json", summary)
    return summary


def run_vectorize(config: PipelineConfig, corpus_path: str | Path,
                  output_path: str | Path) -> Path:
    """Export raw document vectors as TSV (id plus components), e.g. as
    input for external projection or plotting tools."""
    config.validate()
    corpus = load_corpus(corpus_path)
    features = build_feature_space(config)
    if config.family in ("bow", "tfidf"):
        features.fit(corpus)
    X = features.matrix(config.family, corpus)
    if hasattr(X, "toarray"):
        X = X.toarray()
    rows = [(rec.id,) + tuple(float(v) for v in row)
            for rec, row in zip(corpus, X)]
    header = ("id",) + tuple(f"v{i}" for i in range(X.shape[1]))
    output_path = Path(output_path)
    write_tsv(output_path, header, rows)
    return output_path
