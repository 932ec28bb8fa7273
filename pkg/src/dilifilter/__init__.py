"""Filter drug-induced liver injury (DILI) literature from titles and
abstracts: preprocessing, four vectorization families, weighted logistic
regression, a random-forest baseline, stacked ensembling, evaluation,
tuning, and bootstrap interpretation."""

__version__ = "0.1.0"

from .corpus import CorpusSplit, DocumentRecord, load_corpus, save_corpus, split_corpus
from .embeddings import (EmbeddingTable, average_embedding, embed_documents,
                         load_document_vectors, load_embedding_table)
from .ensemble import (BaseLearnerSpec, EnsembleModel, default_specs,
                       enumerate_specs, fit_ensemble, predict_proba_ensemble)
from .errors import ConfigError, DataError, DiliFilterError, NumericError
from .features import FeatureSpace
from .forest import FittedForest, RfConfig, fit_rf, predict_proba_rf
from .interpret import (CoefficientSummary, bootstrap_coefficients,
                        meta_contributions, top_terms)
from .linear import (FittedLinearModel, LrConfig, fit_lr, loss_and_gradient,
                     predict, predict_proba)
from .metrics import (ConfusionMatrix, EvalReport, auprc, auroc, confusion,
                      error_overlap, evaluate_scores, point_metrics,
                      pr_points, roc_points)
from .textprep import PrepConfig, preprocess, stem
from .tuning import GridSpec, cross_validate, grid_search
from .vectorize import (SparseVector, Vocabulary, bow_vector, docs_to_matrix,
                        fit_vocabulary, tfidf_vector)
