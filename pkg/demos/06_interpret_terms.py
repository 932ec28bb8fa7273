"""Model interpretation: bootstrap the training data, refit, and rank the
terms that drive positive and negative predictions; then the normalized
meta-learner coefficients showing what each base learner contributes.
"""

import warnings

import numpy as np

from dilifilter import (FeatureSpace, LrConfig, PrepConfig,
                        bootstrap_coefficients, split_corpus, top_terms)
from dilifilter.ensemble import (base_probabilities, default_specs,
                                 fit_ensemble)
from dilifilter.interpret import meta_contributions
from dilifilter.synthetic import make_benchmark

warnings.filterwarnings("ignore", category=RuntimeWarning)

bench = make_benchmark(n_docs=800, seed=11)
split = split_corpus(bench.records, (0.6, 0.2, 0.2), stratified=True, seed=11)
features = FeatureSpace(prep=PrepConfig(stemming=True))
features.fit(split.train)
X = features.matrix("tfidf", split.train)
y = np.array([r.label for r in split.train])

# B=50 keeps the demo fast; the package default is 1000
B = 50
summaries = bootstrap_coefficients(
    X, y, LrConfig(penalty_strength=0.1, max_iterations=800), B=B, seed=11,
    feature_names=list(features.vocabulary.terms))
print(f"bootstrapped {B} refits over {X.shape[0]} documents, "
      f"{len(summaries)} terms\n")

pos_topic = set(bench.topic_terms["pos"])
neg_topic = set(bench.topic_terms["neg"])
for direction in ("positive", "negative"):
    print(f"top 10 {direction}-prediction terms (mean coefficient):")
    for term, coef in top_terms(summaries, k=10, direction=direction):
        origin = ("pos-topic" if term in pos_topic else
                  "neg-topic" if term in neg_topic else "shared")
        print(f"  {term:16s} {coef:+.4f}   [{origin}]")
    print()

# meta-learner contributions: refit the meta on bootstrap resamples of its
# training features and normalize the mean coefficients
efeatures = FeatureSpace(prep=PrepConfig(stemming=True),
                         embedding_tables=bench.tables,
                         document_vectors=bench.document_vectors)
model = fit_ensemble(split, default_specs(), features=efeatures, seed=11)
meta_X = base_probabilities(model, split.meta_train, efeatures)
y_meta = np.array([r.label for r in split.meta_train])
result = meta_contributions(model, meta_X, y_meta, B=B, seed=11)
print("normalized base-learner contributions to the meta decision:")
for name, value in zip(result.learners, result.contributions):
    bar = "#" * max(0, int(round(40 * value)))
    print(f"  {name:22s} {value:6.3f} {bar}")
if result.sign_flagged:
    print("  (a negative mean coefficient forced absolute-value scaling)")
