"""Stacked ensemble walkthrough: 12 base learners (4 vectorizer families x
3 class weights) trained on the 60% slice, a logistic meta-learner on the
20% meta slice, evaluated on the untouched 20% validation slice.

Shows the motivating effect: the ensemble keeps the strongest model's
accuracy while cutting false negatives, and the per-model error overlap
shows the diversity the meta-learner exploits.
"""

import warnings

import numpy as np

from dilifilter import (FeatureSpace, PrepConfig, error_overlap,
                        evaluate_scores, split_corpus)
from dilifilter.ensemble import (base_probabilities, default_specs,
                                 fit_ensemble, predict_proba_ensemble)
from dilifilter.synthetic import make_benchmark

warnings.filterwarnings("ignore", category=RuntimeWarning)

bench = make_benchmark(n_docs=2000, seed=11)
split = split_corpus(bench.records, (0.6, 0.2, 0.2), stratified=True, seed=11)
print(f"slices: {len(split.train)} train / {len(split.meta_train)} meta / "
      f"{len(split.validation)} validation")

features = FeatureSpace(prep=PrepConfig(stemming=True),
                        embedding_tables=bench.tables,
                        document_vectors=bench.document_vectors)
specs = default_specs()
print(f"bank: {len(specs)} learners = 4 vectorizers x 3 class weights")

model = fit_ensemble(split, specs, features=features, seed=11)

y_val = np.array([r.label for r in split.validation])
base_scores = base_probabilities(model, split.validation, features)
print("\nper-learner validation performance:")
print(f"  {'learner':22s} {'acc':>6s} {'fn':>4s} {'fp':>4s}")
errors = {}
for j, spec in enumerate(specs):
    r = evaluate_scores(y_val, base_scores[:, j], spec.lr_config.threshold)
    print(f"  {spec.name:22s} {r.accuracy:6.3f} {r.confusion.fn:4d} "
          f"{r.confusion.fp:4d}")
    pred = (base_scores[:, j] >= spec.lr_config.threshold).astype(int)
    ids = [rec.id for rec in split.validation]
    fp = {i for i, t, p in zip(ids, y_val, pred) if t == 0 and p == 1}
    fn = {i for i, t, p in zip(ids, y_val, pred) if t == 1 and p == 0}
    errors[spec.name] = (fp, fn)

ens_scores = predict_proba_ensemble(model, split.validation, features)
er = evaluate_scores(y_val, ens_scores, 0.5)
print(f"\n  {'ensemble':22s} {er.accuracy:6.3f} {er.confusion.fn:4d} "
      f"{er.confusion.fp:4d}")
print("\nthe ensemble matches the best accuracy with the fewest false "
      "negatives -")
print("exactly the trade wanted when missing a relevant paper is the "
      "costly mistake")

# Venn-style overlap of false negatives across the four unweighted learners
unweighted = {name: errs for name, errs in errors.items()
              if name.endswith("@1:1")}
overlap = error_overlap(unweighted)
print("\nfalse-negative overlap regions across the four 1:1 learners")
print("(non-zero regions; all four intersect where the hardest cases live):")
for region, count in sorted(overlap.fn_regions.items(),
                            key=lambda kv: (-len(kv[0]), kv[0])):
    if count:
        print(f"  {' & '.join(region)}: {count}")

print("\nmeta-learner weights by base learner (position-sensitive):")
for spec, weight in zip(model.specs, model.meta.weights):
    print(f"  {spec.name:22s} {weight:+.3f}")
