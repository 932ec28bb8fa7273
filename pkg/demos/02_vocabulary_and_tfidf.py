"""Vocabulary fitting and BOW / TF-IDF document vectors on a tiny corpus.

TF-IDF here is raw count x smoothed idf, ln((1+N)/(1+df)) + 1, then each
document is scaled to unit Euclidean norm.
"""

import math

from dilifilter import bow_vector, fit_vocabulary, tfidf_vector

docs = [["liver", "injury"],
        ["liver", "drug"],
        ["drug", "trial"]]
vocab = fit_vocabulary(docs)

print(f"corpus of {vocab.corpus_size} documents, {len(vocab)} distinct terms")
print("term -> index / document frequency / idf:")
for term, index in sorted(vocab.term_to_index.items()):
    print(f"  {term:8s} index={index} df={vocab.document_frequency[term]} "
          f"idf={vocab.idf[index]:.6f}")

doc = ["liver", "liver", "drug"]
print(f"\nbag of words for {doc}:")
print(" ", {vocab.terms[i]: v for i, v in bow_vector(doc, vocab).entries.items()})

doc = ["liver", "injury"]
vec = tfidf_vector(doc, vocab)
print(f"\ntf-idf for {doc} (unit norm):")
for i, v in sorted(vec.entries.items()):
    print(f"  {vocab.terms[i]:8s} {v:.6f}")
norm = math.sqrt(sum(v * v for v in vec.entries.values()))
print(f"  norm = {norm!r}")
print("\nthe rarer term (injury, df=1) outweighs the common one (liver, df=2):")
print("  rare-term emphasis is exactly what the idf factor buys")

# out-of-vocabulary terms are dropped silently at prediction time
print("\nvector for an unseen document ['kidney', 'stone']:",
      tfidf_vector(["kidney", "stone"], vocab).entries)
