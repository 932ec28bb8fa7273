"""The two embedding pathways: averaged word vectors from a pre-trained
table in word2vec text format, and precomputed per-document vectors from
a TSV sidecar (the route used when an external sentence encoder produced
the vectors offline).
"""

import tempfile
from pathlib import Path

import numpy as np

from dilifilter import (average_embedding, load_document_vectors,
                        load_embedding_table)

workdir = Path(tempfile.mkdtemp())

# --- word2vec text format: header "count dimension", one term per line
table_path = workdir / "tiny.w2v.txt"
table_path.write_text(
    "4 3\n"
    "liver 1.0 0.0 0.0\n"
    "drug 0.0 1.0 0.0\n"
    "injury 0.0 0.0 1.0\n"
    "trial 0.5 0.5 0.0\n",
    encoding="utf-8")
table = load_embedding_table(table_path, name="tiny")
print(f"loaded table {table.name!r}: {len(table)} terms x {table.dimension} dims")

doc = ["liver", "liver", "drug", "unseen"]
vec = average_embedding(doc, table)
print(f"\naverage embedding of {doc}:")
print(" ", np.round(vec, 4), "(multiplicity counts; 'unseen' skipped)")

print("document with no known token -> zero vector:",
      average_embedding(["kidney"], table))

# --- sidecar: id column then a fixed number of components
sidecar_path = workdir / "doc_vectors.tsv"
sidecar_path.write_text(
    "doc-1\t0.1\t0.9\t0.0\t0.3\n"
    "doc-2\t0.7\t0.2\t0.5\t0.1\n",
    encoding="utf-8")
vectors = load_document_vectors(sidecar_path)
print(f"\nsidecar: {len(vectors)} documents, "
      f"dimension {next(iter(vectors.values())).size}")
for doc_id, v in vectors.items():
    print(f"  {doc_id}: {v}")
