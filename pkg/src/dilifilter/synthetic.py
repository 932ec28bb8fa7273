"""Seeded synthetic benchmark: a two-topic corpus with partially shared
vocabularies, plus matching synthetic embedding tables and a precomputed
document-vector sidecar.

Used by the acceptance suite and the demo scripts so the full pipeline
can run end to end without any external data. Topic terms are generated
stem-stable (stemming maps each term to itself) and outside the stopword
list, so preprocessing is an exact round trip on this corpus.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import DocumentRecord, save_corpus
from .embeddings import EmbeddingTable
from .porter import stem
from .textprep import stopword_set

__all__ = ["SyntheticBenchmark", "make_benchmark", "synthetic_corpus",
           "write_embedding_table", "write_benchmark_files"]

_SYLLABLES = ("ba", "co", "da", "fe", "gi", "ho", "ju", "ka", "lo", "mi",
              "nu", "po", "qua", "ri", "so", "tu", "ve", "wi",
              "xa", "zo", "lan", "mer", "nor", "pil", "rac", "sil", "tor",
              "vun", "wex", "yat")

_FILLERS = ("the", "of", "in", "and", "with", "for", "was", "were", "this")


def _make_terms(rng: np.random.Generator, count: int) -> list[str]:
    """Distinct pseudo-words, 4+ letters, stem-stable, not stopwords."""
    stops = stopword_set("english-v1")
    terms: list[str] = []
    seen: set[str] = set()
    while len(terms) < count:
        n_syll = int(rng.integers(2, 5))
        word = "".join(rng.choice(_SYLLABLES) for _ in range(n_syll))
        if (len(word) < 4 or word in seen or word in stops
                or stem(word) != word):
            continue
        seen.add(word)
        terms.append(word)
    return terms


def _zipf_weights(n: int) -> np.ndarray:
    # mild skew; keeps even the rarest in-topic term more frequent inside
    # its own topic than cross-topic noise can make it outside
    w = 1.0 / np.arange(1, n + 1) ** 0.5
    return w / w.sum()


@dataclass
class SyntheticBenchmark:
    """Corpus plus every resource the four vectorizer families need."""

    records: list[DocumentRecord]
    tables: dict[str, EmbeddingTable]
    document_vectors: dict[str, np.ndarray]
    topic_terms: dict[str, list[str]]   # "pos", "neg", "shared"


def synthetic_corpus(n_docs: int = 2000, seed: int = 11,
                     shared_fraction: float = 0.3,
                     topic_vocab_size: int = 200,
                     noise: float = 0.44,
                     positive_purity: float = 0.5) -> SyntheticBenchmark:
    """Generate a balanced two-topic corpus.

    Each topic vocabulary holds topic_vocab_size terms of which
    shared_fraction are common to both topics. Tokens come from the own
    topic's mild Zipf distribution, except that with probability `noise`
    a token is drawn uniformly from the other topic's vocabulary; `noise`
    therefore controls difficulty. Positive documents use
    noise * positive_purity instead: they are topically focused while
    negatives are diffuse, as in real literature triage where the
    negative class spans every other research field.
    """
    rng = np.random.default_rng(seed)
    n_shared = round(shared_fraction * topic_vocab_size)
    n_excl = topic_vocab_size - n_shared
    all_terms = _make_terms(rng, 2 * n_excl + n_shared)
    pos_terms = all_terms[:n_excl]
    neg_terms = all_terms[n_excl:2 * n_excl]
    shared_terms = all_terms[2 * n_excl:]
    # random term/frequency-rank pairing per topic
    vocab = {}
    for name, terms in (("pos", shared_terms + pos_terms),
                        ("neg", shared_terms + neg_terms)):
        vocab[name] = [terms[i] for i in rng.permutation(len(terms))]
    weights = _zipf_weights(topic_vocab_size)

    labels = np.zeros(n_docs, dtype=np.int64)
    labels[: n_docs // 2] = 1
    labels = labels[rng.permutation(n_docs)]

    records = []
    for i in range(n_docs):
        positive = labels[i] == 1
        own = vocab["pos"] if positive else vocab["neg"]
        other = vocab["neg"] if positive else vocab["pos"]
        doc_noise = noise * positive_purity if positive else noise
        n_title = int(rng.integers(3, 8))
        n_abstract = int(rng.integers(20, 61))

        def draw(count):
            from_other = rng.random(count) < doc_noise
            own_idx = rng.choice(topic_vocab_size, size=count, p=weights)
            other_idx = rng.integers(len(other), size=count)
            with_filler = rng.random(count) < 0.2
            filler_idx = rng.integers(len(_FILLERS), size=count)
            words = []
            for j in range(count):
                words.append(other[other_idx[j]] if from_other[j]
                             else own[own_idx[j]])
                if with_filler[j]:
                    words.append(_FILLERS[filler_idx[j]])
            return words

        title = " ".join(draw(n_title)).capitalize()
        abstract = " ".join(draw(n_abstract)).capitalize() + "."
        records.append(DocumentRecord(id=f"syn-{i:05d}",
                                      label=int(labels[i]),
                                      title=title, abstract=abstract))
    return SyntheticBenchmark(records=records, tables={}, document_vectors={},
                              topic_terms={"pos": pos_terms, "neg": neg_terms,
                                           "shared": shared_terms})


def _term_class_signs(bench: SyntheticBenchmark) -> dict[str, float]:
    signs = {t: 1.0 for t in bench.topic_terms["pos"]}
    signs.update({t: -1.0 for t in bench.topic_terms["neg"]})
    signs.update({t: 0.0 for t in bench.topic_terms["shared"]})
    return signs


def _synthetic_table(bench: SyntheticBenchmark, dimension: int, seed: int,
                     signal: float, name: str) -> EmbeddingTable:
    """Random term vectors carrying a topic-aligned component, mimicking
    a pre-trained table that separates the two topics imperfectly."""
    rng = np.random.default_rng(seed)
    direction = rng.normal(size=dimension)
    direction /= np.linalg.norm(direction)
    vectors = {}
    for term, sign in _term_class_signs(bench).items():
        vectors[term] = rng.normal(size=dimension) + signal * sign * direction
    return EmbeddingTable(dimension=dimension, vectors=vectors, name=name)


def make_benchmark(n_docs: int = 2000, seed: int = 11,
                   shared_fraction: float = 0.3,
                   topic_vocab_size: int = 200,
                   noise: float = 0.44,
                   positive_purity: float = 0.5) -> SyntheticBenchmark:
    """Corpus plus two embedding tables and a document-vector sidecar."""
    bench = synthetic_corpus(n_docs=n_docs, seed=seed,
                             shared_fraction=shared_fraction,
                             topic_vocab_size=topic_vocab_size, noise=noise,
                             positive_purity=positive_purity)
    bench.tables = {
        "w2v_table_1": _synthetic_table(bench, dimension=24, seed=seed + 101,
                                        signal=2.0, name="syn-w2v-1"),
        "w2v_table_2": _synthetic_table(bench, dimension=20, seed=seed + 202,
                                        signal=1.6, name="syn-w2v-2"),
    }
    # sidecar vectors derived from the text through a third "encoder" table
    encoder = _synthetic_table(bench, dimension=32, seed=seed + 303,
                               signal=2.4, name="syn-encoder")
    rng = np.random.default_rng(seed + 404)
    stops = stopword_set("english-v1")
    for rec in bench.records:
        tokens = [t for t in rec.text.lower().replace(".", " ").split()
                  if t not in stops]
        vecs = [encoder.vectors[t] for t in tokens if t in encoder.vectors]
        mean = np.mean(vecs, axis=0) if vecs else np.zeros(32)
        bench.document_vectors[rec.id] = mean + 0.15 * rng.normal(size=32)
    return bench


def write_embedding_table(table: EmbeddingTable, path: str | Path) -> Path:
    """Write a table in the textual word2vec interchange format."""
    path = Path(path)
    lines = [f"{len(table.vectors)} {table.dimension}"]
    for term, vec in table.vectors.items():
        lines.append(term + " " + " ".join(repr(float(v)) for v in vec))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_benchmark_files(bench: SyntheticBenchmark,
                          directory: str | Path) -> dict[str, Path]:
    """Materialize the benchmark as the file set the CLI consumes."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {"corpus": directory / "corpus.tsv"}
    save_corpus(paths["corpus"], bench.records)
    for family, table in bench.tables.items():
        paths[family] = write_embedding_table(table, directory / f"{family}.txt")
    sidecar = directory / "document_vectors.tsv"
    lines = [doc_id + "\t" + "\t".join(repr(float(v)) for v in vec)
             for doc_id, vec in bench.document_vectors.items()]
    sidecar.write_text("\n".join(lines) + "\n", encoding="utf-8")
    paths["document_vectors"] = sidecar
    return paths
