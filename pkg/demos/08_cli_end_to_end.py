"""Full command-line tour: materialize the synthetic benchmark as files,
then drive split, train (ensemble), predict, evaluate, and interpret via
the same entry point the installed `dilifilter` command uses.

Every artifact embeds the schema version, config fingerprint, and seeds;
rerunning with the same config yields byte-identical files.
"""

import json
import tempfile
import warnings
from pathlib import Path

from dilifilter.cli import main
from dilifilter.synthetic import make_benchmark, write_benchmark_files

warnings.filterwarnings("ignore", category=RuntimeWarning)

root = Path(tempfile.mkdtemp(prefix="dilifilter-demo-"))
bench = make_benchmark(n_docs=600, seed=11)
files = write_benchmark_files(bench, root / "data")
print(f"benchmark files under {root / 'data'}:")
for name, path in files.items():
    print(f"  {name}: {path.name}")

config = {
    "seed": 11,
    "output_dir": str(root / "run"),
    "prep": {"stemming": True, "stopword_list_version": "english-v1"},
    "split": {"train": 0.6, "meta": 0.2, "validation": 0.2,
              "stratified": True},
    "vectorizer": {
        "family": "tfidf",
        "embedding_tables": {"w2v_table_1": str(files["w2v_table_1"]),
                             "w2v_table_2": str(files["w2v_table_2"])},
        "document_vectors": str(files["document_vectors"])},
    "model": {"kind": "ensemble"},
    "bootstrap_b": 25,
    "top_k": 8,
}
config_path = root / "config.json"
config_path.write_text(json.dumps(config, indent=2), encoding="utf-8")


def run(*argv):
    print(f"\n$ dilifilter {' '.join(argv)}")
    code = main(list(argv))
    assert code == 0, f"exit code {code}"


run("split", "--corpus", str(files["corpus"]),
    "--output-dir", str(root / "split"), "--fractions", "0.6,0.2,0.2",
    "--seed", "11")

run("train", "--config", str(config_path), "--corpus", str(files["corpus"]))

run("predict", "--model", str(root / "run" / "model.json"),
    "--corpus", str(root / "split" / "validation.tsv"),
    "--output", str(root / "predictions.tsv"))

run("evaluate", "--predictions", str(root / "predictions.tsv"),
    "--truth", str(root / "split" / "validation.tsv"),
    "--output-dir", str(root / "eval"))

run("interpret", "--model", str(root / "run" / "model.json"),
    "--corpus", str(files["corpus"]),
    "--output-dir", str(root / "interp"))

run("vectorize", "--config", str(config_path),
    "--corpus", str(root / "split" / "validation.tsv"),
    "--output", str(root / "vectors.tsv"))

print(f"\nall artifacts under {root}")
for path in sorted(root.rglob("*")):
    if path.is_file():
        print(f"  {path.relative_to(root)}")
