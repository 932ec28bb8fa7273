"""Command-line interface.

Subcommands: train, predict, evaluate, interpret, tune, split, vectorize.
Exit codes: 0 success, 1 usage/configuration error, 2 data error,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, DataError, NumericError
from .pipeline import (load_pipeline_config, run_evaluate, run_interpret,
                       run_predict, run_split, run_train, run_tune,
                       run_vectorize)

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract here is exit code 1
    def error(self, message):
        raise ConfigError(message)


def _fractions(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected train,meta,validation")
    return tuple(float(p) for p in parts)


def _table_override(text: str) -> tuple[str, str]:
    if "=" not in text:
        raise argparse.ArgumentTypeError("expected FAMILY=PATH")
    family, path = text.split("=", 1)
    return family, path


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dilifilter",
                     description="Filter publications for drug-induced liver "
                                 "injury relevance from titles and abstracts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="split, fit, and evaluate")
    p.add_argument("--config", required=True, help="pipeline config JSON")
    p.add_argument("--corpus", required=True, help="labelled corpus file")
    p.add_argument("--output-dir", help="override config output_dir")
    p.add_argument("--seed", type=int, help="override config seed")

    p = sub.add_parser("predict", help="score a corpus with a saved model")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--output", required=True, help="predictions TSV path")
    p.add_argument("--threshold", type=float,
                   help="label threshold override (probabilities unchanged)")
    p.add_argument("--embedding-table", action="append", type=_table_override,
                   default=[], metavar="FAMILY=PATH",
                   help="override a recorded embedding-table path")
    p.add_argument("--document-vectors", help="override the sidecar path")

    p = sub.add_parser("evaluate", help="score predictions against truth")
    p.add_argument("--predictions", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--output-dir", required=True)

    p = sub.add_parser("interpret",
                       help="bootstrap term importances / meta contributions")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--output-dir", required=True)
    p.add_argument("--bootstrap", type=int, help="bootstrap count B")
    p.add_argument("--top-k", type=int, help="terms per direction")

    p = sub.add_parser("tune", help="cross-validated grid search")
    p.add_argument("--config", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--output-dir")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("split", help="write train/meta/validation files")
    p.add_argument("--corpus", required=True)
    p.add_argument("--output-dir", required=True)
    p.add_argument("--fractions", type=_fractions, default=(0.8, 0.0, 0.2),
                   metavar="T,M,V")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-stratified", action="store_true")
    p.add_argument("--format", choices=("tsv", "jsonl"))

    p = sub.add_parser("vectorize",
                       help="export raw document vectors as TSV")
    p.add_argument("--config", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--output", required=True)
    return parser


def _dispatch(args) -> int:
    if args.command == "train":
        config = load_pipeline_config(args.config,
                                      {"output_dir": args.output_dir,
                                       "seed": args.seed})
        result = run_train(config, args.corpus)
        report = result.report
        print(f"model: {result.model_path}")
        print(f"report: {result.report_path}")
        print(f"accuracy={report.accuracy:.4f} auroc={report.auroc:.4f} "
              f"auprc={report.auprc:.4f} f1={report.f1:.4f} "
              f"precision={report.precision:.4f} recall={report.recall:.4f}")
    elif args.command == "predict":
        path = run_predict(args.model, args.corpus, args.output,
                           threshold=args.threshold,
                           table_overrides=dict(args.embedding_table),
                           document_vectors=args.document_vectors)
        print(f"predictions: {path}")
    elif args.command == "evaluate":
        report = run_evaluate(args.predictions, args.truth, args.output_dir)
        print(f"accuracy={report.accuracy:.4f} auroc={report.auroc:.4f} "
              f"auprc={report.auprc:.4f} f1={report.f1:.4f} "
              f"precision={report.precision:.4f} recall={report.recall:.4f}")
    elif args.command == "interpret":
        written = run_interpret(args.model, args.corpus, args.output_dir,
                                B=args.bootstrap, k=args.top_k)
        for name, path in written.items():
            print(f"{name}: {path}")
    elif args.command == "tune":
        config = load_pipeline_config(args.config,
                                      {"output_dir": args.output_dir,
                                       "seed": args.seed})
        best = run_tune(config, args.corpus, args.output_dir)
        print(f"best: {best['best_params']} score={best['best_score']:.4f}")
    elif args.command == "split":
        summary = run_split(args.corpus, args.output_dir,
                            fractions=args.fractions,
                            stratified=not args.no_stratified,
                            seed=args.seed, format=args.format)
        print(f"sizes: {summary['sizes']}")
    elif args.command == "vectorize":
        config = load_pipeline_config(args.config)
        path = run_vectorize(config, args.corpus, args.output)
        print(f"vectors: {path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
