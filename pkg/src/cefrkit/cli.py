"""Command-line entry point: stats, run, export-folds, score-predictions."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .corpus import CorpusError
from .evaluation import EvaluationError
from .runner import ConfigError, ExperimentConfig, export_folds, run, stats
from . import runner


def _add_common(parser):
    parser.add_argument("--config", required=True, help="experiment config JSON")
    parser.add_argument("--out", help="output directory (overrides config)")
    parser.add_argument("--seed", type=int, help="random seed (overrides config)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cefrkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="print corpus statistics")
    _add_common(p_stats)

    p_run = sub.add_parser("run", help="run the configured experiments")
    _add_common(p_run)

    p_folds = sub.add_parser("export-folds", help="write fold manifests only")
    _add_common(p_folds)

    p_score = sub.add_parser("score-predictions", help="score external predictions")
    _add_common(p_score)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        config = ExperimentConfig.from_json(args.config, seed=args.seed, out_dir=args.out)
        if args.command == "stats":
            return stats(config.corpus_dir)
        if args.command == "run":
            run(config)
            print(f"reports written to {config.out_dir}")
            return 0
        if args.command == "export-folds":
            paths = export_folds(config)
            for path in paths:
                print(path)
            return 0
        if args.command == "score-predictions":
            return _score_predictions(config)
    except (ConfigError, CorpusError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _score_predictions(config: ExperimentConfig) -> int:
    from .corpus import load_corpus

    corpus = load_corpus(config.corpus_dir)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    csv_lines = [runner.CSV_HEADER]
    cells = []
    for dimension in config.effective_dimensions():
        if dimension not in config.predictions:
            continue
        docs = runner._experiment_docs(corpus, config, dimension)
        plan = None
        if config.scenario != "crosslingual":
            plan = runner._fold_plan(docs, dimension, config)
        report = runner._score_cell(config, dimension, docs, plan)
        csv_lines.extend(runner._csv_rows(config, report))
        cells.append(runner._report_json(report))
        print(f"{dimension}: mean weighted F1 = {report.mean:.4f}")
    out_path = config.out_dir / "external_report.csv"
    out_path.write_text("\n".join(csv_lines) + "\n", encoding="utf-8")
    (config.out_dir / "external_report.json").write_text(
        json.dumps({"scenario": config.scenario_id(), "cells": cells}, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
