"""Config-driven orchestration of the three experiment scenarios."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .classifier import TrainConfig
from .corpus import Corpus, corpus_stats, load_corpus
from .evaluation import (
    EvaluationError,
    EvaluationReport,
    FoldPlan,
    cross_validate,
    holdout_evaluate,
    score_external_predictions,
    stratified_kfold,
)
from .features import DenseVectorTable, load_dense_vectors
from .levels import CEFRLevel, Dimension, Language, DIMENSIONS
from .pipelines import DENSE_DIMS, FEATURE_SETS, pipeline_factory

log = logging.getLogger(__name__)

SCENARIOS = ("monolingual", "multilingual", "crosslingual")

CSV_HEADER = "scenario,languages,dimension,feature_set,classifier,fold,weighted_f1"

PREDICTIONS_HEADER = ("docid", "dimension", "fold", "predicted")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    scenario: str
    corpus_dir: Path
    out_dir: Path
    language: Language | None = None  # monolingual
    test_language: Language | None = None  # crosslingual
    dimensions: list[Dimension] = field(default_factory=lambda: list(DIMENSIONS))
    feature_sets: list[str] = field(default_factory=lambda: ["doclen"])
    k: int = 5
    seed: int = 0
    vectors: dict[str, Path] = field(default_factory=dict)
    predictions: dict[Dimension, Path] = field(default_factory=dict)
    classifiers: list[str] = field(default_factory=lambda: ["logreg"])
    train: TrainConfig = field(default_factory=TrainConfig)

    @classmethod
    def from_json(cls, path: str | Path, seed: int | None = None, out_dir: str | Path | None = None):
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls.from_dict(raw, seed=seed, out_dir=out_dir)

    @classmethod
    def from_dict(cls, raw: dict, seed: int | None = None, out_dir: str | Path | None = None):
        scenario = raw.get("scenario")
        if scenario not in SCENARIOS:
            raise ConfigError(f"scenario must be one of {SCENARIOS}, got {scenario!r}")
        dims_raw = raw.get("dimensions", "all")
        if dims_raw == "all":
            dimensions = list(DIMENSIONS)
        else:
            dimensions = [Dimension.parse(d) for d in dims_raw]
        feature_sets = raw.get("feature_sets", ["doclen"])
        for fs in feature_sets:
            if fs not in FEATURE_SETS:
                raise ConfigError(f"unknown feature set: {fs!r}")
        cfg = cls(
            scenario=scenario,
            corpus_dir=Path(raw["corpus_dir"]),
            out_dir=Path(out_dir if out_dir is not None else raw.get("out_dir", "out")),
            language=Language.parse(raw["language"]) if raw.get("language") else None,
            test_language=Language.parse(raw["test_language"]) if raw.get("test_language") else None,
            dimensions=dimensions,
            feature_sets=list(feature_sets),
            k=int(raw.get("k", 5)),
            seed=int(seed if seed is not None else raw.get("seed", 0)),
            vectors={k_: Path(v) for k_, v in raw.get("vectors", {}).items()},
            predictions={Dimension.parse(k_): Path(v) for k_, v in raw.get("predictions", {}).items()},
            classifiers=list(raw.get("classifiers", ["logreg"])),
        )
        cfg.validate()
        return cfg

    def validate(self):
        if self.scenario == "monolingual" and self.language is None:
            raise ConfigError("monolingual scenario requires 'language'")
        if self.scenario == "crosslingual":
            if self.test_language not in (Language.it, Language.cz):
                raise ConfigError("crosslingual scenario requires test_language of 'it' or 'cz'")
            if "word_ngrams" in self.feature_sets:
                raise ConfigError("word_ngrams are not usable in the crosslingual scenario")
        for fs in self.feature_sets:
            if fs in DENSE_DIMS and fs not in self.vectors:
                raise ConfigError(f"feature set {fs!r} requires a vectors path in the config")

    def scenario_id(self) -> str:
        if self.scenario == "monolingual":
            return f"monolingual_{self.language}"
        if self.scenario == "crosslingual":
            return f"crosslingual_de_to_{self.test_language}"
        return "multilingual"

    def languages_field(self) -> str:
        if self.scenario == "monolingual":
            return str(self.language)
        if self.scenario == "crosslingual":
            return f"de->{self.test_language}"
        return "de+it+cz"

    def effective_dimensions(self) -> list[Dimension]:
        """Drop sociolinguistic appropriateness for Czech-only experiments."""
        czech_only = (self.scenario == "monolingual" and self.language == Language.cz) or (
            self.scenario == "crosslingual" and self.test_language == Language.cz
        )
        if czech_only and Dimension.sociolinguistic_appropriateness in self.dimensions:
            log.info("dropping sociolinguistic_appropriateness: not annotated for Czech")
            return [d for d in self.dimensions if d != Dimension.sociolinguistic_appropriateness]
        return list(self.dimensions)


def _load_tables(config: ExperimentConfig) -> dict[str, DenseVectorTable]:
    tables = {}
    for fs, dim in DENSE_DIMS.items():
        if fs in config.feature_sets:
            path = config.vectors[fs]
            if not path.is_file():
                raise ConfigError(f"dense vectors file not found: {path}")
            tables[fs] = load_dense_vectors(path.read_text(encoding="utf-8"), dim)
    return tables


def _experiment_docs(corpus: Corpus, config: ExperimentConfig, dimension: Dimension):
    """Documents entering a cell: scenario language scoping plus label presence."""
    docs = corpus.for_dimension(dimension)
    if config.scenario == "monolingual":
        docs = [d for d in docs if d.language == config.language]
    return docs


def _fold_plan(docs, dimension, config) -> FoldPlan:
    return stratified_kfold(
        {d.id: d.labels[dimension] for d in docs}, k=config.k, seed=config.seed
    )


def manifest_dict(scenario_id: str, dimension: Dimension, seed: int, k: int, folds) -> dict:
    return {
        "scenario": scenario_id,
        "dimension": str(dimension),
        "seed": seed,
        "k": k,
        "folds": [
            {"fold": i, "train": sorted(train), "test": sorted(test)}
            for i, (train, test) in enumerate(folds)
        ],
    }


def _write_manifest(config: ExperimentConfig, dimension: Dimension, folds) -> Path:
    path = config.out_dir / f"folds_{config.scenario_id()}_{dimension}.json"
    payload = manifest_dict(config.scenario_id(), dimension, config.seed, len(folds), folds)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def read_predictions(text: str) -> list[tuple[str, Dimension, int, CEFRLevel]]:
    """Parse the external predictions TSV."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or tuple(lines[0].split("\t")) != PREDICTIONS_HEADER:
        raise EvaluationError("predictions file must start with the docid/dimension/fold/predicted header")
    rows = []
    for line in lines[1:]:
        doc_id, dim, fold, label = line.split("\t")
        rows.append((doc_id, Dimension.parse(dim), int(fold), CEFRLevel.parse(label)))
    return rows


def _csv_rows(config: ExperimentConfig, report: EvaluationReport) -> list[str]:
    rows = []
    base = (
        f"{config.scenario_id()},{config.languages_field()},"
        f"{report.dimension},{report.feature_set},{report.classifier}"
    )
    for i, score in enumerate(report.fold_scores):
        rows.append(f"{base},{i},{score:.6f}")
    rows.append(f"{base},mean,{report.mean:.6f}")
    return rows


def _report_json(report: EvaluationReport) -> dict:
    out = {
        "dimension": str(report.dimension),
        "feature_set": report.feature_set,
        "classifier": report.classifier,
        "fold_scores": [round(s, 10) for s in report.fold_scores],
        "mean_weighted_f1": round(report.mean, 10),
        "stdev_weighted_f1": round(report.stdev, 10),
        "confusion": report.pooled.to_dict(),
        "degenerate_folds": report.degenerate_folds,
    }
    if report.per_language:
        out["per_language"] = {str(k): round(v, 10) for k, v in report.per_language.items()}
    return out


def run(config: ExperimentConfig) -> list[EvaluationReport]:
    """Execute every (dimension x feature set x classifier) cell and write reports."""
    corpus = load_corpus(config.corpus_dir)
    tables = _load_tables(config)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    reports: list[EvaluationReport] = []
    csv_lines = [CSV_HEADER]
    json_cells = []
    for dimension in config.effective_dimensions():
        docs = _experiment_docs(corpus, config, dimension)
        if config.scenario == "crosslingual":
            train_docs = [d for d in docs if d.language == Language.de]
            test_docs = [d for d in docs if d.language == config.test_language]
            _write_manifest(
                config,
                dimension,
                [([d.id for d in train_docs], [d.id for d in test_docs])],
            )
            for feature_set in config.feature_sets:
                if feature_set == "external_predictions":
                    report = _score_cell(config, dimension, docs, plan=None)
                    reports.append(report)
                    csv_lines.extend(_csv_rows(config, report))
                    json_cells.append(_report_json(report))
                    continue
                for clf in config.classifiers:
                    report = holdout_evaluate(
                        train_docs,
                        test_docs,
                        dimension,
                        pipeline_factory(feature_set, tables),
                        cfg=config.train,
                        scenario=config.scenario_id(),
                        feature_set=feature_set,
                        classifier=clf,
                    )
                    reports.append(report)
                    csv_lines.extend(_csv_rows(config, report))
                    json_cells.append(_report_json(report))
            continue
        plan = _fold_plan(docs, dimension, config)
        _write_manifest(
            config,
            dimension,
            [(plan.train_ids(i), plan.test_ids(i)) for i in range(plan.k)],
        )
        for feature_set in config.feature_sets:
            if feature_set == "external_predictions":
                report = _score_cell(config, dimension, docs, plan)
                reports.append(report)
                csv_lines.extend(_csv_rows(config, report))
                json_cells.append(_report_json(report))
                continue
            for clf in config.classifiers:
                report = cross_validate(
                    docs,
                    dimension,
                    pipeline_factory(feature_set, tables),
                    cfg=config.train,
                    k=config.k,
                    seed=config.seed,
                    scenario=config.scenario_id(),
                    feature_set=feature_set,
                    classifier=clf,
                    per_language=config.scenario == "multilingual",
                    plan=plan,
                )
                reports.append(report)
                csv_lines.extend(_csv_rows(config, report))
                json_cells.append(_report_json(report))
    (config.out_dir / "report.csv").write_text("\n".join(csv_lines) + "\n", encoding="utf-8")
    payload = {"scenario": config.scenario_id(), "seed": config.seed, "cells": json_cells}
    (config.out_dir / "report.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return reports


def _score_cell(config, dimension, docs, plan) -> EvaluationReport:
    path = config.predictions.get(dimension)
    if path is None:
        raise ConfigError(f"no predictions file configured for dimension {dimension}")
    if not path.is_file():
        raise ConfigError(f"predictions file not found: {path}")
    rows = [
        (doc_id, fold, label)
        for doc_id, dim, fold, label in read_predictions(path.read_text(encoding="utf-8"))
        if dim == dimension
    ]
    gold = {d.id: d.labels[dimension] for d in docs}
    languages = {d.id: d.language for d in docs} if config.scenario == "multilingual" else None
    return score_external_predictions(
        rows,
        gold,
        plan=plan,
        scenario=config.scenario_id(),
        dimension=dimension,
        languages=languages,
    )


def export_folds(config: ExperimentConfig) -> list[Path]:
    """Write fold manifests without training anything."""
    corpus = load_corpus(config.corpus_dir)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for dimension in config.effective_dimensions():
        docs = _experiment_docs(corpus, config, dimension)
        if config.scenario == "crosslingual":
            train = [d.id for d in docs if d.language == Language.de]
            test = [d.id for d in docs if d.language == config.test_language]
            paths.append(_write_manifest(config, dimension, [(train, test)]))
        else:
            plan = _fold_plan(docs, dimension, config)
            paths.append(
                _write_manifest(
                    config, dimension, [(plan.train_ids(i), plan.test_ids(i)) for i in range(plan.k)]
                )
            )
    return paths


def stats(corpus_dir: str | Path, out=print) -> int:
    """Print corpus statistics; nonzero exit when the corpus is empty."""
    corpus = load_corpus(corpus_dir)
    summary = corpus_stats(corpus.documents)
    out(f"total documents: {summary.total}")
    for lang in Language:
        out(f"  {lang}: {summary.per_language[lang]}")
    out("per-dimension usable documents:")
    for dim in DIMENSIONS:
        hist = summary.histograms[dim]
        if dim == Dimension.sociolinguistic_appropriateness:
            czech = sum(1 for d in corpus.documents if d.language == Language.cz)
            if czech:
                out(f"  {dim}: {summary.usable[dim]} (excluded for Czech)")
                continue
        levels = " ".join(f"{level}:{hist[level]}" for level in sorted(hist))
        out(f"  {dim}: {summary.usable[dim]} [{levels}]")
    return 0 if summary.total else 1
