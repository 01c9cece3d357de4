"""Stratified folds, weighted F1, confusion matrices, and the CV driver."""

from __future__ import annotations

import random
import statistics
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Protocol

import numpy as np

from .classifier import TrainConfig, majority_baseline, predict, predict_constant, train_logreg
from .corpus import Document
from .features import FeatureMatrix
from .levels import CEFRLevel, Dimension, Language


class EvaluationError(ValueError):
    pass


@dataclass
class FoldPlan:
    k: int
    seed: int
    folds: list[list[str]]  # per-fold test doc ids

    def train_ids(self, fold: int) -> list[str]:
        return [i for j, ids in enumerate(self.folds) if j != fold for i in ids]

    def test_ids(self, fold: int) -> list[str]:
        return list(self.folds[fold])


def stratified_kfold(labels: dict[str, CEFRLevel], k: int = 5, seed: int = 0) -> FoldPlan:
    """Shuffle each class by seed, then deal members round-robin to folds.

    The fold pointer carries over between classes so overall fold sizes stay
    within one of each other; a class with fewer than k members lands in
    exactly that many folds.
    """
    if k < 2:
        raise EvaluationError("k must be at least 2")
    if k > len(labels):
        raise EvaluationError(f"k={k} exceeds document count {len(labels)}")
    rng = random.Random(seed)
    folds: list[list[str]] = [[] for _ in range(k)]
    pointer = 0
    by_class: dict[CEFRLevel, list[str]] = {}
    for doc_id, label in labels.items():
        by_class.setdefault(label, []).append(doc_id)
    for label in sorted(by_class):
        members = sorted(by_class[label])
        rng.shuffle(members)
        for doc_id in members:
            folds[pointer % k].append(doc_id)
            pointer += 1
    return FoldPlan(k=k, seed=seed, folds=folds)


def weighted_f1(y_true: list[CEFRLevel], y_pred: list[CEFRLevel]) -> float:
    """Support-weighted mean of per-class F1 over classes present in y_true."""
    if len(y_true) != len(y_pred):
        raise EvaluationError("y_true and y_pred lengths differ")
    if not y_true:
        raise EvaluationError("empty label sequences")
    support = Counter(y_true)
    total = 0.0
    for cls, n_true in support.items():
        tp = sum(1 for t, p in zip(y_true, y_pred) if t == cls and p == cls)
        n_pred = sum(1 for p in y_pred if p == cls)
        precision = tp / n_pred if n_pred else 0.0
        recall = tp / n_true
        f1 = 2 * precision * recall / (precision + recall) if (precision + recall) else 0.0
        total += n_true / len(y_true) * f1
    return total


@dataclass
class ConfusionMatrix:
    labels: list[CEFRLevel]  # axis, CEFR order
    counts: np.ndarray  # counts[true][pred]

    def total(self) -> int:
        return int(self.counts.sum())

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        labels = sorted(set(self.labels) | set(other.labels))
        counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
        for source in (self, other):
            for i, t in enumerate(source.labels):
                for j, p in enumerate(source.labels):
                    counts[labels.index(t)][labels.index(p)] += source.counts[i][j]
        return ConfusionMatrix(labels=labels, counts=counts)

    def to_dict(self) -> dict:
        return {
            "labels": [str(label) for label in self.labels],
            "counts": self.counts.tolist(),
        }


def confusion(y_true: list[CEFRLevel], y_pred: list[CEFRLevel]) -> ConfusionMatrix:
    """Counts[true][pred] over the union of observed labels, in CEFR order."""
    if len(y_true) != len(y_pred):
        raise EvaluationError("y_true and y_pred lengths differ")
    labels = sorted(set(y_true) | set(y_pred))
    idx = {label: i for i, label in enumerate(labels)}
    counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        counts[idx[t]][idx[p]] += 1
    return ConfusionMatrix(labels=labels, counts=counts)


class FeaturePipeline(Protocol):
    """Fit on training documents only, then transform any document list."""

    def fit(self, train_docs: list[Document]) -> None: ...

    def transform(self, docs: list[Document]) -> FeatureMatrix: ...


@dataclass
class FoldResult:
    fold: int
    score: float
    matrix: ConfusionMatrix
    degenerate: bool
    test_rows: list[tuple[str, Language, CEFRLevel, CEFRLevel]]  # id, lang, true, pred


@dataclass
class EvaluationReport:
    scenario: str
    dimension: Dimension
    feature_set: str
    classifier: str
    fold_scores: list[float]
    pooled: ConfusionMatrix
    degenerate_folds: list[int] = field(default_factory=list)
    per_language: dict[Language, float] = field(default_factory=dict)
    fold_results: list[FoldResult] = field(default_factory=list)

    @property
    def mean(self) -> float:
        return statistics.fmean(self.fold_scores)

    @property
    def stdev(self) -> float:
        return statistics.stdev(self.fold_scores) if len(self.fold_scores) > 1 else 0.0


def _fit_and_score(
    train_docs: list[Document],
    test_docs: list[Document],
    dimension: Dimension,
    pipeline: FeaturePipeline,
    cfg: TrainConfig,
    classifier: str,
    fold: int,
) -> FoldResult:
    y_train = [d.labels[dimension] for d in train_docs]
    y_true = [d.labels[dimension] for d in test_docs]
    degenerate = len(set(y_train)) < 2
    if classifier == "majority" or degenerate:
        model = majority_baseline(y_train)
        y_pred = [p.label for p in predict_constant(model, len(test_docs))]
    else:
        pipeline.fit(train_docs)
        model = train_logreg(pipeline.transform(train_docs), y_train, cfg)
        y_pred = [p.label for p in predict(model, pipeline.transform(test_docs))]
    return FoldResult(
        fold=fold,
        score=weighted_f1(y_true, y_pred),
        matrix=confusion(y_true, y_pred),
        degenerate=degenerate and classifier != "majority",
        test_rows=[
            (d.id, d.language, t, p) for d, t, p in zip(test_docs, y_true, y_pred)
        ],
    )


def _aggregate(
    scenario: str,
    dimension: Dimension,
    feature_set: str,
    classifier: str,
    results: list[FoldResult],
    per_language: bool,
) -> EvaluationReport:
    pooled = results[0].matrix
    for r in results[1:]:
        pooled = pooled + r.matrix
    report = EvaluationReport(
        scenario=scenario,
        dimension=dimension,
        feature_set=feature_set,
        classifier=classifier,
        fold_scores=[r.score for r in results],
        pooled=pooled,
        degenerate_folds=[r.fold for r in results if r.degenerate],
        fold_results=results,
    )
    if per_language:
        rows = [row for r in results for row in r.test_rows]
        for lang in Language:
            pairs = [(t, p) for (_, l, t, p) in rows if l == lang]
            if pairs:
                report.per_language[lang] = weighted_f1(
                    [t for t, _ in pairs], [p for _, p in pairs]
                )
    return report


def cross_validate(
    docs: list[Document],
    dimension: Dimension,
    pipeline_factory: Callable[[], FeaturePipeline],
    cfg: TrainConfig = TrainConfig(),
    k: int = 5,
    seed: int = 0,
    scenario: str = "monolingual",
    feature_set: str = "",
    classifier: str = "logreg",
    per_language: bool = False,
    plan: FoldPlan | None = None,
) -> EvaluationReport:
    """Stratified k-fold CV; each fold fits a fresh pipeline on its train split."""
    missing = [d.id for d in docs if dimension not in d.labels]
    if missing:
        raise EvaluationError(f"documents without a {dimension} label: {missing[:5]}")
    if plan is None:
        plan = stratified_kfold({d.id: d.labels[dimension] for d in docs}, k=k, seed=seed)
    by_id = {d.id: d for d in docs}
    results = []
    for fold in range(plan.k):
        train_docs = [by_id[i] for i in plan.train_ids(fold)]
        test_docs = [by_id[i] for i in plan.test_ids(fold)]
        results.append(
            _fit_and_score(train_docs, test_docs, dimension, pipeline_factory(), cfg, classifier, fold)
        )
    return _aggregate(scenario, dimension, feature_set, classifier, results, per_language)


def holdout_evaluate(
    train_docs: list[Document],
    test_docs: list[Document],
    dimension: Dimension,
    pipeline_factory: Callable[[], FeaturePipeline],
    cfg: TrainConfig = TrainConfig(),
    scenario: str = "crosslingual",
    feature_set: str = "",
    classifier: str = "logreg",
) -> EvaluationReport:
    """Single train/test evaluation (the cross-lingual scenario)."""
    result = _fit_and_score(train_docs, test_docs, dimension, pipeline_factory(), cfg, classifier, 0)
    return _aggregate(scenario, dimension, feature_set, classifier, [result], per_language=False)


def score_external_predictions(
    rows: list[tuple[str, int, CEFRLevel]],
    gold: dict[str, CEFRLevel],
    plan: FoldPlan | None = None,
    scenario: str = "external",
    dimension: Dimension = Dimension.overall,
    feature_set: str = "external_predictions",
    languages: dict[str, Language] | None = None,
) -> EvaluationReport:
    """Score externally produced per-fold predictions against gold labels.

    `rows` are (doc_id, fold, predicted).  With a FoldPlan, every fold's test
    set must be covered exactly; without one, all gold ids must be predicted.
    """
    unknown = [doc_id for doc_id, _, _ in rows if doc_id not in gold]
    if unknown:
        raise EvaluationError(f"predictions for unknown doc ids: {unknown[:5]}")
    by_fold: dict[int, list[tuple[str, CEFRLevel]]] = {}
    for doc_id, fold, label in rows:
        by_fold.setdefault(fold, []).append((doc_id, label))
    if plan is not None:
        missing = []
        for fold in range(plan.k):
            covered = {doc_id for doc_id, _ in by_fold.get(fold, [])}
            missing.extend(sorted(set(plan.test_ids(fold)) - covered))
        if missing:
            raise EvaluationError(f"predictions missing for doc ids: {missing}")
    else:
        covered = {doc_id for doc_id, _, _ in rows}
        missing = sorted(set(gold) - covered)
        if missing:
            raise EvaluationError(f"predictions missing for doc ids: {missing}")
    results = []
    for fold in sorted(by_fold):
        pairs = by_fold[fold]
        y_true = [gold[doc_id] for doc_id, _ in pairs]
        y_pred = [label for _, label in pairs]
        rows_out = []
        if languages is not None:
            rows_out = [
                (doc_id, languages[doc_id], t, p)
                for (doc_id, _), t, p in zip(pairs, y_true, y_pred)
            ]
        results.append(
            FoldResult(
                fold=fold,
                score=weighted_f1(y_true, y_pred),
                matrix=confusion(y_true, y_pred),
                degenerate=False,
                test_rows=rows_out,
            )
        )
    return _aggregate(
        scenario, dimension, feature_set, "external", results, per_language=languages is not None
    )
