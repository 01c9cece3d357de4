"""Feature pipelines pairing a fit-on-train step with document transforms."""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import Document
from .features import (
    DenseVectorTable,
    FeatureMatrix,
    NGramSpec,
    Vocabulary,
    build_vocabulary,
    doclen_matrix,
    vectorize,
)

FEATURE_SETS = (
    "doclen",
    "word_ngrams",
    "upos_ngrams",
    "dep_ngrams",
    "laser",
    "mbert",
    "external_predictions",
)

NGRAM_UNITS = {
    "word_ngrams": "word",
    "upos_ngrams": "upos",
    "dep_ngrams": "dep_triplet",
}

DENSE_DIMS = {"laser": 1024, "mbert": 768}


class DoclenPipeline:
    """Single-column token-count baseline; nothing to fit."""

    def fit(self, train_docs: list[Document]) -> None:
        pass

    def transform(self, docs: list[Document]) -> FeatureMatrix:
        return doclen_matrix(docs)


@dataclass
class NGramPipeline:
    """Count vectors over a vocabulary built from the training split only."""

    spec: NGramSpec
    vocab: Vocabulary | None = field(default=None, init=False)

    def fit(self, train_docs: list[Document]) -> None:
        self.vocab = build_vocabulary(train_docs, self.spec)

    def transform(self, docs: list[Document]) -> FeatureMatrix:
        if self.vocab is None:
            raise RuntimeError("NGramPipeline.transform called before fit")
        return vectorize(docs, self.vocab)


@dataclass
class DensePipeline:
    """Rows drawn from a precomputed embedding table; nothing to fit."""

    table: DenseVectorTable

    def fit(self, train_docs: list[Document]) -> None:
        pass

    def transform(self, docs: list[Document]) -> FeatureMatrix:
        return self.table.matrix(docs)


def pipeline_factory(feature_set: str, tables: dict[str, DenseVectorTable] | None = None):
    """Return a zero-argument factory producing fresh pipelines per fold."""
    if feature_set == "doclen":
        return DoclenPipeline
    if feature_set in NGRAM_UNITS:
        spec = NGramSpec(unit=NGRAM_UNITS[feature_set])
        return lambda: NGramPipeline(spec=spec)
    if feature_set in DENSE_DIMS:
        if not tables or feature_set not in tables:
            raise ValueError(f"no dense vector table loaded for {feature_set!r}")
        table = tables[feature_set]
        return lambda: DensePipeline(table=table)
    raise ValueError(f"unknown feature set: {feature_set!r}")
