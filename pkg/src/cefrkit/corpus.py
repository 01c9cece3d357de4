"""Corpus ingestion: label table loading, label cleaning, document assembly."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .conllu import Sentence, parse_conllu
from .levels import CEFRLevel, Dimension, Language, DIMENSIONS

log = logging.getLogger(__name__)

LABEL_HEADER = (
    "docid",
    "language",
    "overall",
    "grammar",
    "orthography",
    "vocab_range",
    "vocab_control",
    "coherence",
    "sociolinguistic",
)


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class RawLabelRecord:
    """One label-table row, raw tokens preserved verbatim."""

    doc_id: str
    language: Language
    raw: dict[Dimension, str | None]


@dataclass(frozen=True)
class Document:
    """One learner essay with its parsed sentences and cleaned labels."""

    id: str
    language: Language
    sentences: list[Sentence]
    labels: dict[Dimension, CEFRLevel]


@dataclass
class Corpus:
    documents: list[Document] = field(default_factory=list)

    def by_id(self) -> dict[str, Document]:
        return {d.id: d for d in self.documents}

    def for_dimension(self, dimension: Dimension) -> list[Document]:
        """Documents carrying a cleaned label for the given dimension."""
        return [d for d in self.documents if dimension in d.labels]

    def for_language(self, language: Language) -> list[Document]:
        return [d for d in self.documents if d.language == language]


def load_labels(text: str) -> list[RawLabelRecord]:
    """Parse the tab-separated label table into raw records."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CorpusError("label table is empty (missing header)")
    header = tuple(lines[0].rstrip("\n").split("\t"))
    if header != LABEL_HEADER:
        raise CorpusError(f"unexpected label table header: {header}")
    records: list[RawLabelRecord] = []
    seen: set[str] = set()
    for line_no, line in enumerate(lines[1:], start=2):
        fields = line.split("\t")
        if len(fields) != len(LABEL_HEADER):
            raise CorpusError(f"line {line_no}: expected {len(LABEL_HEADER)} columns, got {len(fields)}")
        doc_id = fields[0].strip()
        if doc_id in seen:
            raise CorpusError(f"line {line_no}: duplicate doc id {doc_id!r}")
        seen.add(doc_id)
        language = Language.parse(fields[1])
        raw: dict[Dimension, str | None] = {}
        for dim, value in zip(DIMENSIONS, fields[2:]):
            value = value.strip()
            raw[dim] = value if value else None
        records.append(RawLabelRecord(doc_id=doc_id, language=language, raw=raw))
    return records


def clean_labels(records: list[RawLabelRecord]) -> dict[str, dict[Dimension, CEFRLevel]]:
    """Apply the label-cleaning rules; returns per-document cleaned label maps.

    Rules: a raw "1" drops the document from that dimension only; for
    German/Italian a raw "0" becomes A1 when the overall rating is A1;
    sociolinguistic appropriateness is dropped entirely for Czech; absent
    labels drop the document from that dimension only.  Any other "0" is
    unresolvable: the document is excluded from that dimension with a warning.
    """
    cleaned: dict[str, dict[Dimension, CEFRLevel]] = {}
    for record in records:
        labels: dict[Dimension, CEFRLevel] = {}
        overall_raw = record.raw.get(Dimension.overall)
        overall_is_a1 = overall_raw is not None and overall_raw.upper() == "A1"
        for dim in DIMENSIONS:
            if record.language == Language.cz and dim == Dimension.sociolinguistic_appropriateness:
                continue
            value = record.raw.get(dim)
            if value is None or value == "1":
                continue
            if value == "0":
                if (
                    record.language in (Language.de, Language.it)
                    and dim != Dimension.overall
                    and overall_is_a1
                ):
                    labels[dim] = CEFRLevel.A1
                else:
                    log.warning(
                        "doc %s: unresolvable '0' label for %s; excluded from that dimension",
                        record.doc_id,
                        dim,
                    )
                continue
            labels[dim] = CEFRLevel.parse(value)
        cleaned[record.doc_id] = labels
    return cleaned


def load_corpus(root: str | Path) -> Corpus:
    """Load labels.tsv plus per-language `<docid>.conllu` files under `root`."""
    root = Path(root)
    labels_path = root / "labels.tsv"
    if not labels_path.is_file():
        raise CorpusError(f"label table not found: {labels_path}")
    records = load_labels(labels_path.read_text(encoding="utf-8"))
    cleaned = clean_labels(records)
    documents = []
    for record in records:
        conllu_path = root / record.language.value / f"{record.doc_id}.conllu"
        if not conllu_path.is_file():
            raise CorpusError(f"missing CoNLL-U file: {conllu_path}")
        sentences = parse_conllu(conllu_path.read_text(encoding="utf-8"))
        if not sentences:
            raise CorpusError(f"document {record.doc_id} has no sentences")
        documents.append(
            Document(
                id=record.doc_id,
                language=record.language,
                sentences=sentences,
                labels=cleaned[record.doc_id],
            )
        )
    return Corpus(documents=documents)


@dataclass
class CorpusStats:
    total: int
    per_language: dict[Language, int]
    histograms: dict[Dimension, Counter]
    usable: dict[Dimension, int]


def corpus_stats(documents: list[Document]) -> CorpusStats:
    """Exact per-language counts and per-dimension CEFR label histograms."""
    per_language = {lang: 0 for lang in Language}
    histograms: dict[Dimension, Counter] = {dim: Counter() for dim in DIMENSIONS}
    for doc in documents:
        per_language[doc.language] += 1
        for dim, level in doc.labels.items():
            histograms[dim][level] += 1
    usable = {dim: sum(histograms[dim].values()) for dim in DIMENSIONS}
    return CorpusStats(
        total=len(documents),
        per_language=per_language,
        histograms=histograms,
        usable=usable,
    )
