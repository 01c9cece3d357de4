"""Minimal corpus access over the shared on-disk layout.

Reads per-language `<docid>.conllu` files for sentence text and the
labels.tsv table for CEFR ratings, applying the same cleaning rules the
classification toolkit uses: "1" drops the document from that dimension,
"0" resolves to A1 only for German/Italian documents rated A1 overall, and
sociolinguistic appropriateness is never used for Czech.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

LANGUAGES = ("de", "it", "cz")
CEFR_LEVELS = ("A1", "A2", "B1", "B2", "C1", "C2")
DIMENSION_COLUMNS = {
    "overall": "overall",
    "grammatical_accuracy": "grammar",
    "orthographic_control": "orthography",
    "vocabulary_range": "vocab_range",
    "vocabulary_control": "vocab_control",
    "coherence_cohesion": "coherence",
    "sociolinguistic_appropriateness": "sociolinguistic",
}
LABEL_HEADER = ("docid", "language") + tuple(DIMENSION_COLUMNS.values())


@dataclass
class EssayCorpus:
    root: Path
    languages: dict[str, str]  # doc id -> language code
    labels: dict[str, dict[str, str]]  # doc id -> dimension name -> CEFR label

    def sentences(self, doc_id: str) -> list[str]:
        """Sentence texts rebuilt from the CoNLL-U surface forms."""
        path = self.root / self.languages[doc_id] / f"{doc_id}.conllu"
        sentences: list[str] = []
        current: list[str] = []
        for line in path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                if current:
                    sentences.append(" ".join(current))
                    current = []
                continue
            if line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 10 or "-" in fields[0] or "." in fields[0]:
                continue
            current.append(fields[1])
        if current:
            sentences.append(" ".join(current))
        return sentences

    def text(self, doc_id: str) -> str:
        return " ".join(self.sentences(doc_id))


def _clean(language: str, raw: dict[str, str | None]) -> dict[str, str]:
    labels: dict[str, str] = {}
    overall_is_a1 = (raw.get("overall") or "").upper() == "A1"
    for dimension in DIMENSION_COLUMNS:
        if language == "cz" and dimension == "sociolinguistic_appropriateness":
            continue
        value = raw.get(dimension)
        if value is None or value == "1":
            continue
        if value == "0":
            if language in ("de", "it") and dimension != "overall" and overall_is_a1:
                labels[dimension] = "A1"
            continue
        value = value.upper()
        if value not in CEFR_LEVELS:
            raise ValueError(f"unexpected label {value!r} for dimension {dimension}")
        labels[dimension] = value
    return labels


def load_corpus(root: str | Path) -> EssayCorpus:
    root = Path(root)
    lines = [ln for ln in (root / "labels.tsv").read_text(encoding="utf-8").splitlines() if ln.strip()]
    header = tuple(lines[0].split("\t"))
    if header != LABEL_HEADER:
        raise ValueError(f"unexpected labels.tsv header: {header}")
    languages: dict[str, str] = {}
    labels: dict[str, dict[str, str]] = {}
    for line in lines[1:]:
        fields = line.split("\t")
        doc_id, language = fields[0], fields[1]
        if language not in LANGUAGES:
            raise ValueError(f"unknown language code {language!r} for {doc_id}")
        raw = {
            dimension: (value.strip() or None)
            for dimension, value in zip(DIMENSION_COLUMNS, fields[2:])
        }
        languages[doc_id] = language
        labels[doc_id] = _clean(language, raw)
    return EssayCorpus(root=root, languages=languages, labels=labels)
