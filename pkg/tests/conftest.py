"""Shared fixtures: toy documents and a synthetic on-disk corpus."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from cefrkit.conllu import Token
from cefrkit.corpus import Document
from cefrkit.levels import CEFRLevel, Dimension, Language

UPOS_POOL = ["NOUN", "VERB", "DET", "ADJ", "ADV", "PRON", "ADP", "AUX"]
DEPREL_POOL = ["nsubj", "obj", "det", "amod", "advmod", "obl", "case"]
WORD_POOL = ["haus", "geht", "der", "gut", "sehr", "er", "mit", "ist", "kam", "buch"]

LABEL_COLUMNS = (
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


def make_sentence(rng: random.Random, length: int) -> list[Token]:
    tokens = []
    root = rng.randrange(length)
    for i in range(length):
        if i == root:
            head, deprel = 0, "root"
        else:
            head, deprel = root + 1, rng.choice(DEPREL_POOL)
        tokens.append(
            Token(
                form=rng.choice(WORD_POOL),
                upos=rng.choice(UPOS_POOL),
                head=head,
                deprel=deprel,
            )
        )
    return tokens


def make_document(
    doc_id: str,
    language: Language = Language.de,
    n_sentences: int = 3,
    sentence_length: int = 5,
    labels: dict[Dimension, CEFRLevel] | None = None,
    seed: int = 0,
) -> Document:
    rng = random.Random(seed)
    sentences = [make_sentence(rng, sentence_length) for _ in range(n_sentences)]
    return Document(
        id=doc_id,
        language=language,
        sentences=sentences,
        labels=labels if labels is not None else {Dimension.overall: CEFRLevel.B1},
    )


def conllu_text(sentences: list[list[Token]]) -> str:
    lines = []
    for sent in sentences:
        for i, tok in enumerate(sent, start=1):
            lines.append(
                "\t".join(
                    [str(i), tok.form, "_", tok.upos, "_", "_", str(tok.head), tok.deprel, "_", "_"]
                )
            )
        lines.append("")
    return "\n".join(lines) + "\n"


def write_synthetic_corpus(
    root: Path,
    per_language: dict[Language, int] | None = None,
    seed: int = 7,
) -> Path:
    """Write a small labeled corpus where longer essays score higher levels."""
    if per_language is None:
        per_language = {Language.de: 30, Language.it: 20, Language.cz: 15}
    rng = random.Random(seed)
    rows = ["\t".join(LABEL_COLUMNS)]
    levels = [CEFRLevel.A2, CEFRLevel.B1, CEFRLevel.B2]
    for language, count in per_language.items():
        lang_dir = root / language.value
        lang_dir.mkdir(parents=True, exist_ok=True)
        for i in range(count):
            doc_id = f"{language}{i:03d}"
            level = levels[i % len(levels)]
            # length tracks the level so the signal is learnable
            n_sent = 2 + level * 2 + rng.randrange(2)
            sentences = [make_sentence(rng, 4 + level + rng.randrange(3)) for _ in range(n_sent)]
            (lang_dir / f"{doc_id}.conllu").write_text(conllu_text(sentences), encoding="utf-8")
            label = str(level)
            row = [doc_id, language.value] + [label] * 7
            rows.append("\t".join(row))
    (root / "labels.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    return root


@pytest.fixture
def synthetic_corpus(tmp_path):
    return write_synthetic_corpus(tmp_path / "corpus")
