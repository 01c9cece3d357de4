"""Fixtures: a tiny local BERT checkpoint and a small on-disk corpus."""

from __future__ import annotations

import os
import random
from pathlib import Path

import pytest

os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")
os.environ.setdefault("HF_HUB_OFFLINE", "1")

WORDS = ["hund", "haus", "geht", "gut", "sehr", "ist", "buch", "kam", "der", "mit"]

LABEL_HEADER = "docid\tlanguage\toverall\tgrammar\torthography\tvocab_range\tvocab_control\tcoherence\tsociolinguistic"


@pytest.fixture(scope="session")
def tiny_bert(tmp_path_factory) -> str:
    """A randomly initialized 2-layer BERT with a word-level vocabulary."""
    from transformers import BertConfig, BertModel, BertTokenizer

    model_dir = tmp_path_factory.mktemp("tiny-bert")
    vocab = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"] + WORDS
    vocab_file = model_dir / "vocab.txt"
    vocab_file.write_text("\n".join(vocab) + "\n", encoding="utf-8")
    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=512,
    )
    BertModel(config).save_pretrained(model_dir)
    BertTokenizer(str(vocab_file), do_lower_case=True).save_pretrained(model_dir)
    return str(model_dir)


def write_corpus(root: Path, n_docs: int = 12, language: str = "de", seed: int = 3) -> Path:
    rng = random.Random(seed)
    lang_dir = root / language
    lang_dir.mkdir(parents=True, exist_ok=True)
    rows = [LABEL_HEADER]
    for i in range(n_docs):
        doc_id = f"{language}{i:03d}"
        level = "A2" if i % 2 == 0 else "B1"
        n_sent = 2 + (2 if level == "B1" else 0)
        lines = []
        for _ in range(n_sent):
            length = rng.randint(3, 6)
            for t in range(1, length + 1):
                form = rng.choice(WORDS)
                head = 0 if t == 1 else 1
                deprel = "root" if t == 1 else "dep"
                lines.append(f"{t}\t{form}\t_\tNOUN\t_\t_\t{head}\t{deprel}\t_\t_")
            lines.append("")
        (lang_dir / f"{doc_id}.conllu").write_text("\n".join(lines) + "\n", encoding="utf-8")
        rows.append("\t".join([doc_id, language] + [level] * 7))
    (root / "labels.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    return root


@pytest.fixture
def small_corpus(tmp_path):
    return write_corpus(tmp_path / "corpus")
