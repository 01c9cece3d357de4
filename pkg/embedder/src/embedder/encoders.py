"""Sentence and document encoders: LASER averaging and mBERT CLS extraction."""

from __future__ import annotations

import numpy as np

LASER_DIM = 1024
MBERT_DIM = 768
MBERT_MAX_TOKENS = 400
MBERT_MODEL = "bert-base-multilingual-cased"


def embed_laser(sentences: list[str], language: str, sentence_encoder) -> np.ndarray:
    """Arithmetic mean of per-sentence vectors from a cross-lingual encoder.

    `sentence_encoder(sentences, language)` must return an array of shape
    (n_sentences, 1024).
    """
    if not sentences:
        raise ValueError("document has no sentences")
    vectors = np.asarray(sentence_encoder(sentences, language), dtype=np.float64)
    if vectors.shape != (len(sentences), LASER_DIM):
        raise ValueError(f"encoder returned shape {vectors.shape}, expected ({len(sentences)}, {LASER_DIM})")
    return vectors.mean(axis=0)


def make_laser_encoder():
    """Real LASER backend; requires the laserembeddings package and its models."""
    try:
        from laserembeddings import Laser
    except ImportError as exc:
        raise RuntimeError(
            "LASER support needs the 'laserembeddings' package and its downloaded models"
        ) from exc
    laser = Laser()

    def encode(sentences: list[str], language: str) -> np.ndarray:
        return laser.embed_sentences(sentences, lang="cs" if language == "cz" else language)

    return encode


class MBertEncoder:
    """CLS vector from the final layer of a BERT-style encoder, truncated input."""

    def __init__(self, model_path: str = MBERT_MODEL, max_tokens: int = MBERT_MAX_TOKENS):
        import torch
        from transformers import AutoModel, AutoTokenizer

        self.torch = torch
        self.tokenizer = AutoTokenizer.from_pretrained(model_path)
        self.model = AutoModel.from_pretrained(model_path)
        self.model.eval()
        self.max_tokens = max_tokens
        self.dim = self.model.config.hidden_size

    def embed(self, text: str) -> np.ndarray:
        if not text.strip():
            raise ValueError("cannot embed empty text")
        inputs = self.tokenizer(
            text, truncation=True, max_length=self.max_tokens, return_tensors="pt"
        )
        with self.torch.no_grad():
            output = self.model(**inputs)
        return output.last_hidden_state[0, 0].numpy().astype(np.float64)
