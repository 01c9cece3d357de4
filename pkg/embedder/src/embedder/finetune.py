"""Fold-wise fine-tuning of a BERT-style encoder with a softmax head."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from .corpus import EssayCorpus, load_corpus
from .encoders import MBERT_MAX_TOKENS, MBERT_MODEL
from .formats import read_fold_manifest, write_predictions

log = logging.getLogger(__name__)


@dataclass
class FinetuneJob:
    manifest_path: Path
    corpus_dir: Path
    dimension: str
    output_path: Path
    model_path: str = MBERT_MODEL
    learning_rate: float = 2e-5
    epochs: int = 3
    batch_size: int = 16
    max_tokens: int = MBERT_MAX_TOKENS
    seed: int = 0


def _check_ids(manifest: dict, corpus: EssayCorpus, dimension: str) -> None:
    missing = []
    for fold in manifest["folds"]:
        for doc_id in list(fold["train"]) + list(fold["test"]):
            if doc_id not in corpus.labels:
                missing.append(doc_id)
            elif doc_id in fold["train"] and dimension not in corpus.labels[doc_id]:
                missing.append(doc_id)
    if missing:
        raise ValueError(f"manifest ids unresolvable in corpus: {sorted(set(missing))[:5]}")


def _train_one_fold(job: FinetuneJob, texts, labels, test_texts, device):
    """Train a fresh classifier head on one fold; returns predicted label strings."""
    import torch
    from transformers import AutoModelForSequenceClassification, AutoTokenizer

    classes = sorted(set(labels))
    class_idx = {c: i for i, c in enumerate(classes)}
    tokenizer = AutoTokenizer.from_pretrained(job.model_path)
    model = AutoModelForSequenceClassification.from_pretrained(
        job.model_path, num_labels=len(classes)
    ).to(device)
    optimizer = torch.optim.AdamW(model.parameters(), lr=job.learning_rate)
    model.train()
    y = torch.tensor([class_idx[label] for label in labels], device=device)
    for _ in range(job.epochs):
        for start in range(0, len(texts), job.batch_size):
            batch_texts = texts[start : start + job.batch_size]
            inputs = tokenizer(
                batch_texts,
                truncation=True,
                max_length=job.max_tokens,
                padding=True,
                return_tensors="pt",
            ).to(device)
            loss = model(**inputs, labels=y[start : start + len(batch_texts)]).loss
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
    model.eval()
    predictions = []
    with torch.no_grad():
        for start in range(0, len(test_texts), job.batch_size):
            inputs = tokenizer(
                test_texts[start : start + job.batch_size],
                truncation=True,
                max_length=job.max_tokens,
                padding=True,
                return_tensors="pt",
            ).to(device)
            logits = model(**inputs).logits
            predictions.extend(classes[i] for i in logits.argmax(dim=1).tolist())
    return predictions


def finetune_predict(job: FinetuneJob) -> Path:
    """Fine-tune per fold on the manifest's train ids and predict its test ids."""
    import torch

    manifest = read_fold_manifest(job.manifest_path)
    corpus = load_corpus(job.corpus_dir)
    _check_ids(manifest, corpus, job.dimension)
    device = "cuda" if torch.cuda.is_available() else "cpu"
    rows: list[tuple[str, str, int, str]] = []
    for fold in manifest["folds"]:
        torch.manual_seed(job.seed + fold["fold"])
        train_ids = list(fold["train"])
        test_ids = list(fold["test"])
        texts = [corpus.text(i) for i in train_ids]
        labels = [corpus.labels[i][job.dimension] for i in train_ids]
        test_texts = [corpus.text(i) for i in test_ids]
        log.info(
            "fold %d: %d train, %d test documents", fold["fold"], len(train_ids), len(test_ids)
        )
        predicted = _train_one_fold(job, texts, labels, test_texts, device)
        rows.extend(
            (doc_id, job.dimension, fold["fold"], label)
            for doc_id, label in zip(test_ids, predicted)
        )
    write_predictions(job.output_path, rows)
    return job.output_path
