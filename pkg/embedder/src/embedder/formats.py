"""File formats shared with the classification toolkit: vectors, predictions, manifests."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

PREDICTIONS_HEADER = "docid\tdimension\tfold\tpredicted"


def write_dense_vectors(path: str | Path, dim: int, vectors: dict[str, np.ndarray]) -> None:
    """Write the `dim=<D>` header plus one tab-separated row per document."""
    lines = [f"dim={dim}"]
    for doc_id in vectors:
        vec = np.asarray(vectors[doc_id], dtype=np.float64)
        if vec.shape != (dim,):
            raise ValueError(f"vector for {doc_id!r} has shape {vec.shape}, expected ({dim},)")
        if not np.all(np.isfinite(vec)):
            raise ValueError(f"non-finite values in vector for {doc_id!r}")
        lines.append(doc_id + "\t" + " ".join(f"{v:.17g}" for v in vec))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_predictions(path: str | Path, rows: list[tuple[str, str, int, str]]) -> None:
    """Write prediction rows as (docid, dimension, fold, predicted label)."""
    lines = [PREDICTIONS_HEADER]
    for doc_id, dimension, fold, label in rows:
        lines.append(f"{doc_id}\t{dimension}\t{fold}\t{label}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_fold_manifest(path: str | Path) -> dict:
    """Load a fold manifest and check the schema essentials."""
    manifest = json.loads(Path(path).read_text(encoding="utf-8"))
    for key in ("scenario", "dimension", "seed", "k", "folds"):
        if key not in manifest:
            raise ValueError(f"fold manifest missing key {key!r}")
    for fold in manifest["folds"]:
        for key in ("fold", "train", "test"):
            if key not in fold:
                raise ValueError(f"fold entry missing key {key!r}")
        overlap = set(fold["train"]) & set(fold["test"])
        if overlap:
            raise ValueError(f"fold {fold['fold']}: train/test overlap: {sorted(overlap)[:5]}")
    return manifest
