"""Command-line entry point: embed documents or fine-tune per fold manifest."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .corpus import load_corpus
from .encoders import LASER_DIM, MBertEncoder, embed_laser, make_laser_encoder
from .finetune import FinetuneJob, finetune_predict
from .formats import write_dense_vectors


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="embedder")
    sub = parser.add_subparsers(dest="command", required=True)

    p_embed = sub.add_parser("embed", help="write document vectors for the corpus")
    p_embed.add_argument("--family", choices=["laser", "mbert"], required=True)
    p_embed.add_argument("--corpus", required=True, help="corpus directory")
    p_embed.add_argument("--out", required=True, help="output vectors file")
    p_embed.add_argument("--model", help="override the pretrained model name or path")

    p_ft = sub.add_parser("finetune", help="fold-wise fine-tuning and prediction")
    p_ft.add_argument("--manifest", required=True, help="fold manifest JSON")
    p_ft.add_argument("--corpus", required=True, help="corpus directory")
    p_ft.add_argument("--dimension", required=True)
    p_ft.add_argument("--out", required=True, help="output predictions TSV")
    p_ft.add_argument("--model", help="override the pretrained model name or path")
    p_ft.add_argument("--lr", type=float, default=2e-5)
    p_ft.add_argument("--epochs", type=int, default=3)
    p_ft.add_argument("--batch", type=int, default=16)
    p_ft.add_argument("--seed", type=int, default=0)
    return parser


def run_embed(args) -> int:
    corpus = load_corpus(args.corpus)
    vectors: dict[str, np.ndarray] = {}
    if args.family == "laser":
        encoder = make_laser_encoder()
        for doc_id, language in corpus.languages.items():
            vectors[doc_id] = embed_laser(corpus.sentences(doc_id), language, encoder)
        write_dense_vectors(args.out, LASER_DIM, vectors)
    else:
        kwargs = {"model_path": args.model} if args.model else {}
        encoder = MBertEncoder(**kwargs)
        for doc_id in corpus.languages:
            vectors[doc_id] = encoder.embed(corpus.text(doc_id))
        write_dense_vectors(args.out, encoder.dim, vectors)
    print(f"wrote {len(vectors)} vectors to {args.out}")
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "embed":
            return run_embed(args)
        job = FinetuneJob(
            manifest_path=Path(args.manifest),
            corpus_dir=Path(args.corpus),
            dimension=args.dimension,
            output_path=Path(args.out),
            learning_rate=args.lr,
            epochs=args.epochs,
            batch_size=args.batch,
            seed=args.seed,
        )
        if args.model:
            job.model_path = args.model
        path = finetune_predict(job)
        print(f"wrote predictions to {path}")
        return 0
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
