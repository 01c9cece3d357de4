"""LASER/mBERT document vectors and fold-wise fine-tuned predictions."""

from .corpus import EssayCorpus, load_corpus
from .encoders import LASER_DIM, MBERT_DIM, MBERT_MAX_TOKENS, MBertEncoder, embed_laser
from .finetune import FinetuneJob, finetune_predict
from .formats import read_fold_manifest, write_dense_vectors, write_predictions

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
