"""Multi-dimensional, multilingual CEFR proficiency classification toolkit."""

from .levels import CEFRLevel, Dimension, Language
from .conllu import Token, parse_conllu, serialize_conllu
from .corpus import Corpus, Document, RawLabelRecord, clean_labels, corpus_stats, load_corpus, load_labels
from .features import (
    DenseVectorTable,
    FeatureMatrix,
    NGramSpec,
    Vocabulary,
    build_vocabulary,
    doc_length,
    document_ngrams,
    extract_ngrams,
    format_dense_vectors,
    load_dense_vectors,
    token_sequence,
    vectorize,
)
from .classifier import LinearModel, Prediction, TrainConfig, majority_baseline, predict, train_logreg
from .evaluation import (
    ConfusionMatrix,
    EvaluationReport,
    FoldPlan,
    confusion,
    cross_validate,
    score_external_predictions,
    stratified_kfold,
    weighted_f1,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
