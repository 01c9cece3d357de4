"""Feature extraction: document length, n-gram families, dense vector tables."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

import numpy as np
import scipy.sparse as sp

from .conllu import Sentence
from .corpus import Document

# joiner guaranteed absent from UD tags; escaped if it occurs in surface forms
NGRAM_SEP = "␟"
_SEP_ESCAPE = "\\u241f"

UNITS = ("word", "upos", "dep_triplet")


class FeatureError(ValueError):
    pass


@dataclass(frozen=True)
class NGramSpec:
    unit: str
    n_min: int = 1
    n_max: int = 5

    def __post_init__(self):
        if self.unit not in UNITS:
            raise FeatureError(f"unknown n-gram unit: {self.unit!r}")
        if not (1 <= self.n_min <= self.n_max <= 5):
            raise FeatureError(f"invalid n-gram range: {self.n_min}..{self.n_max}")


def doc_length(doc: Document) -> int:
    """Total syntactic-word count over all sentences."""
    return sum(len(s) for s in doc.sentences)


def _unit_strings(sentence: Sentence, unit: str) -> list[str]:
    if unit == "word":
        return [tok.form.replace(NGRAM_SEP, _SEP_ESCAPE) for tok in sentence]
    if unit == "upos":
        return [tok.upos for tok in sentence]
    # dep_triplet: headUPOS|depUPOS|deprel per token, ROOT for head index 0
    out = []
    for tok in sentence:
        head_upos = "ROOT" if tok.head == 0 else sentence[tok.head - 1].upos
        out.append(f"{head_upos}|{tok.upos}|{tok.deprel}")
    return out


def sentence_sequences(doc: Document, unit: str) -> list[list[str]]:
    """Per-sentence unit strings; n-grams never cross these boundaries."""
    return [_unit_strings(s, unit) for s in doc.sentences]


def token_sequence(doc: Document, unit: str) -> list[str]:
    """Flat unit-string sequence over the whole document, in token order."""
    return [u for seq in sentence_sequences(doc, unit) for u in seq]


def extract_ngrams(seq: list[str], spec: NGramSpec) -> Counter:
    """Count every contiguous n-gram window of orders n_min..n_max in `seq`."""
    counts: Counter = Counter()
    for n in range(spec.n_min, spec.n_max + 1):
        for i in range(len(seq) - n + 1):
            counts[NGRAM_SEP.join(seq[i : i + n])] += 1
    return counts


def document_ngrams(doc: Document, spec: NGramSpec) -> Counter:
    """N-gram counts over all sentences; windows stay within sentences."""
    counts: Counter = Counter()
    for seq in sentence_sequences(doc, spec.unit):
        counts.update(extract_ngrams(seq, spec))
    return counts


@dataclass(frozen=True)
class Vocabulary:
    """Deterministic (lexicographic) n-gram to column-index map."""

    spec: NGramSpec
    index: dict[str, int]

    def __len__(self):
        return len(self.index)


def build_vocabulary(train_docs: list[Document], spec: NGramSpec) -> Vocabulary:
    """Union of n-grams over the training documents, columns in sorted order."""
    if not train_docs:
        raise FeatureError("cannot build a vocabulary from an empty training set")
    grams: set[str] = set()
    for doc in train_docs:
        grams.update(document_ngrams(doc, spec))
    if not grams:
        raise FeatureError("training documents contain no n-grams")
    return Vocabulary(spec=spec, index={g: i for i, g in enumerate(sorted(grams))})


@dataclass
class FeatureMatrix:
    """Rows aligned to `doc_ids`; sparse counts or dense reals."""

    doc_ids: list[str]
    data: "sp.csr_matrix | np.ndarray"

    @property
    def width(self) -> int:
        return self.data.shape[1]


def vectorize(docs: list[Document], vocab: Vocabulary) -> FeatureMatrix:
    """Sparse count matrix over `vocab`; out-of-vocabulary n-grams are ignored."""
    rows, cols, vals = [], [], []
    for i, doc in enumerate(docs):
        for gram, count in document_ngrams(doc, vocab.spec).items():
            j = vocab.index.get(gram)
            if j is not None:
                rows.append(i)
                cols.append(j)
                vals.append(count)
    data = sp.csr_matrix(
        (vals, (rows, cols)), shape=(len(docs), len(vocab)), dtype=np.float64
    )
    return FeatureMatrix(doc_ids=[d.id for d in docs], data=data)


def doclen_matrix(docs: list[Document]) -> FeatureMatrix:
    data = np.array([[doc_length(d)] for d in docs], dtype=np.float64)
    return FeatureMatrix(doc_ids=[d.id for d in docs], data=data)


@dataclass
class DenseVectorTable:
    dim: int
    vectors: dict[str, np.ndarray]

    def matrix(self, docs: list[Document]) -> FeatureMatrix:
        """Dense rows for `docs`; a missing id is an error naming the doc."""
        rows = []
        for doc in docs:
            vec = self.vectors.get(doc.id)
            if vec is None:
                raise FeatureError(f"no dense vector for document {doc.id!r}")
            rows.append(vec)
        return FeatureMatrix(doc_ids=[d.id for d in docs], data=np.vstack(rows))


def load_dense_vectors(text: str, expected_dim: int) -> DenseVectorTable:
    """Parse the dense-vectors file format and validate dimensions."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("dim="):
        raise FeatureError("dense vectors file must start with a 'dim=<D>' line")
    dim = int(lines[0][len("dim=") :])
    if dim != expected_dim:
        raise FeatureError(f"vector dimension {dim} does not match expected {expected_dim}")
    vectors: dict[str, np.ndarray] = {}
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        doc_id, _, payload = line.partition("\t")
        values = payload.split()
        if len(values) != dim:
            raise FeatureError(f"line {line_no}: expected {dim} values, got {len(values)}")
        vec = np.array([float(v) for v in values], dtype=np.float64)
        if not np.all(np.isfinite(vec)):
            raise FeatureError(f"line {line_no}: non-finite value in vector for {doc_id!r}")
        if doc_id in vectors:
            raise FeatureError(f"line {line_no}: duplicate doc id {doc_id!r}")
        vectors[doc_id] = vec
    return DenseVectorTable(dim=dim, vectors=vectors)


def format_dense_vectors(dim: int, vectors: Iterable[tuple[str, np.ndarray]]) -> str:
    """Render the dense-vectors file format at round-trip precision."""
    lines = [f"dim={dim}"]
    for doc_id, vec in vectors:
        if len(vec) != dim:
            raise FeatureError(f"vector for {doc_id!r} has length {len(vec)}, expected {dim}")
        # 17 significant digits: bit-exact float round-trip
        lines.append(doc_id + "\t" + " ".join(f"{v:.17g}" for v in vec))
    return "\n".join(lines) + "\n"
