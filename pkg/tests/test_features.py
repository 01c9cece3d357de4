import numpy as np
import pytest
from hypothesis import given, strategies as st

from cefrkit.conllu import Token
from cefrkit.corpus import Document
from cefrkit.features import (
    NGRAM_SEP,
    FeatureError,
    NGramSpec,
    build_vocabulary,
    doc_length,
    document_ngrams,
    extract_ngrams,
    format_dense_vectors,
    load_dense_vectors,
    token_sequence,
    vectorize,
)
from cefrkit.levels import Language

from conftest import make_document


def doc_from_sentences(sentences, doc_id="d1"):
    return Document(id=doc_id, language=Language.de, sentences=sentences, labels={})


class TestDocLength:
    def test_empty(self):
        assert doc_length(doc_from_sentences([])) == 0

    def test_sum_over_sentences(self):
        doc = make_document("d1", n_sentences=2, sentence_length=5)
        doc.sentences[1][:] = doc.sentences[1][:3]
        assert doc_length(doc) == 8


class TestTokenSequence:
    def test_upos(self):
        sent = [
            Token("der", "DET", 2, "det"),
            Token("hund", "NOUN", 3, "nsubj"),
            Token("bellt", "VERB", 0, "root"),
        ]
        assert token_sequence(doc_from_sentences([sent]), "upos") == ["DET", "NOUN", "VERB"]

    def test_word(self):
        sent = [Token("der", "DET", 0, "root")]
        assert token_sequence(doc_from_sentences([sent]), "word") == ["der"]

    def test_dep_triplet_single_root(self):
        sent = [Token("geht", "VERB", 0, "root")]
        assert token_sequence(doc_from_sentences([sent]), "dep_triplet") == ["ROOT|VERB|root"]

    def test_dep_triplet_two_tokens(self):
        # NOUN <- VERB (nsubj), VERB is root
        sent = [Token("hund", "NOUN", 2, "nsubj"), Token("bellt", "VERB", 0, "root")]
        assert token_sequence(doc_from_sentences([sent]), "dep_triplet") == [
            "VERB|NOUN|nsubj",
            "ROOT|VERB|root",
        ]

    def test_length_equals_token_count(self):
        doc = make_document("d1", n_sentences=4, sentence_length=6)
        assert len(token_sequence(doc, "dep_triplet")) == doc_length(doc)


class TestExtractNgrams:
    def test_unigrams(self):
        assert extract_ngrams(["a", "b", "a"], NGramSpec("word", 1, 1)) == {"a": 2, "b": 1}

    def test_orders_one_to_two(self):
        counts = extract_ngrams(["DET", "NOUN", "VERB"], NGramSpec("upos", 1, 2))
        sep = NGRAM_SEP
        assert counts == {
            "DET": 1,
            "NOUN": 1,
            "VERB": 1,
            f"DET{sep}NOUN": 1,
            f"NOUN{sep}VERB": 1,
        }

    def test_short_sequence_caps_order(self):
        counts = extract_ngrams(["a", "b"], NGramSpec("word", 1, 5))
        assert max(key.count(NGRAM_SEP) for key in counts) == 1

    @given(
        seqs=st.lists(st.lists(st.sampled_from("abcd"), max_size=8), min_size=1, max_size=4),
        n_min=st.integers(1, 3),
        n_max=st.integers(3, 5),
    )
    def test_total_count_matches_window_enumeration(self, seqs, n_min, n_max):
        spec = NGramSpec("word", n_min, n_max)
        sentences = [[Token(c, "X", 0, "root") for c in seq] for seq in seqs]
        doc = doc_from_sentences(sentences)
        expected = sum(
            max(0, len(seq) - n + 1) for seq in seqs for n in range(n_min, n_max + 1)
        )
        assert sum(document_ngrams(doc, spec).values()) == expected


class TestVocabularyAndVectorize:
    def test_union_size(self):
        docs = [
            doc_from_sentences([[Token("x", "DET", 0, "root"), Token("y", "NOUN", 1, "obj")]], "d1"),
            doc_from_sentences([[Token("x", "NOUN", 0, "root"), Token("y", "VERB", 1, "obj")]], "d2"),
        ]
        vocab = build_vocabulary(docs, NGramSpec("upos", 1, 1))
        assert len(vocab) == 3

    def test_deterministic(self):
        docs = [make_document(f"d{i}", seed=i) for i in range(4)]
        spec = NGramSpec("upos", 1, 3)
        assert build_vocabulary(docs, spec).index == build_vocabulary(docs, spec).index

    def test_empty_training_set(self):
        with pytest.raises(FeatureError):
            build_vocabulary([], NGramSpec("upos"))
        with pytest.raises(FeatureError):
            build_vocabulary([doc_from_sentences([])], NGramSpec("upos"))

    def test_oov_row_is_zero(self):
        train = [doc_from_sentences([[Token("a", "DET", 0, "root")]], "t")]
        vocab = build_vocabulary(train, NGramSpec("upos", 1, 1))
        oov = doc_from_sentences([[Token("b", "VERB", 0, "root")]], "o")
        matrix = vectorize([oov], vocab)
        assert matrix.data.sum() == 0

    def test_row_sums_match_ngram_totals(self):
        docs = [make_document(f"d{i}", seed=i, n_sentences=2) for i in range(3)]
        spec = NGramSpec("dep_triplet", 1, 4)
        vocab = build_vocabulary(docs, spec)
        matrix = vectorize(docs, vocab)
        sums = np.asarray(matrix.data.sum(axis=1)).ravel()
        for i, doc in enumerate(docs):
            assert sums[i] == sum(document_ngrams(doc, spec).values())

    def test_permutation_permutes_rows(self):
        docs = [make_document(f"d{i}", seed=i) for i in range(3)]
        vocab = build_vocabulary(docs, NGramSpec("upos", 1, 2))
        a = vectorize(docs, vocab).data.toarray()
        b = vectorize(docs[::-1], vocab).data.toarray()
        assert (a == b[::-1]).all()


class TestDenseVectors:
    def test_roundtrip(self):
        text = "dim=3\nd1\t0.5 0.25 -1\n"
        table = load_dense_vectors(text, 3)
        assert len(table.vectors) == 1
        assert (table.vectors["d1"] == np.array([0.5, 0.25, -1.0])).all()

    def test_dimension_mismatch(self):
        with pytest.raises(FeatureError, match="dimension"):
            load_dense_vectors("dim=1024\n", 768)

    def test_wrong_value_count(self):
        with pytest.raises(FeatureError, match="expected 3"):
            load_dense_vectors("dim=3\nd1\t0.5 0.25\n", 3)

    def test_non_finite(self):
        with pytest.raises(FeatureError, match="non-finite"):
            load_dense_vectors("dim=2\nd1\t0.5 nan\n", 2)

    def test_duplicate_id(self):
        with pytest.raises(FeatureError, match="duplicate"):
            load_dense_vectors("dim=1\nd1\t0.5\nd1\t0.5\n", 1)

    def test_missing_vector_names_doc(self):
        table = load_dense_vectors("dim=1\nd1\t0.5\n", 1)
        missing = make_document("ghost")
        with pytest.raises(FeatureError, match="ghost"):
            table.matrix([missing])

    def test_format_roundtrip_exact(self):
        rng = np.random.default_rng(0)
        vec = rng.standard_normal(5)
        text = format_dense_vectors(5, [("d1", vec)])
        table = load_dense_vectors(text, 5)
        assert (table.vectors["d1"] == vec).all()
