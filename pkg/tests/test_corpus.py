import string
import unicodedata

import pytest
from hypothesis import given, strategies as st

from termweight.corpus import (CorpusError, Document, LabeledCorpus, load_directory_corpus,
                               load_line_corpus, preprocess)


def test_preprocess_examples():
    assert preprocess("Great MOVIE!!") == ["great", "movie"]
    assert preprocess("") == []
    assert preprocess("it's a so-so film") == ["it", "s", "a", "so", "so", "film"]


def test_preprocess_unicode_punctuation():
    assert preprocess("«Bravo»—encore… ¡sí!") == ["bravo", "encore", "sí"]


def _is_punct(ch):
    return ch in string.punctuation or unicodedata.category(ch).startswith("P")


@given(st.text())
def test_preprocess_tokens_clean(text):
    for tok in preprocess(text):
        assert tok
        assert tok == tok.lower()
        assert not any(_is_punct(ch) for ch in tok)
        assert not any(ch.isspace() for ch in tok)


@given(st.text())
def test_preprocess_idempotent(text):
    once = preprocess(text)
    assert preprocess(" ".join(once)) == once


def test_directory_corpus(tmp_path):
    (tmp_path / "pos").mkdir()
    (tmp_path / "neg").mkdir()
    (tmp_path / "pos" / "b.txt").write_text("Nice film.")
    (tmp_path / "pos" / "a.txt").write_text("Great MOVIE!!")
    (tmp_path / "neg" / "c.txt").write_bytes(b"bad \xff film")
    corpus = load_directory_corpus(tmp_path)
    assert len(corpus) == 3
    assert corpus.labels == ("neg", "pos")
    assert corpus.positive_label == "pos"
    assert corpus.ids == ["neg/c.txt", "pos/a.txt", "pos/b.txt"]
    assert corpus["pos/a.txt"].tokens == ("great", "movie")
    assert corpus["neg/c.txt"].tokens == ("bad", "�", "film")
    assert load_directory_corpus(tmp_path).ids == corpus.ids


def test_directory_corpus_errors(tmp_path):
    with pytest.raises(CorpusError, match="not found"):
        load_directory_corpus(tmp_path / "missing")
    (tmp_path / "pos").mkdir()
    (tmp_path / "pos" / "a.txt").write_text("x")
    with pytest.raises(CorpusError, match="fewer than 2 classes"):
        load_directory_corpus(tmp_path)


def test_line_corpus(tmp_path):
    pos = tmp_path / "pos.txt"
    neg = tmp_path / "neg.txt"
    pos.write_bytes(b"good one\r\n\r\ngreat\r\n")
    neg.write_text("awful\nmeh\n")
    corpus = load_line_corpus(pos, neg)
    assert len(corpus) == 4
    assert corpus.class_counts() == {"neg": 2, "pos": 2}
    assert corpus.positive_label == "pos"
    assert corpus["pos/1"].tokens == ("good", "one")
    assert corpus["pos/3"].tokens == ("great",)


def test_line_corpus_counts(tmp_path):
    pos = tmp_path / "pos.txt"
    neg = tmp_path / "neg.txt"
    pos.write_text("".join(f"subjective {i}\n" for i in range(5000)))
    neg.write_text("".join(f"objective {i}\n" for i in range(5000)))
    assert len(load_line_corpus(pos, neg)) == 10000


def test_line_corpus_errors(tmp_path):
    empty = tmp_path / "e.txt"
    empty.write_text("\n\n")
    with pytest.raises(CorpusError, match="empty"):
        load_line_corpus(empty, empty)
    with pytest.raises(CorpusError, match="not found"):
        load_line_corpus(tmp_path / "nope", empty)


def test_corpus_invariants():
    doc = Document("a", "x", "pos")
    with pytest.raises(CorpusError):
        LabeledCorpus((doc, doc), ("neg", "pos"), "pos")
    with pytest.raises(CorpusError):
        LabeledCorpus((doc,), ("neg", "pos"), "other")
    with pytest.raises(CorpusError):
        LabeledCorpus((Document("b", "x", "zzz"),), ("neg", "pos"), "pos")


def test_polarity_layout_size(tmp_path):
    for label in ("pos", "neg"):
        (tmp_path / label).mkdir()
        for i in range(1000):
            (tmp_path / label / f"cv{i:03d}.txt").write_text(f"review {i}")
    corpus = load_directory_corpus(tmp_path)
    assert len(corpus) == 2000
    assert corpus.class_counts() == {"neg": 1000, "pos": 1000}
