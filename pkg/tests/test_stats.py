import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_corpus, random_corpus
from termweight.stats import (Contingency, StatsError, build_vocab_stats, contingency,
                              dump_stats_tsv)


def test_small_counts():
    corpus = make_corpus([("pos", ["good", "good", "film"]), ("neg", ["bad"])])
    stats = build_vocab_stats(corpus)
    assert stats.terms == ("bad", "film", "good")
    assert stats.class_labels == ("neg", "pos")
    good = stats.df_per_class[stats.index("good")]
    bad = stats.df_per_class[stats.index("bad")]
    pos = stats.class_labels.index("pos")
    assert good[pos] == 1 and good[1 - pos] == 0
    assert bad[pos] == 0 and bad[1 - pos] == 1
    assert stats.n_docs == 2


def test_table2_from_documents(table2_corpus, table2_stats):
    stats = build_vocab_stats(table2_corpus)
    pos = stats.positive_index
    assert stats.class_sizes[pos] == 30 and stats.n_docs == 100
    assert tuple(stats.df_per_class[stats.index("t1")]) [pos] == 27
    assert contingency(stats, "t1", pos) == contingency(table2_stats, "t1", 0)
    assert contingency(stats, "t2", pos) == contingency(table2_stats, "t2", 0)


def test_table2_contingency(table2_stats):
    assert contingency(table2_stats, "t1", 0) == Contingency(27, 3, 5, 65)
    assert contingency(table2_stats, "t2", 0) == Contingency(10, 20, 25, 45)
    assert contingency(table2_stats, "t1", 1) == Contingency(5, 65, 27, 3)


def test_errors(table2_stats):
    corpus = make_corpus([("pos", ["a"]), ("neg", ["b"])])
    with pytest.raises(StatsError, match="zero training"):
        build_vocab_stats(corpus, ["d00000"])
    with pytest.raises(StatsError, match="empty"):
        build_vocab_stats(corpus, [])
    with pytest.raises(StatsError, match="unknown term"):
        contingency(table2_stats, "zzz", 0)
    with pytest.raises(StatsError, match="class index"):
        contingency(table2_stats, "t1", 2)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000))
def test_contingency_properties(seed):
    rng = random.Random(seed)
    corpus = random_corpus(rng, rng.randint(2, 30), rng.randint(1, 15))
    stats = build_vocab_stats(corpus)
    assert stats.n_docs == len(corpus)
    assert (stats.df_per_class <= stats.class_sizes).all()
    assert (stats.df >= 1).all()
    for term in stats.terms:
        c0 = contingency(stats, term, 0)
        c1 = contingency(stats, term, 1)
        assert sum(c0) == stats.n_docs and min(c0) >= 0
        assert (c1.a, c1.b, c1.c, c1.d) == (c0.c, c0.d, c0.a, c0.b)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000))
def test_df_additive_over_disjoint_subsets(seed):
    rng = random.Random(seed)
    corpus = random_corpus(rng, 24, 10)
    ids = corpus.ids
    # both halves need both classes: interleave by class
    pos = [d.id for d in corpus.documents if d.label == "pos"]
    neg = [d.id for d in corpus.documents if d.label == "neg"]
    if len(pos) < 2 or len(neg) < 2:
        return
    left = set(pos[::2] + neg[::2])
    right = set(ids) - left
    whole, s1, s2 = (build_vocab_stats(corpus, s) for s in (ids, left, right))
    for term in whole.terms:
        total = np.zeros(2, dtype=np.int64)
        for part in (s1, s2):
            if term in part.term_index:
                total += part.df_per_class[part.index(term)]
        assert (total == whole.df_per_class[whole.index(term)]).all()
    assert (s1.class_sizes + s2.class_sizes == whole.class_sizes).all()


def test_dump_tsv(table2_stats):
    assert dump_stats_tsv(table2_stats) == "t1\t27\t5\nt2\t10\t25\n"
