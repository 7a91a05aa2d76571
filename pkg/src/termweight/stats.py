"""Per-term, per-class document frequencies of a training set."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from termweight.corpus import LabeledCorpus


class StatsError(ValueError):
    pass


class Contingency(NamedTuple):
    a: int  # in class, term present
    b: int  # in class, term absent
    c: int  # outside class, term present
    d: int  # outside class, term absent


@dataclass(frozen=True, eq=False)
class VocabStats:
    terms: tuple[str, ...]
    class_labels: tuple[str, ...]
    class_sizes: np.ndarray  # (M,)
    df_per_class: np.ndarray  # (n_terms, M)
    positive_index: int = 0
    term_index: dict = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.class_labels) != len(self.class_sizes) or self.df_per_class.shape[1:] != (len(self.class_sizes),):
            raise StatsError("class labels, class sizes and df table disagree on the number of classes")
        if self.term_index is None:
            object.__setattr__(self, "term_index", {t: i for i, t in enumerate(self.terms)})
        self.class_sizes.setflags(write=False)
        self.df_per_class.setflags(write=False)

    @property
    def n_docs(self) -> int:
        return int(self.class_sizes.sum())

    @property
    def n_classes(self) -> int:
        return len(self.class_labels)

    @property
    def df(self) -> np.ndarray:
        return self.df_per_class.sum(axis=1)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, VocabStats):
            return NotImplemented
        return (self.terms == other.terms and self.class_labels == other.class_labels
                and self.positive_index == other.positive_index
                and np.array_equal(self.class_sizes, other.class_sizes)
                and np.array_equal(self.df_per_class, other.df_per_class))

    def index(self, term: str) -> int:
        try:
            return self.term_index[term]
        except KeyError:
            raise StatsError(f"unknown term: {term!r}") from None

    def positive_counts(self):
        """Vectorised (A, C, N_p, N_n) anchored to the positive class."""
        a = self.df_per_class[:, self.positive_index]
        c = self.df - a
        n_p = int(self.class_sizes[self.positive_index])
        return a, c, n_p, self.n_docs - n_p


def build_vocab_stats(corpus: LabeledCorpus, doc_subset=None) -> VocabStats:
    """Count, per term and class, the documents containing the term.

    ``doc_subset`` is a collection of document ids (all documents if None).
    Every class of the corpus must keep at least one document.
    """
    if doc_subset is None:
        docs = corpus.documents
    else:
        wanted = set(doc_subset)
        docs = [d for d in corpus.documents if d.id in wanted]
    if not docs:
        raise StatsError("empty training subset")
    labels = corpus.labels
    class_of = {lab: k for k, lab in enumerate(labels)}
    sizes = np.zeros(len(labels), dtype=np.int64)
    counts: dict[str, np.ndarray] = {}
    for doc in docs:
        k = class_of[doc.label]
        sizes[k] += 1
        for tok in set(doc.tokens):
            row = counts.get(tok)
            if row is None:
                row = counts[tok] = np.zeros(len(labels), dtype=np.int64)
            row[k] += 1
    empty = [lab for lab, n in zip(labels, sizes) if n == 0]
    if empty:
        raise StatsError(f"class with zero training documents: {empty}")
    terms = tuple(sorted(counts))
    table = np.array([counts[t] for t in terms], dtype=np.int64).reshape(len(terms), len(labels))
    return VocabStats(terms, tuple(labels), sizes, table, labels.index(corpus.positive_label))


def stats_from_counts(df: dict[str, tuple[int, ...]], class_sizes, class_labels=("pos", "neg"),
                      positive_index: int = 0) -> VocabStats:
    """Build stats directly from a df table, e.g. a worked example."""
    terms = tuple(sorted(df))
    sizes = np.asarray(class_sizes, dtype=np.int64)
    table = np.array([df[t] for t in terms], dtype=np.int64).reshape(len(terms), len(sizes))
    if (table > sizes).any() or (table.sum(axis=1) < 1).any():
        raise StatsError("df counts inconsistent with class sizes")
    return VocabStats(terms, tuple(class_labels), sizes, table, positive_index)


def contingency(stats: VocabStats, term: str, class_index: int) -> Contingency:
    i = stats.index(term)
    if not 0 <= class_index < stats.n_classes:
        raise StatsError(f"bad class index {class_index}")
    a = int(stats.df_per_class[i, class_index])
    b = int(stats.class_sizes[class_index]) - a
    c = int(stats.df_per_class[i].sum()) - a
    d = stats.n_docs - a - b - c
    return Contingency(a, b, c, d)


def dump_stats_tsv(stats: VocabStats) -> str:
    lines = []
    for term, row in zip(stats.terms, stats.df_per_class):
        lines.append("\t".join([term, *(str(int(x)) for x in row)]))
    return "\n".join(lines) + ("\n" if lines else "")
