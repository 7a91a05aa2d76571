"""Chi-square feature scoring and top-k term selection."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from termweight.stats import VocabStats


def chi2_per_class(stats: VocabStats) -> np.ndarray:
    """(n_terms, M) chi-square statistic of each term against each class.

    Cells where any marginal of the 2x2 table is zero score 0.
    """
    n = float(stats.n_docs)
    a = stats.df_per_class.astype(np.float64)
    b = stats.class_sizes[None, :] - a
    c = stats.df[:, None] - a
    d = n - a - b - c
    denom = (a + c) * (b + d) * (a + b) * (c + d)
    num = n * (a * d - c * b) ** 2
    out = np.zeros_like(num)
    np.divide(num, denom, out=out, where=denom > 0)
    return out


def chi2_scores(stats: VocabStats) -> np.ndarray:
    """CHI2_max for every vocabulary term."""
    return chi2_per_class(stats).max(axis=1)


def chi2_score(stats: VocabStats, term: str) -> float:
    return float(chi2_scores(stats)[stats.index(term)])


@dataclass(frozen=True, eq=False)
class FeatureMap:
    selected: tuple[str, ...]
    vocab_indices: np.ndarray  # column of each selected term in the stats vocabulary
    scores: np.ndarray
    index_of: dict = field(default=None, repr=False)

    def __post_init__(self):
        if self.index_of is None:
            object.__setattr__(self, "index_of", {t: i for i, t in enumerate(self.selected)})

    def __len__(self):
        return len(self.selected)

    def __eq__(self, other):
        if not isinstance(other, FeatureMap):
            return NotImplemented
        return self.selected == other.selected and np.array_equal(self.scores, other.scores)

    def head(self, k: int) -> "FeatureMap":
        return FeatureMap(self.selected[:k], self.vocab_indices[:k], self.scores[:k])


def rank_terms(stats: VocabStats) -> FeatureMap:
    """All terms ordered by descending CHI2_max, ties by term."""
    scores = chi2_scores(stats)
    # vocabulary indices follow lexicographic term order, so they break ties
    order = np.lexsort((np.arange(len(stats)), -scores))
    return FeatureMap(tuple(stats.terms[i] for i in order), order, scores[order])


def select_top_k(stats: VocabStats, k: int) -> FeatureMap:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return rank_terms(stats).head(k)


def dump_selection_tsv(fmap: FeatureMap) -> str:
    lines = [f"{r}\t{t}\t{s:.6f}" for r, (t, s) in enumerate(zip(fmap.selected, fmap.scores), start=1)]
    return "\n".join(lines) + ("\n" if lines else "")
