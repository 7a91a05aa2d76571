"""Term weighting schemes: a local factor (TF or sqrt TF) times a collection factor.

Collection factors are computed for the whole vocabulary at once from a
``VocabStats`` table; the per-term functions below index into that result.
Class-anchored schemes use the stats' positive class as c_k, so ``A`` is the
positive-class document frequency and ``C`` the frequency everywhere else.
"""
from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from termweight.stats import VocabStats

DEFAULT_LAMBDA = 7.0


class Scheme(enum.Enum):
    TF = "tf"
    TF_IDF = "tf-idf"
    DELTA_TF_IDF = "dtf-idf"
    TF_IDF_ICF = "tf-idf-icf"
    TF_RF = "tf-rf"
    TF_IGM = "tf-igm"
    SQRT_TF_IGM = "stf-igm"
    TF_IGM_IMP = "tf-igm-imp"
    SQRT_TF_IGM_IMP = "stf-igm-imp"
    TF_IDFC_RF = "tf-idfc-rf"


_ALIASES = {
    "delta-tf-idf": Scheme.DELTA_TF_IDF,
    "sqrt-tf-igm": Scheme.SQRT_TF_IGM,
    "sqrt-tf-igm-imp": Scheme.SQRT_TF_IGM_IMP,
}
SQRT_LOCAL = frozenset({Scheme.SQRT_TF_IGM, Scheme.SQRT_TF_IGM_IMP, Scheme.TF_IDFC_RF})
IGM_KINDS = frozenset({Scheme.TF_IGM, Scheme.SQRT_TF_IGM, Scheme.TF_IGM_IMP, Scheme.SQRT_TF_IGM_IMP})


@dataclass(frozen=True)
class SchemeSpec:
    kind: Scheme
    lam: float = DEFAULT_LAMBDA

    def __post_init__(self):
        if not self.lam >= 0:
            raise ValueError(f"lambda must be >= 0, got {self.lam}")

    @classmethod
    def parse(cls, name: str, lam: float = DEFAULT_LAMBDA) -> "SchemeSpec":
        key = name.strip().lower().replace("_", "-")
        kind = _ALIASES.get(key)
        if kind is None:
            try:
                kind = Scheme(key)
            except ValueError:
                known = ", ".join(s.value for s in Scheme)
                raise ValueError(f"unknown scheme {name!r} (known: {known})") from None
        return cls(kind, float(lam))

    @property
    def name(self) -> str:
        if self.kind in IGM_KINDS and self.lam != DEFAULT_LAMBDA:
            return f"{self.kind.value}(lambda={self.lam:g})"
        return self.kind.value


ALL_SCHEMES = tuple(SchemeSpec(k) for k in Scheme)


@dataclass(frozen=True, eq=False)
class SparseVector:
    """Sorted term indices with their (nonzero) weights."""
    indices: np.ndarray
    values: np.ndarray

    @classmethod
    def from_dict(cls, entries: dict[int, float]) -> "SparseVector":
        items = sorted((int(i), float(v)) for i, v in entries.items() if v != 0)
        idx = np.array([i for i, _ in items], dtype=np.int64)
        val = np.array([v for _, v in items], dtype=np.float64)
        return cls(idx, val)

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.indices.tolist(), self.values.tolist()))

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return np.array_equal(self.indices, other.indices) and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"SparseVector({self.as_dict()})"


# -- collection factors, vectorised over the vocabulary ---------------------

def idf_factors(stats: VocabStats) -> np.ndarray:
    return np.log(stats.n_docs / stats.df)


def delta_idf_factors(stats: VocabStats) -> np.ndarray:
    a, c, n_p, n_n = stats.positive_counts()
    return np.log2((n_p * c + 0.5) / (a * n_n + 0.5))


def idf_icf_factors(stats: VocabStats) -> np.ndarray:
    cf = (stats.df_per_class > 0).sum(axis=1)
    return idf_factors(stats) * (1.0 + np.log(stats.n_classes / cf))


def rf_factors(stats: VocabStats) -> np.ndarray:
    a, c, _, _ = stats.positive_counts()
    return np.log2(2.0 + a / np.maximum(1, c))


def _sorted_df(stats: VocabStats) -> np.ndarray:
    return -np.sort(-stats.df_per_class, axis=1)


def igm_factors(stats: VocabStats) -> np.ndarray:
    f = _sorted_df(stats)
    ranks = np.arange(1, stats.n_classes + 1)
    return f[:, 0] / (f @ ranks)


def igm_imp_factors(stats: VocabStats) -> np.ndarray:
    f = _sorted_df(stats)
    ranks = np.arange(1, stats.n_classes + 1)
    # argmax keeps the first maximum, i.e. ties go to the lower class index
    top_class = np.argmax(stats.df_per_class, axis=1)
    d_total = stats.class_sizes[top_class]
    return f[:, 0] / (f @ ranks + np.log10(d_total / f[:, 0]))


def idfc_rf_factors(stats: VocabStats) -> np.ndarray:
    a, c, _, _ = stats.positive_counts()
    ratio = (2.0 + np.maximum(a, c)) / np.maximum(2, np.minimum(a, c))
    return np.log2(ratio) * np.sqrt(stats.n_docs - a - c)


def collection_factors(scheme: SchemeSpec, stats: VocabStats) -> np.ndarray:
    kind = scheme.kind
    if kind is Scheme.TF:
        return np.ones(len(stats))
    if kind is Scheme.TF_IDF:
        return idf_factors(stats)
    if kind is Scheme.DELTA_TF_IDF:
        return delta_idf_factors(stats)
    if kind is Scheme.TF_IDF_ICF:
        return idf_icf_factors(stats)
    if kind is Scheme.TF_RF:
        return rf_factors(stats)
    if kind in (Scheme.TF_IGM, Scheme.SQRT_TF_IGM):
        return 1.0 + scheme.lam * igm_factors(stats)
    if kind in (Scheme.TF_IGM_IMP, Scheme.SQRT_TF_IGM_IMP):
        return 1.0 + scheme.lam * igm_imp_factors(stats)
    if kind is Scheme.TF_IDFC_RF:
        return idfc_rf_factors(stats)
    raise ValueError(f"unhandled scheme {kind}")


# -- per-term views ----------------------------------------------------------

def _at(fn, stats: VocabStats, term: str) -> float:
    return float(fn(stats)[stats.index(term)])


def idf_factor(stats, term):
    return _at(idf_factors, stats, term)


def delta_idf_factor(stats, term):
    return _at(delta_idf_factors, stats, term)


def idf_icf_factor(stats, term):
    return _at(idf_icf_factors, stats, term)


def rf_factor(stats, term):
    return _at(rf_factors, stats, term)


def igm_factor(stats, term):
    return _at(igm_factors, stats, term)


def igm_imp_factor(stats, term):
    return _at(igm_imp_factors, stats, term)


def idfc_rf_factor(stats, term):
    return _at(idfc_rf_factors, stats, term)


def collection_factor(scheme: SchemeSpec, stats: VocabStats, term: str) -> float:
    return float(collection_factors(scheme, stats)[stats.index(term)])


def local_factor(scheme: SchemeSpec, tf) -> float:
    if tf < 0:
        raise ValueError("negative term frequency")
    return math.sqrt(tf) if scheme.kind in SQRT_LOCAL else float(tf)


# -- document vectors --------------------------------------------------------

def _l2(values: np.ndarray) -> np.ndarray:
    norm = np.sqrt(np.dot(values, values))
    return values / norm if norm > 0 else values


def weigh_document(doc, stats: VocabStats, scheme: SchemeSpec, feature_map=None,
                   normalize: bool = False, factors: np.ndarray | None = None) -> SparseVector:
    """Weight one preprocessed document against training statistics.

    Tokens outside the vocabulary (or outside ``feature_map`` when given) are
    dropped. With a feature map, indices are dense positions in the selected
    subspace; otherwise they are vocabulary indices. ``factors`` may carry the
    precomputed ``collection_factors(scheme, stats)``.
    """
    if factors is None:
        factors = collection_factors(scheme, stats)
    entries = {}
    for term, tf in Counter(doc.tokens).items():
        vi = stats.term_index.get(term)
        if vi is None:
            continue
        if feature_map is not None:
            fi = feature_map.index_of.get(term)
            if fi is None:
                continue
        else:
            fi = vi
        w = local_factor(scheme, tf) * factors[vi]
        if w != 0:
            entries[fi] = w
    vec = SparseVector.from_dict(entries)
    if normalize and len(vec):
        vec = SparseVector(vec.indices, _l2(vec.values))
    return vec


def term_count_matrix(docs, stats: VocabStats) -> sp.csr_matrix:
    """Documents x vocabulary matrix of raw in-document counts (OOV dropped)."""
    indptr = [0]
    indices: list[int] = []
    data: list[int] = []
    lookup = stats.term_index
    for doc in docs:
        counts = Counter(t for t in doc.tokens if t in lookup)
        cols = sorted(lookup[t] for t in counts)
        indices.extend(cols)
        data.extend(counts[stats.terms[j]] for j in cols)
        indptr.append(len(indices))
    return sp.csr_matrix((np.array(data, dtype=np.float64), np.array(indices, dtype=np.int64),
                          np.array(indptr, dtype=np.int64)), shape=(len(indptr) - 1, len(stats)))


def weigh_counts(counts: sp.csr_matrix, scheme: SchemeSpec, factors: np.ndarray,
                 columns: np.ndarray | None = None, normalize: bool = False) -> sp.csr_matrix:
    """Batch counterpart of ``weigh_document`` on a term-count matrix.

    ``columns`` lists vocabulary indices to keep, in output order.
    """
    local = np.sqrt(counts.data) if scheme.kind in SQRT_LOCAL else counts.data
    out = sp.csr_matrix((local * factors[counts.indices], counts.indices.copy(), counts.indptr.copy()),
                        shape=counts.shape)
    if columns is not None:
        out = out[:, columns]
    out.eliminate_zeros()
    out.sort_indices()
    if normalize:
        for i in range(out.shape[0]):
            lo, hi = out.indptr[i], out.indptr[i + 1]
            out.data[lo:hi] = _l2(out.data[lo:hi])
    return out


def rows_to_vectors(matrix: sp.csr_matrix) -> list[SparseVector]:
    m = matrix.tocsr()
    return [SparseVector(m.indices[m.indptr[i]:m.indptr[i + 1]].astype(np.int64),
                         m.data[m.indptr[i]:m.indptr[i + 1]].astype(np.float64))
            for i in range(m.shape[0])]


def vectors_to_matrix(vectors, n_features: int | None = None) -> sp.csr_matrix:
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    for i, v in enumerate(vectors):
        indptr[i + 1] = indptr[i] + len(v)
    indices = np.concatenate([v.indices for v in vectors]) if vectors else np.zeros(0, np.int64)
    data = np.concatenate([v.values for v in vectors]) if vectors else np.zeros(0)
    if n_features is None:
        n_features = int(indices.max()) + 1 if len(indices) else 0
    elif len(indices) and indices.max() >= n_features:
        raise ValueError("feature index out of range")
    return sp.csr_matrix((data, indices, indptr), shape=(len(vectors), n_features))


def dump_vectors(doc_ids, vectors) -> str:
    lines = []
    for doc_id, v in zip(doc_ids, vectors):
        body = ",".join(f"{i}:{w:.6f}" for i, w in zip(v.indices.tolist(), v.values.tolist()))
        lines.append(f"{doc_id}\t{body}")
    return "\n".join(lines) + ("\n" if lines else "")
