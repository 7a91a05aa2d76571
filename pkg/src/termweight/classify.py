"""Multinomial naive Bayes and a linear hinge-loss SVM on sparse vectors."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from termweight.weighting import SparseVector, vectors_to_matrix


class ClassifierError(ValueError):
    pass


def _as_matrix(vectors, n_features=None) -> sp.csr_matrix:
    if sp.issparse(vectors):
        m = vectors.tocsr()
        if n_features is not None and m.shape[1] != n_features:
            m = sp.csr_matrix((m.data, m.indices, m.indptr), shape=(m.shape[0], n_features))
        return m
    return vectors_to_matrix(list(vectors), n_features)


def _class_order(labels, classes):
    if classes is None:
        classes = sorted(set(labels))
    classes = tuple(classes)
    index = {c: k for k, c in enumerate(classes)}
    try:
        y = np.array([index[lab] for lab in labels], dtype=np.int64)
    except KeyError as exc:
        raise ClassifierError(f"label {exc.args[0]!r} not among classes {classes}") from None
    if len(classes) < 2:
        raise ClassifierError(f"need at least 2 classes, got {classes}")
    missing = [c for k, c in enumerate(classes) if not (y == k).any()]
    if missing:
        raise ClassifierError(f"class with no training vectors: {missing}")
    return classes, y


def make_nonnegative(vectors, mode: str = "abs"):
    """Prepare possibly negative weights (Delta TF-IDF) for multinomial NB.

    ``abs`` keeps each weight's magnitude; ``clip`` zeroes negatives and drops
    those entries. Clipping erases every term whose weight sign points to the
    positive class, so it cannot even fit a class-disjoint corpus.
    """
    if mode not in ("abs", "clip"):
        raise ValueError(f"unknown mode {mode!r}")
    fix = np.abs if mode == "abs" else (lambda a: np.maximum(a, 0.0))
    if sp.issparse(vectors):
        m = vectors.tocsr(copy=True)
        m.data = fix(m.data)
        m.eliminate_zeros()
        return m
    out = []
    for v in vectors:
        vals = fix(v.values)
        keep = vals != 0
        out.append(SparseVector(v.indices[keep], vals[keep]))
    return out


# -- naive Bayes -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NBModel:
    classes: tuple[str, ...]
    class_log_priors: np.ndarray
    feature_log_likelihoods: np.ndarray  # (n_classes, n_features)
    smoothing_alpha: float
    n_features: int

    def __eq__(self, other):
        if not isinstance(other, NBModel):
            return NotImplemented
        return (self.classes == other.classes and self.smoothing_alpha == other.smoothing_alpha
                and np.array_equal(self.class_log_priors, other.class_log_priors)
                and np.array_equal(self.feature_log_likelihoods, other.feature_log_likelihoods))

    def decision_matrix(self, vectors) -> np.ndarray:
        x = _as_matrix(vectors, self.n_features)
        return np.asarray(x @ self.feature_log_likelihoods.T) + self.class_log_priors

    def predict_indices(self, vectors) -> np.ndarray:
        # argmax returns the first maximum: ties go to the earlier class
        return np.argmax(self.decision_matrix(vectors), axis=1)


def nb_train(vectors, labels, alpha: float = 1.0, classes=None, n_features: int | None = None) -> NBModel:
    if not alpha > 0:
        raise ClassifierError("smoothing alpha must be positive")
    x = _as_matrix(vectors, n_features)
    if x.shape[0] != len(labels):
        raise ClassifierError("vectors and labels differ in length")
    if x.nnz and x.data.min() < 0:
        raise ClassifierError("negative feature weight reached the naive Bayes trainer")
    classes, y = _class_order(labels, classes)
    onehot = sp.csr_matrix((np.ones(len(y)), (y, np.arange(len(y)))), shape=(len(classes), len(y)))
    summed = np.asarray((onehot @ x).todense())  # S_kj
    n_feat = x.shape[1]
    loglik = np.log(summed + alpha) - np.log(summed.sum(axis=1, keepdims=True) + alpha * n_feat)
    priors = np.log(np.bincount(y, minlength=len(classes)) / len(y))
    return NBModel(classes, priors, loglik, float(alpha), n_feat)


def nb_predict(model: NBModel, vector: SparseVector) -> str:
    if len(vector) and vector.indices.max() >= model.n_features:
        raise ClassifierError("feature index out of range for model")
    return model.classes[int(model.predict_indices([vector])[0])]


# -- linear SVM --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SVMModel:
    weights: np.ndarray
    bias: float
    regularization_c: float
    positive_label: str
    negative_label: str
    objective_history: tuple[float, ...] = field(default=(), repr=False)
    dual_history: tuple[float, ...] = field(default=(), repr=False)

    @property
    def n_features(self) -> int:
        return len(self.weights)

    def __eq__(self, other):
        if not isinstance(other, SVMModel):
            return NotImplemented
        return (self.bias == other.bias and self.regularization_c == other.regularization_c
                and self.positive_label == other.positive_label
                and self.negative_label == other.negative_label
                and np.array_equal(self.weights, other.weights))

    def decision_values(self, vectors) -> np.ndarray:
        x = _as_matrix(vectors, self.n_features)
        return x @ self.weights + self.bias

    def predict_positive(self, vectors) -> np.ndarray:
        return self.decision_values(vectors) >= 0


def svm_objective(x: sp.csr_matrix, y: np.ndarray, weights, bias, c: float,
                  regularize_bias: bool = False) -> float:
    """lambda/2 |w|^2 + mean hinge loss, with lambda = 1/(c n).

    The trainer penalises the bias like a weight; ``regularize_bias=True``
    gives that objective, which upper-bounds the default one.
    """
    n = x.shape[0]
    lam = 1.0 / (c * n)
    margins = y * (x @ weights + bias)
    sq = float(weights @ weights) + (bias * bias if regularize_bias else 0.0)
    return 0.5 * lam * sq + float(np.maximum(0.0, 1.0 - margins).mean())


def svm_train(vectors, labels, c: float = 1.0, epochs: int = 20, seed: int = 42,
              positive_label: str | None = None, n_features: int | None = None,
              tol: float = 1e-4) -> SVMModel:
    """Dual coordinate descent for the L1-loss (hinge) linear SVM.

    Minimises 1/2|w|^2 + c * sum_i hinge_i, which has the same minimiser as
    lambda/2|w|^2 + mean hinge with lambda = 1/(c n). The bias is learned as
    the weight of a constant feature 1. Coordinates are visited in a seeded
    random order each epoch; training stops early once the projected
    gradient range drops below ``tol``. The dual objective rises
    monotonically; the primal need not, so the returned model is the best
    epoch by primal objective, never worse than the all-zero model. Both
    histories are on the per-sample scale of ``svm_objective`` with
    ``regularize_bias=True``.
    """
    if not c > 0:
        raise ClassifierError("c must be positive")
    x = _as_matrix(vectors, n_features)
    labels = list(labels)
    if x.shape[0] != len(labels):
        raise ClassifierError("vectors and labels differ in length")
    distinct = sorted(set(labels))
    if len(distinct) != 2:
        raise ClassifierError(f"SVM needs exactly 2 classes, got {distinct}")
    if positive_label is None:
        positive_label = distinct[0]
    if positive_label not in distinct:
        raise ClassifierError(f"positive label {positive_label!r} absent from training labels")
    negative_label = distinct[1] if distinct[0] == positive_label else distinct[0]
    y = np.where(np.array(labels, dtype=object) == positive_label, 1.0, -1.0)

    n, d = x.shape
    indptr, indices, data = x.indptr, x.indices, x.data
    qdiag = np.asarray(x.multiply(x).sum(axis=1)).ravel() + 1.0
    w = np.zeros(d)
    b = 0.0
    alpha = np.zeros(n)
    rng = np.random.default_rng(seed)

    scale = 1.0 / (c * n)

    def dual():
        return scale * (alpha.sum() - 0.5 * (float(w @ w) + b * b))

    best = (svm_objective(x, y, w, b, c, True), w.copy(), b)
    history = [best[0]]
    dual_history = [dual()]
    for _ in range(epochs):
        pg_max, pg_min = -np.inf, np.inf
        for i in rng.permutation(n):
            lo, hi = indptr[i], indptr[i + 1]
            cols, vals = indices[lo:hi], data[lo:hi]
            g = y[i] * (w[cols] @ vals + b) - 1.0
            a_i = alpha[i]
            if a_i == 0.0:
                pg = min(g, 0.0)
            elif a_i == c:
                pg = max(g, 0.0)
            else:
                pg = g
            pg_max, pg_min = max(pg_max, pg), min(pg_min, pg)
            if pg != 0.0:
                a_new = min(max(a_i - g / qdiag[i], 0.0), c)
                step = (a_new - a_i) * y[i]
                alpha[i] = a_new
                w[cols] += step * vals
                b += step
        obj = svm_objective(x, y, w, b, c, True)
        history.append(obj)
        dual_history.append(dual())
        if obj < best[0]:
            best = (obj, w.copy(), b)
        if pg_max - pg_min < tol:
            break
    return SVMModel(best[1], float(best[2]), float(c), positive_label, negative_label,
                    tuple(history), tuple(dual_history))


def svm_predict(model: SVMModel, vector: SparseVector) -> str:
    positive = bool(model.predict_positive([vector])[0])
    return model.positive_label if positive else model.negative_label


def dump_model(model) -> str:
    """Diagnostic JSON text with numbers printed to 6 decimals."""
    def arr(values):
        return "[" + ", ".join(f"{v:.6f}" for v in np.ravel(values)) + "]"

    if isinstance(model, NBModel):
        rows = ",\n    ".join(arr(r) for r in model.feature_log_likelihoods)
        return ("{\n"
                f'  "type": "multinomial_nb",\n'
                f'  "classes": {json.dumps(list(model.classes))},\n'
                f'  "alpha": {model.smoothing_alpha:.6f},\n'
                f'  "class_log_priors": {arr(model.class_log_priors)},\n'
                f'  "feature_log_likelihoods": [\n    {rows}\n  ]\n'
                "}\n")
    return ("{\n"
            f'  "type": "linear_svm",\n'
            f'  "positive_label": {json.dumps(model.positive_label)},\n'
            f'  "negative_label": {json.dumps(model.negative_label)},\n'
            f'  "c": {model.regularization_c:.6f},\n'
            f'  "bias": {model.bias:.6f},\n'
            f'  "weights": {arr(model.weights)}\n'
            "}\n")
