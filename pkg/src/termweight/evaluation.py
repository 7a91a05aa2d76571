"""Stratified cross-validation, weighted P/R/F1 and the experiment grid."""
from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from termweight.classify import make_nonnegative, nb_train, svm_train
from termweight.corpus import LabeledCorpus
from termweight.rng import SplitMix64
from termweight.selection import FeatureMap, rank_terms
from termweight.stats import VocabStats, build_vocab_stats
from termweight.weighting import SchemeSpec, collection_factors, term_count_matrix, weigh_counts

log = logging.getLogger(__name__)

CLASSIFIERS = ("nb", "svm")
DEFAULT_FEATURE_SIZES = (500, 1000, 2000, 4000, 6000, 8000, 10000, 12000, 14000)


class ExperimentError(RuntimeError):
    pass


# -- folds -------------------------------------------------------------------

@dataclass(frozen=True)
class FoldPlan:
    k: int
    doc_ids: tuple[str, ...]
    assignments: tuple[int, ...]  # fold of each doc, aligned with doc_ids

    def test_ids(self, fold: int) -> list[str]:
        return [d for d, f in zip(self.doc_ids, self.assignments) if f == fold]

    def train_ids(self, fold: int) -> list[str]:
        return [d for d, f in zip(self.doc_ids, self.assignments) if f != fold]


def stratified_kfold(corpus: LabeledCorpus, k: int = 5, seed: int = 42) -> FoldPlan:
    """Shuffle each class with SplitMix64(seed), then deal round-robin from fold 0.

    Classes are processed in ``corpus.labels`` order from one generator
    stream; within a class the pre-shuffle order is corpus order.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    rng = SplitMix64(seed)
    fold_of = {}
    for label in corpus.labels:
        members = [d.id for d in corpus.documents if d.label == label]
        if len(members) < k:
            raise ValueError(f"class {label!r} has {len(members)} documents, fewer than k={k}")
        rng.shuffle(members)
        for pos, doc_id in enumerate(members):
            fold_of[doc_id] = pos % k
    ids = tuple(corpus.ids)
    return FoldPlan(k, ids, tuple(fold_of[d] for d in ids))


# -- metrics -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    counts: np.ndarray  # [true, predicted]
    class_order: tuple[str, ...]

    @classmethod
    def from_labels(cls, true, predicted, class_order) -> "ConfusionMatrix":
        index = {c: i for i, c in enumerate(class_order)}
        m = np.zeros((len(class_order), len(class_order)), dtype=np.int64)
        for t, p in zip(true, predicted):
            m[index[t], index[p]] += 1
        return cls(m, tuple(class_order))

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __add__(self, other):
        return ConfusionMatrix(self.counts + other.counts, self.class_order)


def precision_recall(confusion: ConfusionMatrix, class_index: int) -> tuple[float, float]:
    m = confusion.counts
    tp = m[class_index, class_index]
    predicted = m[:, class_index].sum()
    actual = m[class_index, :].sum()
    precision = tp / predicted if predicted else 0.0
    recall = tp / actual if actual else 0.0
    return float(precision), float(recall)


def weighted_scores(confusion: ConfusionMatrix) -> tuple[float, float, float]:
    """Support-weighted (precision, recall, F1) over classes."""
    total = confusion.total
    if total < 1:
        raise ValueError("empty confusion matrix")
    p_w = r_w = f_w = 0.0
    for i in range(len(confusion.class_order)):
        weight = confusion.counts[i, :].sum() / total
        p, r = precision_recall(confusion, i)
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        p_w += weight * p
        r_w += weight * r
        f_w += weight * f
    return float(p_w), float(r_w), float(f_w)


def weighted_f1(confusion: ConfusionMatrix) -> float:
    return weighted_scores(confusion)[2]


# -- one fold ----------------------------------------------------------------

@dataclass
class FoldData:
    """Training statistics and count matrices for one fold."""
    stats: VocabStats
    ranking: FeatureMap
    train_counts: object
    test_counts: object
    train_labels: list
    test_labels: list

    @classmethod
    def build(cls, corpus: LabeledCorpus, train_ids, test_ids) -> "FoldData":
        stats = build_vocab_stats(corpus, train_ids)
        train_docs = [corpus[i] for i in train_ids]
        test_docs = [corpus[i] for i in test_ids]
        return cls(stats, rank_terms(stats),
                   term_count_matrix(train_docs, stats), term_count_matrix(test_docs, stats),
                   [d.label for d in train_docs], [d.label for d in test_docs])

    def design(self, scheme: SchemeSpec, feature_size: int, factors=None, normalize=False):
        if factors is None:
            factors = collection_factors(scheme, self.stats)
        cols = self.ranking.head(feature_size).vocab_indices
        return (weigh_counts(self.train_counts, scheme, factors, cols, normalize),
                weigh_counts(self.test_counts, scheme, factors, cols, normalize))


def train_classifier(name: str, x, labels, corpus: LabeledCorpus, *, alpha=1.0, c=1.0,
                     epochs=20, seed=42, nb_negative="abs"):
    if name == "nb":
        return nb_train(make_nonnegative(x, nb_negative), labels, alpha=alpha, classes=corpus.labels)
    if name == "svm":
        return svm_train(x, labels, c=c, epochs=epochs, seed=seed, positive_label=corpus.positive_label)
    raise ValueError(f"unknown classifier {name!r} (known: {', '.join(CLASSIFIERS)})")


def predict_labels(name: str, model, x, nb_negative="abs") -> list[str]:
    if name == "nb":
        return [model.classes[i] for i in model.predict_indices(make_nonnegative(x, nb_negative))]
    pos = model.predict_positive(x)
    return [model.positive_label if p else model.negative_label for p in pos]


@dataclass
class FoldArtifacts:
    stats: VocabStats
    feature_map: FeatureMap
    model: object


def fit_fold(corpus: LabeledCorpus, train_ids, scheme: SchemeSpec, feature_size: int,
             classifier: str, **clf_params) -> FoldArtifacts:
    """Everything learned from one training partition (no test data involved)."""
    data = FoldData.build(corpus, train_ids, [])
    x_train, _ = data.design(scheme, feature_size)
    model = train_classifier(classifier, x_train, data.train_labels, corpus, **clf_params)
    return FoldArtifacts(data.stats, data.ranking.head(feature_size), model)


# -- report ------------------------------------------------------------------

@dataclass(frozen=True)
class ReportRow:
    scheme: str
    feature_size: int
    classifier: str
    fold: object  # int fold index or "mean"
    precision_w: float
    recall_w: float
    f1_w: float


@dataclass
class EvalReport:
    rows: list = field(default_factory=list)

    CSV_HEADER = ("scheme", "feature_size", "classifier", "fold", "precision_w", "recall_w", "f1_w")

    def mean_rows(self) -> list[ReportRow]:
        return [r for r in self.rows if r.fold == "mean"]

    def mean_f1(self, scheme: str, feature_size: int, classifier: str) -> float:
        for r in self.mean_rows():
            if (r.scheme, r.feature_size, r.classifier) == (scheme, feature_size, classifier):
                return r.f1_w
        raise KeyError((scheme, feature_size, classifier))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.CSV_HEADER)
        for r in self.rows:
            writer.writerow([r.scheme, r.feature_size, r.classifier, r.fold,
                             f"{100 * r.precision_w:.4f}", f"{100 * r.recall_w:.4f}",
                             f"{100 * r.f1_w:.4f}"])
        return buf.getvalue()

    def f1_matrix_text(self) -> str:
        """Mean weighted F1 (percent), one block per classifier: sizes x schemes."""
        means = self.mean_rows()
        schemes = list(dict.fromkeys(r.scheme for r in means))
        sizes = list(dict.fromkeys(r.feature_size for r in means))
        lines = []
        for clf in dict.fromkeys(r.classifier for r in means):
            lines.append(f"[{clf}] mean weighted F1 (%)")
            lines.append("\t".join(["features", *schemes]))
            for size in sizes:
                cells = [f"{100 * self.mean_f1(s, size, clf):.2f}" for s in schemes]
                lines.append("\t".join([str(size), *cells]))
            lines.append("")
        return "\n".join(lines)


def run_experiment(corpus: LabeledCorpus, schemes, feature_sizes, classifiers=CLASSIFIERS,
                   k: int = 5, seed: int = 42, threads: int = 1, normalize: bool = False,
                   alpha: float = 1.0, c: float = 1.0, epochs: int = 20,
                   nb_negative: str = "abs") -> EvalReport:
    """Cross-validate every (scheme, feature size, classifier) cell.

    Per fold, vocabulary statistics, chi-square ranking and collection factors
    come from the training partition only; test documents are weighted with
    them. Cell values are fold means. ``nb_negative`` picks how naive Bayes
    sees negative weights (see ``make_nonnegative``); the SVM gets them as is.
    """
    schemes = list(schemes)
    feature_sizes = [int(s) for s in feature_sizes]
    classifiers = list(classifiers)
    if not schemes or not feature_sizes or not classifiers:
        raise ValueError("empty experiment grid")
    if min(feature_sizes) < 1:
        raise ValueError("feature sizes must be positive")
    for name in classifiers:
        if name not in CLASSIFIERS:
            raise ValueError(f"unknown classifier {name!r} (known: {', '.join(CLASSIFIERS)})")
    plan = stratified_kfold(corpus, k, seed)

    def run_fold(fold):
        data = FoldData.build(corpus, plan.train_ids(fold), plan.test_ids(fold))
        out = {}
        for scheme in schemes:
            factors = collection_factors(scheme, data.stats)
            for size in feature_sizes:
                x_train, x_test = data.design(scheme, size, factors, normalize)
                for name in classifiers:
                    try:
                        model = train_classifier(name, x_train, data.train_labels, corpus,
                                                 alpha=alpha, c=c, epochs=epochs, seed=seed,
                                                 nb_negative=nb_negative)
                        pred = predict_labels(name, model, x_test, nb_negative)
                    except Exception as exc:
                        raise ExperimentError(f"cell scheme={scheme.name} features={size} "
                                              f"classifier={name} fold={fold} failed: {exc}") from exc
                    cm = ConfusionMatrix.from_labels(data.test_labels, pred, corpus.labels)
                    out[scheme.name, size, name] = weighted_scores(cm)
        log.info("fold %d/%d done", fold + 1, k)
        return out

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_fold = list(pool.map(run_fold, range(k)))
    else:
        per_fold = [run_fold(f) for f in range(k)]

    report = EvalReport()
    for scheme in schemes:
        for size in feature_sizes:
            for name in classifiers:
                key = (scheme.name, size, name)
                scores = [per_fold[f][key] for f in range(k)]
                for f, (p, r, f1) in enumerate(scores):
                    report.rows.append(ReportRow(scheme.name, size, name, f, p, r, f1))
                p, r, f1 = (float(np.mean(col)) for col in zip(*scores))
                report.rows.append(ReportRow(scheme.name, size, name, "mean", p, r, f1))
    return report
