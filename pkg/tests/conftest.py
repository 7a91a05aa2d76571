import random

import pytest

from termweight.corpus import Document, LabeledCorpus
from termweight.stats import stats_from_counts


def make_corpus(docs, labels=("neg", "pos"), positive="pos"):
    """docs: iterable of (label, tokens)."""
    documents = tuple(Document(id=f"d{i:05d}", raw_text=" ".join(toks), label=lab, tokens=tuple(toks))
                      for i, (lab, toks) in enumerate(docs))
    return LabeledCorpus(documents, tuple(labels), positive)


def table2_docs():
    """100 documents realising the worked two-term example: 30 pos, 70 neg;
    t1 in 27 pos / 5 neg docs, t2 in 10 pos / 25 neg docs."""
    docs = []
    for i in range(30):
        docs.append(("pos", ["t1"] * (i < 27) + ["t2"] * (i < 10)))
    for i in range(70):
        docs.append(("neg", ["t1"] * (i < 5) + ["t2"] * (i < 25)))
    return docs


@pytest.fixture
def table2_stats():
    return stats_from_counts({"t1": (27, 5), "t2": (10, 25)}, (30, 70))


@pytest.fixture
def table2_corpus():
    return make_corpus(table2_docs())


def random_corpus(rng: random.Random, n_docs, n_terms, max_len=12, labels=("neg", "pos")):
    vocab = [f"w{j}" for j in range(n_terms)]
    docs = []
    for i in range(n_docs):
        # guarantee both classes are present
        label = labels[i % 2] if i < 2 else rng.choice(labels)
        docs.append((label, [rng.choice(vocab) for _ in range(rng.randint(1, max_len))]))
    return make_corpus(docs, labels)


def separable_docs(n_per_class=20, seed=0):
    """Class-disjoint vocabularies: pos docs use p*, neg docs use n*."""
    rng = random.Random(seed)
    docs = []
    for i in range(n_per_class):
        docs.append(("pos", [f"p{rng.randrange(8)}" for _ in range(6)]))
        docs.append(("neg", [f"n{rng.randrange(8)}" for _ in range(6)]))
    return docs


def write_dir_corpus(root, docs):
    for i, (label, toks) in enumerate(docs):
        d = root / label
        d.mkdir(parents=True, exist_ok=True)
        (d / f"doc{i:04d}.txt").write_text(" ".join(toks))
    return root


def brute_chi2(corpus, term):
    """Scan documents, fill each class's 2x2 table, take the max statistic."""
    best = 0.0
    n = len(corpus)
    for label in corpus.labels:
        a = b = c = d = 0
        for doc in corpus.documents:
            present = term in doc.tokens
            inside = doc.label == label
            if inside and present:
                a += 1
            elif inside:
                b += 1
            elif present:
                c += 1
            else:
                d += 1
        denom = (a + c) * (b + d) * (a + b) * (c + d)
        score = n * (a * d - c * b) ** 2 / denom if denom else 0.0
        best = max(best, score)
    return best
