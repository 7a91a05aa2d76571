"""Labeled corpus loading and text preprocessing."""
from __future__ import annotations

import string
import unicodedata
from dataclasses import dataclass, field, replace
from pathlib import Path


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Document:
    id: str
    raw_text: str
    label: str
    tokens: tuple[str, ...] = ()


@dataclass(frozen=True)
class LabeledCorpus:
    documents: tuple[Document, ...]
    labels: tuple[str, ...]
    positive_label: str
    _by_id: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if len(self.labels) < 2:
            raise CorpusError(f"fewer than 2 classes: {list(self.labels)}")
        if len(set(self.labels)) != len(self.labels):
            raise CorpusError("duplicate class labels")
        if self.positive_label not in self.labels:
            raise CorpusError(f"positive label {self.positive_label!r} not in {list(self.labels)}")
        by_id = {}
        for doc in self.documents:
            if doc.label not in self.labels:
                raise CorpusError(f"document {doc.id!r} has unknown label {doc.label!r}")
            if doc.id in by_id:
                raise CorpusError(f"duplicate document id {doc.id!r}")
            by_id[doc.id] = doc
        object.__setattr__(self, "_by_id", by_id)

    def __len__(self):
        return len(self.documents)

    def __getitem__(self, doc_id: str) -> Document:
        return self._by_id[doc_id]

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.documents]

    def class_counts(self) -> dict[str, int]:
        counts = dict.fromkeys(self.labels, 0)
        for d in self.documents:
            counts[d.label] += 1
        return counts

    def without(self, doc_ids) -> "LabeledCorpus":
        drop = set(doc_ids)
        return replace(self, documents=tuple(d for d in self.documents if d.id not in drop))


_ASCII_PUNCT = frozenset(string.punctuation)


def _is_punct(ch: str) -> bool:
    return ch in _ASCII_PUNCT or unicodedata.category(ch).startswith("P")


def preprocess(raw_text: str) -> list[str]:
    """Lowercase, replace punctuation with spaces, split on whitespace.

    >>> preprocess("it's a so-so film")
    ['it', 's', 'a', 'so', 'so', 'film']
    """
    lowered = raw_text.lower()
    cleaned = "".join(" " if _is_punct(ch) else ch for ch in lowered)
    return cleaned.split()


def tokenize_corpus(corpus: LabeledCorpus) -> LabeledCorpus:
    docs = tuple(replace(d, tokens=tuple(preprocess(d.raw_text))) for d in corpus.documents)
    return replace(corpus, documents=docs)


def _read_text(path: Path) -> str:
    try:
        return path.read_bytes().decode("utf-8", errors="replace")
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc


def _pick_positive(labels, positive_label):
    if positive_label is not None:
        return positive_label
    return "pos" if "pos" in labels else labels[0]


def load_directory_corpus(root_path, positive_label: str | None = None,
                          tokenize: bool = True) -> LabeledCorpus:
    """Read ``<root>/<label>/<docid>.txt``; one document per file.

    Documents are ordered by (label, filename). Without an explicit
    ``positive_label`` the class named ``pos`` is positive if present,
    otherwise the lexicographically first class.
    """
    root = Path(root_path)
    if not root.is_dir():
        raise CorpusError(f"corpus directory not found: {root}")
    class_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if len(class_dirs) < 2:
        raise CorpusError(f"fewer than 2 classes under {root}")
    labels = tuple(p.name for p in class_dirs)
    docs = []
    for cdir in class_dirs:
        for f in sorted(p for p in cdir.iterdir() if p.is_file()):
            docs.append(Document(id=f"{cdir.name}/{f.name}", raw_text=_read_text(f), label=cdir.name))
    corpus = LabeledCorpus(tuple(docs), labels, _pick_positive(labels, positive_label))
    return tokenize_corpus(corpus) if tokenize else corpus


def load_line_corpus(pos_path, neg_path, pos_label: str = "pos", neg_label: str = "neg",
                     tokenize: bool = True) -> LabeledCorpus:
    """One document per non-empty line; the first file supplies the positive class."""
    docs = []
    for path, label in ((Path(pos_path), pos_label), (Path(neg_path), neg_label)):
        if not path.is_file():
            raise CorpusError(f"corpus file not found: {path}")
        # splitlines() accepts both LF and CRLF
        for lineno, line in enumerate(_read_text(path).splitlines(), start=1):
            if line.strip():
                docs.append(Document(id=f"{label}/{lineno}", raw_text=line, label=label))
    if not docs:
        raise CorpusError(f"both corpus files are empty: {pos_path}, {neg_path}")
    corpus = LabeledCorpus(tuple(docs), tuple(sorted((pos_label, neg_label))), pos_label)
    return tokenize_corpus(corpus) if tokenize else corpus
