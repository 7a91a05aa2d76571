"""Supervised and unsupervised term weighting for binary text classification."""
from termweight.corpus import Document, LabeledCorpus, load_directory_corpus, load_line_corpus, preprocess
from termweight.evaluation import run_experiment, stratified_kfold, weighted_f1
from termweight.selection import chi2_score, select_top_k
from termweight.stats import VocabStats, build_vocab_stats, contingency
from termweight.weighting import ALL_SCHEMES, Scheme, SchemeSpec, SparseVector, weigh_document

__version__ = "0.1.0"
