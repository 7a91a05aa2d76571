"""Command-line front end: ``weigh``, ``run`` and ``factors``.

Settings come from flags, optionally on top of a JSON config file given with
``--config``; flags win. Exit codes: 0 success, 1 usage error, 2 runtime error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from termweight.corpus import load_directory_corpus, load_line_corpus
from termweight.evaluation import CLASSIFIERS, DEFAULT_FEATURE_SIZES, run_experiment
from termweight.selection import select_top_k
from termweight.stats import build_vocab_stats
from termweight.weighting import (ALL_SCHEMES, DEFAULT_LAMBDA, SchemeSpec, collection_factors,
                                  delta_idf_factors, dump_vectors, idf_factors, idf_icf_factors,
                                  idfc_rf_factors, igm_factors, igm_imp_factors, rf_factors,
                                  weigh_document)

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    corpus: list = field(default_factory=list)
    format: str = "dir"
    positive_label: str | None = None
    schemes: list = field(default_factory=lambda: [s.kind.value for s in ALL_SCHEMES])
    lam: float = DEFAULT_LAMBDA
    features: list = field(default_factory=lambda: list(DEFAULT_FEATURE_SIZES))
    classifiers: list = field(default_factory=lambda: list(CLASSIFIERS))
    folds: int = 5
    seed: int = 42
    out: str | None = None
    threads: int = 1

    def validate(self):
        if not self.corpus:
            raise UsageError("no corpus given (--corpus)")
        if self.format not in ("dir", "lines"):
            raise UsageError(f"unknown corpus format {self.format!r}")
        if self.format == "dir" and len(self.corpus) != 1:
            raise UsageError("--format dir takes exactly one corpus directory")
        if self.format == "lines" and len(self.corpus) != 2:
            raise UsageError("--format lines takes two files: positive then negative")
        if not self.schemes:
            raise UsageError("no schemes given")
        if not self.features or min(self.features) < 1:
            raise UsageError("feature sizes must be positive")
        if self.folds < 2:
            raise UsageError("--folds must be >= 2")
        if self.lam < 0:
            raise UsageError("--lambda must be >= 0")
        for name in self.classifiers:
            if name not in CLASSIFIERS:
                raise UsageError(f"unknown classifier {name!r}")
        self.scheme_specs()

    def scheme_specs(self) -> list[SchemeSpec]:
        try:
            return [SchemeSpec.parse(s, self.lam) for s in self.schemes]
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    def load_corpus(self):
        if self.format == "dir":
            return load_directory_corpus(self.corpus[0], positive_label=self.positive_label)
        return load_line_corpus(*self.corpus)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _csv_list(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _int_list(text):
    try:
        return [int(t) for t in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with defaults for any flag")
    common.add_argument("--corpus", nargs="+", help="corpus directory, or positive and negative line files")
    common.add_argument("--format", choices=["dir", "lines"])
    common.add_argument("--positive-label", dest="positive_label")
    common.add_argument("--lambda", dest="lam", type=float, help="IGM lambda (default 7)")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="termweight", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    weigh = sub.add_parser("weigh", parents=[common], help="dump weighted vectors of the whole corpus")
    weigh.add_argument("--scheme", dest="schemes", type=lambda s: [s])
    weigh.add_argument("--features", type=_int_list, help="keep only the top-k chi-square terms")

    run = sub.add_parser("run", parents=[common], help="cross-validated experiment grid -> report CSV")
    run.add_argument("--schemes", "--scheme", dest="schemes", type=_csv_list)
    run.add_argument("--features", type=_int_list)
    run.add_argument("--classifiers", "--classifier", dest="classifiers", type=_csv_list)
    run.add_argument("--folds", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--threads", type=int)

    factors = sub.add_parser("factors", parents=[common], help="per-term collection factors (TSV)")
    factors.add_argument("--terms", type=_csv_list, required=True)
    return parser


def resolve_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if "lambda" in data:
            data["lam"] = data.pop("lambda")
        data = {k.replace("-", "_"): v for k, v in data.items()}
        unknown = set(data) - set(RunConfig.__dataclass_fields__)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        for key, value in data.items():
            if key == "corpus" and isinstance(value, str):
                value = [value]
            setattr(cfg, key, value)
    for key in RunConfig.__dataclass_fields__:
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    cfg.validate()
    return cfg


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_weigh(cfg: RunConfig, top_k: int | None = None) -> str:
    if len(cfg.schemes) != 1:
        raise UsageError("weigh takes exactly one --scheme")
    scheme = cfg.scheme_specs()[0]
    corpus = cfg.load_corpus()
    stats = build_vocab_stats(corpus)
    fmap = select_top_k(stats, top_k) if top_k else None
    factors = collection_factors(scheme, stats)
    vectors = [weigh_document(d, stats, scheme, fmap, factors=factors) for d in corpus.documents]
    return dump_vectors(corpus.ids, vectors)


def cmd_run(cfg: RunConfig):
    corpus = cfg.load_corpus()
    report = run_experiment(corpus, cfg.scheme_specs(), cfg.features, cfg.classifiers,
                            k=cfg.folds, seed=cfg.seed, threads=cfg.threads)
    return report


FACTOR_COLUMNS = (
    ("idf", idf_factors),
    ("delta_idf", delta_idf_factors),
    ("idf_icf", idf_icf_factors),
    ("rf", rf_factors),
    ("igm", igm_factors),
    ("igm_imp", igm_imp_factors),
    ("idfc_rf", idfc_rf_factors),
)


def cmd_factors(cfg: RunConfig, terms) -> str:
    corpus = cfg.load_corpus()
    stats = build_vocab_stats(corpus)
    missing = [t for t in terms if t not in stats.term_index]
    if missing:
        raise LookupError(f"unknown term(s): {', '.join(missing)}")
    columns = [(name, fn(stats)) for name, fn in FACTOR_COLUMNS]
    lines = ["\t".join(["term", *(name for name, _ in columns)])]
    for term in terms:
        i = stats.term_index[term]
        lines.append("\t".join([term, *(f"{vals[i]:.4f}" for _, vals in columns)]))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
    except UsageError as exc:
        print(f"termweight: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "weigh":
            top_k = args.features[0] if args.features else None
            _emit(cmd_weigh(cfg, top_k), cfg.out)
        elif args.command == "run":
            report = cmd_run(cfg)
            _emit(report.to_csv(), cfg.out)
            print(report.f1_matrix_text(), file=sys.stdout if cfg.out else sys.stderr)
        else:
            _emit(cmd_factors(cfg, args.terms), cfg.out)
    except UsageError as exc:
        print(f"termweight: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        print(f"termweight: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
