"""Full grid on the movie-review polarity corpus.

    python3 scripts/reproduce_polarity.py /path/to/txt_sentoken --out results.csv --threads 5

The directory must hold pos/ and neg/ with one review per file.
"""
import argparse
import logging
import sys
import time

from termweight.corpus import load_directory_corpus
from termweight.evaluation import CLASSIFIERS, DEFAULT_FEATURE_SIZES, run_experiment
from termweight.weighting import ALL_SCHEMES, SchemeSpec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("root")
    ap.add_argument("--schemes", default=",".join(s.name for s in ALL_SCHEMES))
    ap.add_argument("--features", default=",".join(map(str, DEFAULT_FEATURE_SIZES)))
    ap.add_argument("--classifiers", default=",".join(CLASSIFIERS))
    ap.add_argument("--folds", type=int, default=5)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", default="polarity_results.csv")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    corpus = load_directory_corpus(args.root, positive_label="pos")
    print(f"{len(corpus)} documents, classes {dict(corpus.class_counts())}", file=sys.stderr)
    schemes = [SchemeSpec.parse(s) for s in args.schemes.split(",")]
    sizes = [int(s) for s in args.features.split(",")]
    t0 = time.perf_counter()
    report = run_experiment(corpus, schemes, sizes, args.classifiers.split(","),
                            k=args.folds, seed=args.seed, threads=args.threads)
    with open(args.out, "w") as fh:
        fh.write(report.to_csv())
    print(report.f1_matrix_text())
    print(f"wrote {args.out} in {time.perf_counter() - t0:.1f}s", file=sys.stderr)

    if {"tf-rf", "tf-idfc-rf"} <= {s.name for s in schemes}:
        for clf in args.classifiers.split(","):
            wins = sum(report.mean_f1("tf-idfc-rf", n, clf) >= report.mean_f1("tf-rf", n, clf) for n in sizes)
            print(f"{clf}: tf-idfc-rf >= tf-rf at {wins}/{len(sizes)} sizes")


if __name__ == "__main__":
    main()
