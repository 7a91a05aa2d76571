"""Collection factors for the two-term toy example (30 pos / 70 neg docs).

t1 occurs in 27 positive and 5 negative documents, t2 in 10 and 25.
"""
from termweight.selection import chi2_score
from termweight.stats import contingency, stats_from_counts
from termweight.weighting import (delta_idf_factor, idf_factor, idf_icf_factor, idfc_rf_factor,
                                  igm_factor, igm_imp_factor, rf_factor)

COLUMNS = [("idf", idf_factor), ("delta_idf", delta_idf_factor), ("idf_icf", idf_icf_factor),
           ("rf", rf_factor), ("igm", igm_factor), ("igm_imp", igm_imp_factor),
           ("idfc_rf", idfc_rf_factor), ("chi2", chi2_score)]


def main():
    stats = stats_from_counts({"t1": (27, 5), "t2": (10, 25)}, (30, 70))
    print("term\t" + "\t".join(name for name, _ in COLUMNS) + "\tA,B,C,D")
    for term in stats.terms:
        cells = [f"{fn(stats, term):.4f}" for _, fn in COLUMNS]
        print(term + "\t" + "\t".join(cells) + "\t" + ",".join(map(str, contingency(stats, term, 0))))


if __name__ == "__main__":
    main()
