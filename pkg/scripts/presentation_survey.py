"""Count bad and non-bad presentations of labelled matrices.

With no arguments, surveys the two identified 3x3 matrices and their
transposes; otherwise each argument is a matrix written as "a X b; X c X; d e f".
"""

import argparse
import json

from minorideals.paperlab.fixtures import IDENTIFIED_FIRST, IDENTIFIED_SECOND
from minorideals.specialize import InfeasiblePresentation, LabeledMatrix, check_theorem, survey_presentations


def survey(text, t, budget):
    for tag, mat in (("as given", LabeledMatrix.from_rows(text)), ("transposed", LabeledMatrix.from_rows(text).transpose())):
        if mat.shape[0] < mat.shape[1]:
            print(f"{mat.to_rows():<24} {tag:<10} skipped: more columns than rows")
            continue
        try:
            s = survey_presentations(mat, t, budget, keep=1)
        except InfeasiblePresentation as e:
            print(f"{mat.to_rows():<24} {tag:<10} infeasible: {e}")
            continue
        line = f"{mat.to_rows():<24} {tag:<10} total {s.total:>4}  bad {s.bad:>4}  good {s.good_count:>4}"
        if s.examples:
            rep = check_theorem(s.examples[0], labels=mat)
            line += f"  first good: all conditions {rep.all_hold}, dim {rep.dim_full}"
            line += "\n    " + json.dumps(s.examples[0].to_json()["pairs"])
        print(line)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("matrices", nargs="*")
    ap.add_argument("--t", type=int, default=3)
    ap.add_argument("--budget", type=int, default=1_000_000)
    args = ap.parse_args()
    for text in args.matrices or [IDENTIFIED_FIRST, IDENTIFIED_SECOND]:
        survey(text, args.t, args.budget)


if __name__ == "__main__":
    main()
