"""Computed dim T/I_t(X) for generic m x n matrices next to (m+n-t+1)(t-1)."""

import argparse
import time

from minorideals.groebner import Ideal, buchberger, krull_dimension
from minorideals.polymatrix import generic_matrix, minors


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=4, help="largest m")
    args = ap.parse_args()
    print(f"{'m':>2} {'n':>2} {'t':>2} {'dim':>4} {'formula':>7} {'basis':>5} {'ms':>8}")
    for m in range(1, args.max + 1):
        for n in range(1, m + 1):
            for t in range(1, n + 1):
                X = generic_matrix(m, n)
                t0 = time.perf_counter()
                G = buchberger(Ideal(X.ring, minors(X, t)))
                d = krull_dimension(G).dim
                ms = (time.perf_counter() - t0) * 1000
                f = (m + n - t + 1) * (t - 1)
                flag = "" if d == f else "  MISMATCH"
                print(f"{m:>2} {n:>2} {t:>2} {d:>4} {f:>7} {len(G):>5} {ms:>8.1f}{flag}")


if __name__ == "__main__":
    main()
