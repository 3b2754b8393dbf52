"""Run every claim group and write the JSON report plus a one-line summary per claim."""

import argparse
import sys
from pathlib import Path

from minorideals.groebner import GBCache
from minorideals.paperlab import Session, run_claims
from minorideals.polyring import Field


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/report.json")
    ap.add_argument("--field", default="gf:32003")
    ap.add_argument("--cache-dir", default=".gbcache")
    ap.add_argument("--no-timing", action="store_true")
    args = ap.parse_args()

    session = Session(Field.from_string(args.field), cache=GBCache(args.cache_dir))
    rep = run_claims(session=session)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(rep.to_json(timing=not args.no_timing))
    for line in rep.summary_lines():
        print(line)
    print(f"report written to {out}")
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
