"""Run every verification target against one catalog and summarize."""

import argparse
import json
import sys

from avgord.catalog import Catalog, build_catalog
from avgord.verify import (LEMMAS, recognizability, verify_density, verify_lemma,
                           verify_tables, verify_theorem_a)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--catalog", help="catalog file; built in memory when omitted")
    ap.add_argument("--json", metavar="PATH", help="also write all reports here")
    args = ap.parse_args()

    cat = Catalog.read(args.catalog) if args.catalog else build_catalog()
    reports = [verify_theorem_a(cat), verify_tables(6)]
    reports += [verify_lemma(name, cat) for name in LEMMAS]
    reports.append(verify_density(cat))
    rec = recognizability(cat)

    failed = 0
    print(f"{'target':<12} {'tested':>7} {'hits':>6} {'viol':>5}  flags")
    for r in reports:
        failed += not r.passed or r.vacuous
        print(f"{r.lemma:<12} {r.tested:>7} {r.hypothesis_hits:>6} {len(r.violations):>5}"
              f"  {len(r.flags) or ''}")
    print(f"{'recognize':<12} {len(rec.targets):>7} {'':>6} {len(rec.violations):>5}")
    failed += not rec.passed
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"reports": [r.to_json() for r in reports],
                       "recognize": rec.to_json()}, fh, indent=2)
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
