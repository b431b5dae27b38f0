"""Build (or resume) the default catalog and print per-order census counts."""

import argparse
import time

from avgord.catalog import build_catalog


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--catalog", default="catalog.jsonl")
    ap.add_argument("--census-max", type=int, default=16)
    ap.add_argument("--k-max", type=int, default=4)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--fresh", action="store_true", help="ignore an existing catalog file")
    args = ap.parse_args()

    t0 = time.monotonic()
    cat = build_catalog(census_max=args.census_max, family_k_max=args.k_max,
                        path=args.catalog, resume=not args.fresh, jobs=args.jobs,
                        census_bound=max(16, args.census_max), progress=print)
    print()
    print(f"{'n':>4} {'groups':>7}")
    for n, count in sorted(cat.census_done.items()):
        print(f"{n:>4} {count:>7}")
    print(f"{len(cat)} records in {args.catalog} ({time.monotonic() - t0:.1f}s)")


if __name__ == "__main__":
    main()
