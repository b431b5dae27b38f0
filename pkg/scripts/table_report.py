"""Print both tables with derived and printed psi side by side."""

import argparse

from avgord.verify import verify_tables


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=6)
    args = ap.parse_args()

    rep = verify_tables(args.k_max)
    print(f"{'':2}{'row':<18} {'k':>2} {'order':>6} {'psi':>7} {'printed':>8} {'avg':>12}")
    for row in rep.rows:
        k = "" if row["k"] is None else row["k"]
        printed = row.get("psi_printed", "")
        mark = "*" if printed and printed != row["psi"] else " "
        print(f"{row['table']:2}{row['row']:<18} {k:>2} {row['order']:>6} {row['psi']:>7} "
              f"{printed:>8}{mark} {row['avg']:>11}")
    print(f"\n{len(rep.rows)} rows, {len(rep.violations)} violations; "
          f"* marks the {len(rep.flags)} rows whose printed psi disagrees with the avg column")


if __name__ == "__main__":
    main()
