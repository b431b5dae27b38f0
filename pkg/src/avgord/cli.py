"""Command-line front end: ``avgord <command> ...``.

Exit codes: 0 success, 1 violations found, 2 usage or parse error,
3 a size bound or timeout was hit.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .catalog import Catalog, build_catalog
from .census import CensusTimeout, enumerate_groups
from .config import DEFAULT_BOUNDS, BoundExceeded
from .descriptor import ParseError, parse_descriptor
from .exact import parse_rational, rational_to_json, render_decimal
from .families import NotAbelianError, build
from .group import NotCentralInvolution, as_cayley
from .invariants import SpectrumSummary, order_spectrum
from .verify import (
    BOUND,
    LEMMAS,
    S4_AVG,
    UnknownLemma,
    classify,
    density_gap,
    recognizability,
    verify_density,
    verify_lemma,
    verify_tables,
    verify_theorem_a,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3
FORMATS = ("text", "json", "csv")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class CliConfig:
    census_max: int = 16
    k_max: int = 4
    iso_bound: int = DEFAULT_BOUNDS.iso
    timeout_secs: float = 600.0
    format: str = "text"
    catalog: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        for name in ("census_max", "k_max", "iso_bound", "jobs"):
            if getattr(self, name) < (0 if name == "k_max" else 1):
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.timeout_secs <= 0:
            raise UsageError("--timeout-secs must be positive")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")

    @classmethod
    def from_args(cls, args) -> "CliConfig":
        return cls(census_max=args.census_max, k_max=args.k_max, iso_bound=args.iso_bound,
                   timeout_secs=args.timeout_secs, format=args.format, catalog=args.catalog,
                   jobs=args.jobs)


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _emit_json(obj):
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def _emit_csv(header, rows):
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _catalog(cfg: CliConfig) -> Catalog:
    say = (lambda m: print(m, file=sys.stderr)) if cfg.format == "text" else None
    return build_catalog(cfg.census_max, cfg.k_max, path=cfg.catalog, resume=True,
                         timeout=cfg.timeout_secs, progress=say, jobs=cfg.jobs)


# -- commands ---------------------------------------------------------------------

def cmd_construct(args, cfg: CliConfig) -> int:
    d = parse_descriptor(args.descriptor)
    g = build(d)
    obj = {"descriptor": str(d), "order": g.order, "backend": type(g).__name__}
    if cfg.format == "json":
        if g.order <= 256:
            obj["cayley"] = as_cayley(g).to_json()
        _emit_json(obj)
    elif cfg.format == "csv":
        _emit_csv(["descriptor", "order", "backend"], [[str(d), g.order, obj["backend"]]])
    else:
        print(f"{d}: order {g.order} ({obj['backend']})")
    return EXIT_OK


def _summary_rows(s: SpectrumSummary):
    return [["order", s.order], ["psi", s.psi], ["avg", _frac(s.avg)],
            ["avg_approx", render_decimal(s.avg)], ["exponent", s.exponent],
            ["spectrum", " ".join(f"{k}:{v}" for k, v in sorted(s.spectrum.counts.items()))]]


def cmd_invariants(args, cfg: CliConfig) -> int:
    d = parse_descriptor(args.descriptor)
    s = SpectrumSummary.of(order_spectrum(build(d)))
    if cfg.format == "json":
        _emit_json({"descriptor": str(d), **s.to_json()})
    elif cfg.format == "csv":
        _emit_csv(["field", "value"], _summary_rows(s))
    else:
        print(f"group     {d}")
        print(f"order     {s.order}")
        print(f"psi       {s.psi}")
        print(f"avg       {_frac(s.avg)} (~{render_decimal(s.avg)})")
        print(f"exponent  {s.exponent}")
        print("spectrum  " + ", ".join(f"{v} of order {k}"
                                       for k, v in sorted(s.spectrum.counts.items())))
    return EXIT_OK


def cmd_census(args, cfg: CliConfig) -> int:
    n = args.n
    try:
        res = enumerate_groups(n, bound=max(DEFAULT_BOUNDS.census, cfg.census_max),
                               timeout=cfg.timeout_secs, jobs=cfg.jobs)
    except CensusTimeout as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"partial: {len(exc.partial)} classes, stats {json.dumps(exc.stats.to_json())}",
              file=sys.stderr)
        return EXIT_BOUND
    rows = []
    for i, (g, canon) in enumerate(zip(res.groups, res.canon), start=1):
        s = SpectrumSummary.of(order_spectrum(g))
        rows.append((f"census-{n}-{i}", canon, s))
    if cfg.catalog:
        cat = Catalog.read(cfg.catalog) if os.path.exists(cfg.catalog) else Catalog()
        for (ident, _, _), g in zip(rows, res.groups):
            cat.add_group(g, ident, "census", table=g.table.reshape(-1).tolist())
        cat.census_done[n] = res.count
        cat.write(cfg.catalog)
    if cfg.format == "json":
        _emit_json({"n": n, "count": res.count, "stats": res.stats.to_json(),
                    "groups": [{"id": i, "canon": c, **s.to_json()} for i, c, s in rows]})
    elif cfg.format == "csv":
        _emit_csv(["id", "order", "psi", "avg", "spectrum", "canon"],
                  [[i, s.order, s.psi, _frac(s.avg),
                    " ".join(f"{k}:{v}" for k, v in sorted(s.spectrum.counts.items())), c]
                   for i, c, s in rows])
    else:
        st = res.stats
        print(f"order {n}: {res.count} groups "
              f"({st.nodes} nodes, {st.prunes} prunes, {st.elapsed:.2f}s)")
        for i, c, s in rows:
            spec = ", ".join(f"{k}:{v}" for k, v in sorted(s.spectrum.counts.items()))
            print(f"  {i:<14} psi={s.psi:<5} avg={_frac(s.avg):<8} [{spec}] {c[:16]}")
    return EXIT_OK


def cmd_classify(args, cfg: CliConfig) -> int:
    d = parse_descriptor(args.descriptor)
    out = classify(build(d), bound=cfg.iso_bound)
    if cfg.format == "json":
        _emit_json({"descriptor": str(d), **out.to_json()})
    elif cfg.format == "csv":
        _emit_csv(["descriptor", "label", "case", "sub", "param", "matched"],
                  [[str(d), out.label, out.case, out.sub, out.param, out.descriptor]])
    else:
        extra = f" (isomorphic to {out.descriptor})" if out.descriptor else ""
        print(f"{d}: {out.label}{extra}")
    return EXIT_OK


def _print_report(rep):
    status = "PASS" if rep.passed else "FAIL"
    print(f"{rep.lemma}: {status}  tested={rep.tested} "
          f"hypothesis_hits={rep.hypothesis_hits} violations={len(rep.violations)}")
    if rep.vacuous:
        print("  warning: hypothesis never held (vacuous pass)")
    for n in rep.notes:
        print(f"  note: {n}")
    for f in rep.flags:
        print(f"  flag: {json.dumps(f, ensure_ascii=False)}")
    for v in rep.violations[:20]:
        print(f"  violation: {json.dumps(v, ensure_ascii=False)}")


def _tables_csv(rep):
    rows = []
    for r in rep.rows:
        rows.append([r["table"], r["group"], r["k"] if r["k"] is not None else "",
                     r["psi"], r["avg"], render_decimal(Fraction(r["avg"]))])
    _emit_csv(["table", "Groups", "k", "psi", "o exact", "o approx"], rows)


def _recognize_out(rep, cfg: CliConfig) -> int:
    if cfg.format == "json":
        _emit_json(rep.to_json())
    elif cfg.format == "csv":
        _emit_csv(["part", "group", "avg", "expected", "size", "members"],
                  [[t["part"], t["group"], t["avg"], t["expected"], t["size"],
                    "; ".join(t["members"])] for t in rep.targets])
    else:
        print("recognizability (catalog-relative: class sizes count catalog records only)")
        for t in rep.targets:
            mark = "ok " if t["size"] == t["expected"] else "BAD"
            print(f"  {mark} ({t['part']}) {t['group']:<28} avg={t['avg']:<10} "
                  f"class size {t['size']} (expected {t['expected']}): {', '.join(t['members'])}")
        print(f"recognize: {'PASS' if rep.passed else 'FAIL'}  violations={len(rep.violations)}")
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def _bounds(args):
    lo = parse_rational(args.lo) if args.lo else S4_AVG
    hi = parse_rational(args.hi) if args.hi else BOUND
    if lo > hi:
        raise UsageError("--lo must not exceed --hi")
    return lo, hi


def cmd_verify(args, cfg: CliConfig) -> int:
    target = args.target
    if target == "tables":
        rep = verify_tables(cfg.k_max if args.k_max_set else 6)
    elif target == "recognize":
        return _recognize_out(recognizability(_catalog(cfg), cfg.k_max), cfg)
    elif target == "theorem-a":
        rep = verify_theorem_a(_catalog(cfg))
    elif target == "density":
        lo, hi = _bounds(args)
        rep = verify_density(_catalog(cfg), lo, hi)
    elif target.startswith("lemma:"):
        lemma = target[len("lemma:"):]
        if lemma not in LEMMAS:
            raise UnknownLemma(f"unknown lemma id {lemma!r}; known: {', '.join(LEMMAS)}")
        rep = verify_lemma(lemma, _catalog(cfg))
    else:
        raise UsageError(f"unknown verify target {target!r}")
    if cfg.format == "json":
        _emit_json(rep.to_json())
    elif cfg.format == "csv":
        if target == "tables":
            _tables_csv(rep)
        else:
            _emit_csv(["lemma", "tested", "hypothesis_hits", "violations", "passed"],
                      [[rep.lemma, rep.tested, rep.hypothesis_hits, len(rep.violations),
                        rep.passed]])
    else:
        _print_report(rep)
        if target == "density":
            for r in rep.rows:
                print(f"  witness: {r['group']} (order {r['order']}, avg {r['avg']})")
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_recognize(args, cfg: CliConfig) -> int:
    return _recognize_out(recognizability(_catalog(cfg), cfg.k_max), cfg)


def cmd_density(args, cfg: CliConfig) -> int:
    lo, hi = _bounds(args)
    found = density_gap(_catalog(cfg), lo, hi)
    if cfg.format == "json":
        _emit_json({"lo": rational_to_json(lo), "hi": rational_to_json(hi),
                    "witnesses": [{"id": r.id, "group": r.name, "order": r.order,
                                   "avg": rational_to_json(r.avg)} for r in found]})
    elif cfg.format == "csv":
        _emit_csv(["group", "order", "avg"], [[r.name, r.order, _frac(r.avg)] for r in found])
    else:
        print(f"catalog records with {_frac(lo)} <= avg <= {_frac(hi)}: {len(found)}")
        for r in found:
            print(f"  {r.name} (order {r.order}, avg {_frac(r.avg)})")
    return EXIT_OK


def cmd_tables(args, cfg: CliConfig) -> int:
    rep = verify_tables(cfg.k_max if args.k_max_set else 6)
    if cfg.format == "json":
        _emit_json(rep.to_json())
    elif cfg.format == "csv":
        _tables_csv(rep)
    else:
        for r in rep.rows:
            print(f"{r['table']}  {r['group']:<24} psi={r['psi']:<8} avg={r['avg']:<14} "
                  f"~{render_decimal(Fraction(r['avg']))}")
        _print_report(rep)
    return EXIT_OK if rep.passed else EXIT_VIOLATION


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--census-max", type=int, default=16,
                        help="largest census order in the catalog (default 16)")
    common.add_argument("--k-max", type=int, default=None,
                        help="largest family parameter k (default 4; 6 for verify tables)")
    common.add_argument("--iso-bound", type=int, default=DEFAULT_BOUNDS.iso)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--catalog", help="catalog file (JSON lines); built if missing")
    common.add_argument("--timeout-secs", type=float, default=600.0,
                        help="per-order census timeout")
    common.add_argument("--jobs", type=int, default=1, help="census worker processes")

    p = argparse.ArgumentParser(prog="avgord",
                                description="Average element orders of finite groups.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", parents=[common], help="build a group from a descriptor")
    s.add_argument("descriptor")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("invariants", parents=[common], help="order spectrum, psi and avg")
    s.add_argument("descriptor")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("census", parents=[common], help="all groups of order n")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("classify", parents=[common], help="match against the classification")
    s.add_argument("descriptor")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("verify", parents=[common],
                       help="theorem-a | tables | lemma:<id> | recognize | density")
    s.add_argument("target")
    s.add_argument("--lo")
    s.add_argument("--hi")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("recognize", parents=[common], help="classes of equal average order")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("density", parents=[common], help="catalog records with lo <= avg <= hi")
    s.add_argument("--lo")
    s.add_argument("--hi")
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("tables", parents=[common], help="table rows with psi and avg")
    s.set_defaults(func=cmd_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.k_max_set = args.k_max is not None
    if args.k_max is None:
        args.k_max = 4
    try:
        cfg = CliConfig.from_args(args)
        return args.func(args, cfg)
    except (ParseError, UsageError, UnknownLemma, NotAbelianError, NotCentralInvolution,
            ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
