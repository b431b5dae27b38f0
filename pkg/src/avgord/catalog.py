"""The catalog: census groups plus named families, one record per isomorphism class.

Persisted as JSON lines.  The first line is the header
``{"format":"avgord-catalog","version":1}``; every later line is either a
record or a census checkpoint ``{"checkpoint":"census","n":..,"count":..}``
written after each completed order, so an interrupted build resumes where it
stopped.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .canon import canonical_form
from .census import enumerate_groups
from .config import DEFAULT_BOUNDS
from .descriptor import parse_descriptor
from .exact import Rational, rational_make
from .families import build, descriptor_order
from .group import CayleyGroup, GroupHandle
from .invariants import OrderSpectrum, order_spectrum
from .iso import is_isomorphic, signature

HEADER = {"format": "avgord-catalog", "version": 1}


@dataclass
class CatalogRecord:
    id: str
    source: str  # "census" or "family"
    descriptor: Optional[str]
    order: int
    psi: int
    spectrum: OrderSpectrum
    canon: str
    canonical: bool = True  # False: invariant fingerprint, not a full canonical form
    aliases: list = field(default_factory=list)
    table: Optional[list] = None  # flattened table, census records only
    _group: Optional[GroupHandle] = field(default=None, repr=False, compare=False)

    @property
    def avg(self) -> Rational:
        return rational_make(self.psi, self.order)

    @property
    def name(self) -> str:
        return self.descriptor or self.id

    def group(self) -> GroupHandle:
        if self._group is None:
            if self.table is not None:
                n = self.order
                self._group = CayleyGroup(np.asarray(self.table).reshape(n, n), check=False)
            else:
                self._group = build(self.descriptor)
        return self._group

    def to_json(self) -> dict:
        out = {"id": self.id, "source": self.source, "descriptor": self.descriptor,
               "order": self.order, "psi": self.psi,
               "avg": {"num": self.avg.numerator, "den": self.avg.denominator},
               "spectrum": self.spectrum.to_json(), "canon": self.canon,
               "canonical": self.canonical, "aliases": list(self.aliases)}
        if self.table is not None:
            out["table"] = self.table
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CatalogRecord":
        rec = cls(id=obj["id"], source=obj["source"], descriptor=obj.get("descriptor"),
                  order=int(obj["order"]), psi=int(obj["psi"]),
                  spectrum=OrderSpectrum.from_json(obj["spectrum"]), canon=obj["canon"],
                  canonical=bool(obj.get("canonical", True)),
                  aliases=list(obj.get("aliases", [])), table=obj.get("table"))
        avg = obj.get("avg")
        if avg is not None and rational_make(int(avg["num"]), int(avg["den"])) != rec.avg:
            raise ValueError(f"record {rec.id}: avg does not equal psi/order")
        return rec


def group_hash(g: GroupHandle, bound: int = DEFAULT_BOUNDS.canonical):
    """(hex, is_canonical): a canonical form when small enough, else a fingerprint."""
    if g.order <= bound:
        return canonical_form(g, bound), True
    sig = repr(signature(g)).encode()
    return hashlib.sha256(b"fingerprint:" + sig).hexdigest(), False


class Catalog:
    def __init__(self, records: Iterable[CatalogRecord] = ()):
        self.records: list = []
        self._by_canon: dict = {}
        self.census_done: dict = {}  # order -> count
        for r in records:
            self._insert(r)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def _insert(self, rec: CatalogRecord):
        self.records.append(rec)
        self._by_canon.setdefault(rec.canon, []).append(rec)

    def find(self, name: str) -> Optional[CatalogRecord]:
        for r in self.records:
            if r.id == name or r.descriptor == name or name in r.aliases:
                return r
        return None

    def match(self, g: GroupHandle, canon: str, canonical: bool) -> Optional[CatalogRecord]:
        for rec in self._by_canon.get(canon, []):
            if canonical or is_isomorphic(rec.group(), g):
                return rec
        return None

    def add_group(self, g: GroupHandle, ident: str, source: str,
                  descriptor: Optional[str] = None, table: Optional[list] = None):
        """Insert ``g`` unless an isomorphic record exists; returns (record, is_new)."""
        canon, canonical = group_hash(g)
        rec = self.match(g, canon, canonical)
        if rec is not None:
            alias = descriptor or ident
            if alias != rec.name and alias not in rec.aliases:
                rec.aliases.append(alias)
            return rec, False
        spec = order_spectrum(g)
        rec = CatalogRecord(id=ident, source=source, descriptor=descriptor, order=g.order,
                            psi=spec.psi, spectrum=spec, canon=canon, canonical=canonical,
                            table=table, _group=g)
        self._insert(rec)
        return rec, True

    def known_names(self) -> set:
        out = set()
        for r in self.records:
            out.add(r.id)
            if r.descriptor:
                out.add(r.descriptor)
            out.update(r.aliases)
        return out

    # -- persistence ------------------------------------------------------------

    def write(self, path: str):
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(json.dumps(HEADER) + "\n")
            for n, count in sorted(self.census_done.items()):
                fh.write(json.dumps({"checkpoint": "census", "n": n, "count": count}) + "\n")
            for r in self.records:
                fh.write(json.dumps(r.to_json(), separators=(",", ":")) + "\n")
        os.replace(tmp, path)

    def append(self, path: str, items: list):
        with open(path, "a") as fh:
            for obj in items:
                fh.write(json.dumps(obj, separators=(",", ":")) + "\n")

    @classmethod
    def read(cls, path: str) -> "Catalog":
        cat = cls()
        with open(path) as fh:
            first = fh.readline()
            if not first.strip():
                raise ValueError(f"{path}: empty catalog file")
            if json.loads(first) != HEADER:
                raise ValueError(f"{path}: not an avgord catalog (version 1)")
            for line in fh:
                if not line.strip():
                    continue
                obj = json.loads(line)
                if obj.get("checkpoint") == "census":
                    cat.census_done[int(obj["n"])] = int(obj["count"])
                else:
                    cat._insert(CatalogRecord.from_json(obj))
        return cat


# -- contents ---------------------------------------------------------------------

def _times_e(base: str, k: int) -> str:
    return base if k == 0 else f"{base} x EA(2,{k})"


def table_a_rows(k_max: int) -> list:
    """(row label, descriptor, k) for the non-2-group table."""
    rows = []
    for k in range(1, k_max + 1):
        rows.append(("C3^k:C2", f"Frob3({k})", k))
    rows.append(("C3", "C3", None))
    for k in range(1, k_max + 1):
        rows.append(("C2^2k:C3", f"Frob2({k})", k))
    rows += [("D12", "D12", None), ("C3xC3", "C3xC3", None), ("S4", "Sym(4)", None)]
    return rows


def table_b_rows(k_max: int) -> list:
    rows = []
    for k in range(0, k_max + 1):
        rows.append(("C2^k", f"EA(2,{k})", k))
    for k in range(0, k_max + 1):
        rows.append(("D8xC2^k", _times_e("D8", k), k))
    for base in ("GD(C4xC4)", "CProd(D8,D8)", "Sgrp(2)"):
        for k in range(0, k_max + 1):
            rows.append((f"{base}xC2^k", _times_e(base, k), k))
    rows.append(("C4", "C4", None))
    return rows


# star-groups and Wall shapes outside the tables, plus single groups the
# proofs quote by value
EXTRA_FAMILIES = [
    "H(1)", "H(2)", "H(3)", "Sgrp(1)", "Sgrp(3)", "D8xD8",
    "GD(C4xC2)", "GD(C8)", "GD(C8xC2)", "GD(Ab(4,4,2))", "GD(Ab(4,4,4))", "GD(Ab(4,2,2))",
    "H(2) x EA(2,1)", "Sgrp(3) x EA(2,1)", "D8xD8 x EA(2,1)",
    "C2xD12", "CProd(D8,C4)", "GD(C5xC5)", "Alt(5)", "Alt(4)", "Sym(3)", "D6", "GD(C3)",
    "D10", "C6", "D18", "C3 x D6", "C18", "Ab(3,6)", "Frob3(2) x C2", "C3 x Alt(4)",
    "D6 x D6", "C3 x D12", "Ab(6,6)", "D20", "D28", "C2 x Alt(4)", "D8 x C3", "Sym(4) x C2",
    "Ab(4,2)", "C8", "Ab(2,8)", "Ab(4,4)", "C5 x Alt(4)", "D14 x C3", "GD(C7xC7)",
]


def family_descriptors(k_max: int) -> list:
    out = []
    for _, d, _ in table_a_rows(k_max) + table_b_rows(k_max):
        out.append(d)
    out += EXTRA_FAMILIES
    seen = set()
    uniq = []
    for d in out:
        key = str(parse_descriptor(d))
        if key not in seen:
            seen.add(key)
            uniq.append(d)
    return uniq


def build_catalog(census_max: int = 16, family_k_max: int = 4, path: Optional[str] = None,
                  resume: bool = True, timeout: Optional[float] = 600.0,
                  census_bound: int = 24, order_bound: int = DEFAULT_BOUNDS.iso,
                  progress: Optional[Callable[[str], None]] = None, jobs: int = 1) -> Catalog:
    """Census orders 1..census_max, then every family up to ``family_k_max``.

    With ``path`` the catalog is checkpointed after every census order and
    every family, and an existing file is resumed when ``resume`` is set.
    """
    say = progress or (lambda msg: None)
    if path and resume and os.path.exists(path):
        cat = Catalog.read(path)
    else:
        cat = Catalog()
        if path:
            cat.write(path)
    for n in range(1, census_max + 1):
        if n in cat.census_done:
            continue
        res = enumerate_groups(n, bound=census_bound, timeout=timeout, jobs=jobs)
        new = []
        for i, (g, canon) in enumerate(zip(res.groups, res.canon), start=1):
            rec, is_new = cat.add_group(g, f"census-{n}-{i}", "census",
                                        table=g.table.reshape(-1).tolist())
            if is_new:
                new.append(rec.to_json())
        cat.census_done[n] = res.count
        say(f"census n={n}: {res.count} groups ({res.stats.elapsed:.2f}s)")
        if path:
            cat.append(path, new + [{"checkpoint": "census", "n": n, "count": res.count}])
    names = cat.known_names()
    for d in family_descriptors(family_k_max):
        canon_name = str(parse_descriptor(d))
        if d in names or canon_name in names:
            continue
        if descriptor_order(parse_descriptor(d)) > order_bound:
            continue
        g = build(d)
        before = len(cat)
        rec, is_new = cat.add_group(g, canon_name, "family", descriptor=canon_name)
        if not is_new and rec.source == "census" and rec.descriptor is None:
            # name an anonymous census record after the first family it matches
            rec.descriptor = canon_name
            rec.aliases = [a for a in rec.aliases if a != canon_name]
        names.add(canon_name)
        say(f"family {canon_name}: {'new' if len(cat) > before else 'merged into ' + rec.id}")
        if path:
            cat.write(path)
    return cat
