"""Canonical forms of multiplication tables.

A generating tuple ``(g1, ..., gd)`` induces a labelling of the elements:
breadth-first from the identity, right-multiplying by g1..gd in turn.  The
relabelled table is a certificate for the tuple, and two groups are
isomorphic iff some pair of tuples gives equal certificates.  The canonical
form is the least certificate over an isomorphism-invariant family of
tuples: at each step the next generator ranges over the elements outside the
current subgroup whose join with it is largest, with the largest element key
as tie-break.  Branches proved equivalent by an automorphism (two leaves with
the same certificate) are cut back to the level where their tuples diverge.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .config import DEFAULT_BOUNDS, require
from .group import GroupHandle, as_cayley, closure_members
from .iso import element_keys


def bfs_labelling(table: np.ndarray, gens) -> np.ndarray:
    """``order[k]`` is the element that receives label k."""
    n = table.shape[0]
    order = [0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    i = 0
    while i < len(order):
        row = table[order[i]]
        for s in gens:
            y = int(row[s])
            if not seen[y]:
                seen[y] = True
                order.append(y)
        i += 1
    return np.asarray(order, dtype=np.int64)


def certificate(table: np.ndarray, gens) -> bytes:
    order = bfs_labelling(table, gens)
    label = np.empty_like(order)
    label[order] = np.arange(len(order))
    relabelled = label[table[np.ix_(order, order)]]
    return relabelled.astype(np.uint8 if len(order) <= 256 else np.uint16).tobytes()


class _Cut(Exception):
    def __init__(self, level: int):
        self.level = level


def canonical_certificate(g: GroupHandle, bound: int = DEFAULT_BOUNDS.canonical) -> bytes:
    c = as_cayley(g)
    n = c.order
    require(n, bound, "canonical form")
    if n == 1:
        return b"\x00"
    table = c.table.astype(np.int64)
    keys = element_keys(c)
    best = [None]
    seen: dict = {}

    def candidates(prefix: list, members: list) -> list:
        inside = np.zeros(n, dtype=bool)
        inside[members] = True
        scored = []
        for y in range(n):
            if inside[y]:
                continue
            size = len(closure_members(c, prefix + [y]))
            scored.append(((size, keys[y]), y))
        top = max(s for s, _ in scored)
        return [y for s, y in scored if s == top]

    def rec(prefix: list, members: list):
        if len(members) == n:
            cert = certificate(table, prefix)
            key = (len(prefix), cert)
            if best[0] is None or key < best[0]:
                best[0] = key
            other = seen.get(key)
            if other is None:
                seen[key] = tuple(prefix)
                return
            # an automorphism maps the earlier leaf onto this one
            diverge = next(i for i, (a, b) in enumerate(zip(other, prefix)) if a != b)
            raise _Cut(diverge)
        for y in candidates(prefix, members):
            try:
                rec(prefix + [y], closure_members(c, prefix + [y]))
            except _Cut as cut:
                if cut.level < len(prefix):
                    raise
                # cut.level == len(prefix): skip the rest of this child only

    rec([], [0])
    return best[0][1]


def canonical_form(g: GroupHandle, bound: int = DEFAULT_BOUNDS.canonical) -> str:
    """Hex digest of the canonical certificate; equal iff isomorphic."""
    return hashlib.sha256(canonical_certificate(g, bound)).hexdigest()
