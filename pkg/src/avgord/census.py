"""All groups of a given small order, up to isomorphism.

Search space: multiplication tables in a standard labelling with respect to a generating tuple ``(g1, ..., gd)``.  Labels 1..d are the
generators; the search fills the generator columns ``x * gj`` one
generator at a time over the labelled rows, each slot taking an existing
label or the next fresh one.  Every assignment is propagated through the associative law in
all four positions ((x y) z = x (y z) with the new entry as xy, yz,
(xy)z or x(yz)), which both rejects dead ends and deduces further entries.
A completed table is a group; tuples with a redundant generator are
dropped, and the survivors are merged by canonical form.
"""

from __future__ import annotations

import hashlib
import math
import threading
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .canon import canonical_certificate
from .config import DEFAULT_BOUNDS, require
from .group import CayleyGroup


class CensusTimeout(RuntimeError):
    """Raised when a census runs out of time or is cancelled.

    ``stats`` and ``partial`` describe the work done so far.
    """

    def __init__(self, message: str, stats: "CensusStats", partial: list):
        super().__init__(message)
        self.stats = stats
        self.partial = partial


@dataclass
class CensusStats:
    nodes: int = 0
    prunes: int = 0
    leaves: int = 0
    redundant: int = 0
    elapsed: float = 0.0

    def merge(self, other: "CensusStats"):
        self.nodes += other.nodes
        self.prunes += other.prunes
        self.leaves += other.leaves
        self.redundant += other.redundant

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "prunes": self.prunes, "leaves": self.leaves,
                "redundant": self.redundant, "elapsed": round(self.elapsed, 3)}


@dataclass
class CensusResult:
    n: int
    groups: list  # CayleyGroup, each in canonical labelling
    canon: list  # hex digests, sorted; canon[i] belongs to groups[i]
    stats: CensusStats = field(default_factory=CensusStats)

    @property
    def count(self) -> int:
        return len(self.groups)


class _Conflict(Exception):
    pass


class _Deadline(Exception):
    pass


class _TableSearch:
    """Backtracking over standard tables of order n with d generators."""

    def __init__(self, n: int, d: int, deadline: Optional[float],
                 cancel: Optional[threading.Event]):
        self.n, self.d = n, d
        self.deadline = deadline
        self.cancel = cancel
        self.stats = CensusStats()
        self.T = [[-1] * n for _ in range(n)]
        self.rowinv = [[-1] * n for _ in range(n)]
        self.colinv = [[-1] * n for _ in range(n)]
        self.trail: list = []
        for x in range(n):
            self._raw_set(0, x, x)
            if x:
                self._raw_set(x, 0, x)
        self.trail.clear()
        self.found: list = []

    # -- assignment and undo ------------------------------------------------

    def _raw_set(self, x, y, v):
        self.T[x][y] = v
        self.rowinv[x][v] = y
        self.colinv[y][v] = x
        self.trail.append((x, y, v))

    def _undo(self, mark: int):
        T, rowinv, colinv, trail = self.T, self.rowinv, self.colinv, self.trail
        while len(trail) > mark:
            x, y, v = trail.pop()
            T[x][y] = -1
            rowinv[x][v] = -1
            colinv[y][v] = -1

    def _set(self, x, y, v, queue):
        cur = self.T[x][y]
        if cur == v:
            return
        if cur != -1 or self.rowinv[x][v] != -1 or self.colinv[y][v] != -1:
            raise _Conflict
        self._raw_set(x, y, v)
        queue.append((x, y))

    def _propagate(self, queue):
        T, rowinv, colinv, n = self.T, self.rowinv, self.colinv, self.n
        rng = range(n)
        while queue:
            a, b = queue.pop()
            c = T[a][b]
            Tb = T[b]
            Tc = T[c]
            Ta = T[a]
            for x in rng:
                # (x a) b = x c
                xa = T[x][a]
                if xa >= 0:
                    lhs = T[xa][b]
                    rhs = T[x][c]
                    if lhs >= 0:
                        if rhs < 0:
                            self._set(x, c, lhs, queue)
                        elif lhs != rhs:
                            raise _Conflict
                    elif rhs >= 0:
                        self._set(xa, b, rhs, queue)
                # c z = a (b z), with z = x
                bz = Tb[x]
                if bz >= 0:
                    lhs = Tc[x]
                    rhs = Ta[bz]
                    if lhs >= 0:
                        if rhs < 0:
                            self._set(a, bz, lhs, queue)
                        elif lhs != rhs:
                            raise _Conflict
                    elif rhs >= 0:
                        self._set(c, x, rhs, queue)
                # x y = a  =>  x (y b) = c
                y = rowinv[x][a]
                if y >= 0:
                    yb = T[y][b]
                    if yb >= 0:
                        self._set(x, yb, c, queue)
                    else:
                        w = rowinv[x][c]
                        if w >= 0:
                            self._set(y, b, w, queue)
                # y z = b  =>  (a y) z = c, with z = x
                y = colinv[x][b]
                if y >= 0:
                    ay = Ta[y]
                    if ay >= 0:
                        self._set(ay, x, c, queue)
                    else:
                        u = colinv[x][c]
                        if u >= 0:
                            self._set(a, y, u, queue)

    # -- search -----------------------------------------------------------------

    def _tick(self):
        st = self.stats
        st.nodes += 1
        if st.nodes & 255 == 0:
            if self.cancel is not None and self.cancel.is_set():
                raise _Deadline("cancelled")
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise _Deadline("timeout")

    def run(self) -> list:
        n, d = self.n, self.d
        if d == 0:
            if n == 1:
                self.found.append(np.zeros((1, 1), dtype=np.int64))
            return self.found
        if d >= n:
            return self.found
        queue: list = []
        try:
            for j in range(1, d + 1):
                self._set(0, j, j, queue)
            self._propagate(queue)
        except _Conflict:
            return self.found
        self._search(d + 1)
        return self.found

    def _search(self, fresh: int):
        n, d, T = self.n, self.d, self.T
        # next empty slot: lowest generator first, then lowest labelled row;
        # the slot order depends only on the partial table, so each
        # (group, tuple) pair still yields exactly one labelling
        p = j = -1
        for k in range(1, d + 1):
            for r in range(fresh):
                if T[r][k] < 0:
                    p, j = r, k
                    break
            if p >= 0:
                break
        if p < 0:
            if fresh == n:
                self._leaf()
            else:
                # the labelled elements form a proper subgroup
                self.stats.prunes += 1
            return
        self._tick()
        colinv, rowp = self.colinv[j], self.rowinv[p]
        choices = [v for v in range(fresh) if colinv[v] < 0 and rowp[v] < 0]
        if fresh < n:
            choices.append(fresh)
        for v in choices:
            mark = len(self.trail)
            queue: list = []
            try:
                self._set(p, j, v, queue)
                self._propagate(queue)
            except _Conflict:
                self.stats.prunes += 1
                self._undo(mark)
                continue
            if self._hopeless():
                self.stats.prunes += 1
            else:
                self._search(fresh + 1 if v == fresh else fresh)
            self._undo(mark)

    def _hopeless(self) -> bool:
        """Cheap necessary conditions on the tuple, checked on the partial table.

        Every group has an irredundant generating tuple whose element orders
        do not increase, so the search may insist that (a) no g_j lies in
        the span of g_1..g_{j-1}, and (b) ord(g_1) >= ord(g_2) >= ... .
        """
        T, d, n = self.T, self.d, self.n
        # (b) plus Lagrange: right multiplication by g_j is semiregular, so
        # all its cycles have the same length ord(g_j), which divides n
        prev = None
        for j in range(1, d + 1):
            seen = [False] * n
            length = None
            longest = 0
            for start in range(n):
                if seen[start] or T[start][j] < 0 and self.colinv[j][start] < 0:
                    continue
                # walk back to the start of an open chain, if any
                x = start
                while True:
                    w = self.colinv[j][x]
                    if w < 0 or w == start:
                        break
                    x = w
                head = x if self.colinv[j][x] < 0 else start
                x, size = head, 0
                while x >= 0 and not seen[x]:
                    seen[x] = True
                    size += 1
                    x = T[x][j]
                if x >= 0:  # closed cycle
                    if n % size or (length is not None and size != length):
                        return True
                    length = size
                longest = max(longest, size)
            if length is not None and longest > length:
                return True
            low = length if length is not None else longest
            if prev is not None and low > prev:
                return True
            prev = length
        # (a): breadth-first reach from the identity using columns < j
        reach = [False] * self.n
        reach[0] = True
        frontier = [0]
        for j in range(1, d):
            # extend the reach with column j, then test label j + 1
            frontier = [x for x in range(self.n) if reach[x]]
            while frontier:
                nxt = []
                for x in frontier:
                    row = T[x]
                    for k in range(1, j + 1):
                        y = row[k]
                        if y >= 0 and not reach[y]:
                            reach[y] = True
                            nxt.append(y)
                frontier = nxt
            if reach[j + 1]:
                return True
        return False

    def _leaf(self):
        st = self.stats
        st.leaves += 1
        t = np.array(self.T, dtype=np.int64)
        if (t < 0).any():
            raise AssertionError("generator columns complete but table is not")
        gens = list(range(1, self.d + 1))
        for j in gens:
            others = [g for g in gens if g != j]
            if len(closure_members_table(t, others)) == self.n:
                st.redundant += 1
                return
        self.found.append(t)


def closure_members_table(t: np.ndarray, gens) -> list:
    mask = np.zeros(t.shape[0], dtype=bool)
    mask[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    gens = np.asarray(gens, dtype=np.int64)
    while frontier.size and gens.size:
        nxt = t[np.ix_(frontier, gens)].ravel()
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    return np.nonzero(mask)[0].tolist()


def max_generators(n: int) -> int:
    """An irredundant generating tuple of a group of order n has at most log2(n) entries."""
    return max(0, int(math.log2(n) + 1e-9)) if n > 1 else 0


def _search_one(args):
    n, d, deadline = args
    s = _TableSearch(n, d, deadline, None)
    try:
        found = s.run()
    except _Deadline as exc:
        return None, s.stats, str(exc)
    return found, s.stats, None


def enumerate_groups(n: int, bound: int = DEFAULT_BOUNDS.census,
                     timeout: Optional[float] = 600.0,
                     cancel: Optional[threading.Event] = None,
                     jobs: int = 1) -> CensusResult:
    """One representative per isomorphism class of groups of order n."""
    if n < 1:
        raise ValueError("order must be positive")
    require(n, bound, "census")
    t0 = time.monotonic()
    deadline = None if timeout is None else t0 + timeout
    stats = CensusStats()
    tables: list = []
    ds = list(range(0 if n == 1 else 1, max_generators(n) + 1))
    if jobs > 1 and cancel is None:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_search_one, [(n, d, deadline) for d in ds]))
        for found, st, err in outcomes:
            stats.merge(st)
            if err is not None:
                stats.elapsed = time.monotonic() - t0
                raise CensusTimeout(f"census of order {n}: {err}", stats, [])
            tables.extend(found)
    else:
        for d in ds:
            s = _TableSearch(n, d, deadline, cancel)
            try:
                tables.extend(s.run())
            except _Deadline as exc:
                stats.merge(s.stats)
                stats.elapsed = time.monotonic() - t0
                partial = _merge(tables)[0]
                raise CensusTimeout(f"census of order {n}: {exc}", stats, partial) from None
            stats.merge(s.stats)
    groups, canon = _merge(tables)
    stats.elapsed = time.monotonic() - t0
    return CensusResult(n, groups, canon, stats)


def _merge(tables: list):
    by_canon: dict = {}
    for t in tables:
        c = CayleyGroup(t, check=False)
        cert = canonical_certificate(c, bound=max(c.order, DEFAULT_BOUNDS.canonical))
        if cert not in by_canon:
            by_canon[cert] = c
    out = []
    for cert, c in by_canon.items():
        n = c.order
        table = np.frombuffer(cert, dtype=np.uint8).reshape(n, n).astype(np.int64)
        out.append((hashlib.sha256(cert).hexdigest(), CayleyGroup(table, check=True)))
    out.sort(key=lambda pair: pair[0])
    return [g for _, g in out], [h for h, _ in out]
