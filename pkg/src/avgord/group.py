"""Finite groups as multiplication tables, plus the structural primitives.

Elements are integers.  For a :class:`CayleyGroup` they index the rows of
the table; for a :class:`~avgord.perm.PermGroup` they index the
deterministic element enumeration of its stabilizer chain.  Element 0 is the
identity in both backends, so every function below works on either.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .config import DEFAULT_BOUNDS, require
from .perm import Permutation, PermGroup


class NotAGroupTable(ValueError):
    pass


class NotNormalError(ValueError):
    pass


class NotCentralInvolution(ValueError):
    pass


def _index_dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


class CayleyGroup:
    """A group given by its full multiplication table.

    ``table[i, j]`` is the index of ``i * j``.  Row and column 0 belong to
    the identity.  Hand-built tables are checked at construction; pass
    ``check=False`` only from constructors that are correct by design.
    """

    def __init__(self, table, labels: Optional[Sequence[str]] = None, check: bool = True,
                 assoc_full_bound: int = DEFAULT_BOUNDS.assoc_full, seed: int = 0):
        t = np.asarray(table)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise NotAGroupTable("table must be a non-empty square array")
        n = t.shape[0]
        self.table = np.ascontiguousarray(t, dtype=_index_dtype(n))
        self.table.setflags(write=False)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise NotAGroupTable("one label per element required")
        self.projection = None
        if check:
            self._validate(assoc_full_bound, seed)

    def _validate(self, assoc_full_bound: int, seed: int):
        t = self.table.astype(np.int64)
        n = t.shape[0]
        ar = np.arange(n)
        if t.min() < 0 or t.max() >= n:
            raise NotAGroupTable("entries out of range")
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise NotAGroupTable("row/column 0 must be the identity")
        srt = np.sort(t, axis=1)
        if not (srt == ar).all() or not (np.sort(t, axis=0) == ar[:, None]).all():
            raise NotAGroupTable("table is not a Latin square")
        if n <= assoc_full_bound:
            # (a*b)*c == a*(b*c) for all triples, one left factor at a time
            for a in range(n):
                if not np.array_equal(t[t[a]], t[a][t]):
                    raise NotAGroupTable("multiplication is not associative")
        else:
            rng = np.random.default_rng(seed)
            m = 10 * n * n
            for start in range(0, m, 1 << 20):
                k = min(1 << 20, m - start)
                a, b, c = rng.integers(0, n, size=(3, k))
                if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                    raise NotAGroupTable("multiplication is not associative (sampled)")

    # -- basic structure -------------------------------------------------

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.order

    @cached_property
    def rows(self) -> list:
        """The table as nested Python lists, for tight scalar loops."""
        return self.table.tolist()

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmin(self.table, axis=1)

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverses[i])

    @cached_property
    def orders(self) -> np.ndarray:
        n = self.order
        t = self.table
        ar = np.arange(n)
        out = np.zeros(n, dtype=np.int64)
        power = np.zeros(n, dtype=np.int64)  # x^0
        k = 0
        pending = np.ones(n, dtype=bool)
        while pending.any():
            k += 1
            power = t[power, ar]
            hit = pending & (power == 0)
            out[hit] = k
            pending &= ~hit
            if k > n:
                raise NotAGroupTable("element without finite order")
        return out

    @cached_property
    def centralizer_sizes(self) -> np.ndarray:
        t = self.table
        return (t == t.T).sum(axis=1)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def generators(self) -> tuple:
        return greedy_generators(self)

    def cayley(self) -> "CayleyGroup":
        return self

    # -- serialisation ---------------------------------------------------

    def to_json(self) -> dict:
        return {"format": "cayley", "version": 1, "n": self.order,
                "table": self.table.reshape(-1).tolist()}

    @classmethod
    def from_json(cls, obj: dict, check: bool = True) -> "CayleyGroup":
        if obj.get("format") != "cayley" or obj.get("version") != 1:
            raise ValueError("unsupported Cayley table serialisation")
        n = int(obj["n"])
        return cls(np.asarray(obj["table"]).reshape(n, n), check=check)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def __repr__(self):
        return f"CayleyGroup(order={self.order})"


GroupHandle = Union[PermGroup, CayleyGroup]


@dataclass(frozen=True)
class Subgroup:
    parent: GroupHandle
    members: tuple
    generators: tuple

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(group_order(self.parent), dtype=bool)
        m[list(self.members)] = True
        return m

    @cached_property
    def bits(self) -> int:
        return sum(1 << i for i in self.members)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"Subgroup(order={self.order}, generators={self.generators})"


# -- backend bridging ----------------------------------------------------

def group_order(g: GroupHandle) -> int:
    return g.order


def as_cayley(g: GroupHandle, bound: int = DEFAULT_BOUNDS.iso * 4) -> CayleyGroup:
    """The multiplication table of ``g``; element indices are preserved."""
    if isinstance(g, CayleyGroup):
        return g
    if g._cayley is not None:
        return g._cayley
    n = g.order
    require(n, bound, "table conversion")
    elts = g.element_array().astype(np.int64)
    base = list(g.base) or [0]
    keys = _base_keys(elts[:, base], g.degree)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    table = np.empty((n, n), dtype=_index_dtype(n))
    for i in range(n):
        # x_i * x_j sends b to x_j[x_i[b]]
        prod = elts[:, elts[i, base]]
        pos = np.searchsorted(sorted_keys, _base_keys(prod, g.degree))
        table[i] = order[pos]
    c = CayleyGroup(table, check=False)
    g._cayley = c
    return c


def _base_keys(rows: np.ndarray, degree: int) -> np.ndarray:
    k = rows.shape[1]
    if degree ** k < 2**62:
        radix = degree ** np.arange(k, dtype=np.int64)
        return rows.astype(np.int64) @ radix
    # wide bases: fall back to exact Python integers
    return np.array([int.from_bytes(r.astype(np.int32).tobytes(), "little") for r in rows],
                    dtype=object)


def elements(g: GroupHandle, bound: int = DEFAULT_BOUNDS.enumeration) -> Iterator[int]:
    require(g.order, bound, "element enumeration")
    return iter(range(g.order))


def element_orders(g: GroupHandle) -> np.ndarray:
    if isinstance(g, PermGroup) and g._cayley is None:
        return g.element_orders()
    return as_cayley(g).orders


def element_order(g: GroupHandle, x) -> int:
    if isinstance(x, Permutation):
        if not isinstance(g, PermGroup) or not g.contains(x):
            raise ValueError("element not in group")
        return x.order()
    if not 0 <= int(x) < g.order:
        raise ValueError(f"element {x} not in a group of order {g.order}")
    if isinstance(g, PermGroup):
        return g.element(int(x)).order()
    return int(g.orders[int(x)])


def regular_representation(g: CayleyGroup) -> PermGroup:
    """Left-multiplication action on the elements."""
    g = as_cayley(g)
    gens = [Permutation(tuple(int(v) for v in g.table[s])) for s in g.generators]
    return PermGroup(g.order, gens)


# -- closure, normality, quotients -----------------------------------------

def closure_members(g: GroupHandle, seeds: Iterable[int]) -> list:
    t = as_cayley(g).table
    gens = np.unique(np.asarray([int(x) for x in seeds if int(x) != 0], dtype=np.int64))
    mask = np.zeros(t.shape[0], dtype=bool)
    mask[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    while frontier.size and gens.size:
        nxt = t[np.ix_(frontier, gens)].ravel()
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    return np.nonzero(mask)[0].tolist()


def subgroup_closure(g: GroupHandle, seeds: Iterable[int],
                     bound: int = DEFAULT_BOUNDS.enumeration) -> Subgroup:
    require(g.order, bound, "subgroup closure")
    seeds = [int(s) for s in seeds]
    for s in seeds:
        if not 0 <= s < g.order:
            raise ValueError(f"seed {s} is not an element")
    members = closure_members(g, seeds)
    assert g.order % len(members) == 0, "Lagrange violated: table is not a group"
    gens = tuple(s for s in dict.fromkeys(seeds) if s != 0)
    return Subgroup(g, tuple(members), gens)


def whole_group(g: GroupHandle) -> Subgroup:
    c = as_cayley(g)
    return Subgroup(g, tuple(range(g.order)), tuple(c.generators))


def trivial_subgroup(g: GroupHandle) -> Subgroup:
    return Subgroup(g, (0,), ())


def conjugate(g: GroupHandle, x: int, by: int) -> int:
    """``by^-1 * x * by``."""
    c = as_cayley(g)
    t = c.rows
    return t[t[c.inv(by)][x]][by]


def commutator(g: GroupHandle, x: int, y: int) -> int:
    """``x^-1 y^-1 x y``."""
    c = as_cayley(g)
    t = c.rows
    inv = c.inverses
    return t[t[t[int(inv[x])][int(inv[y])]][x]][y]


def is_normal(g: GroupHandle, h: Subgroup) -> bool:
    c = as_cayley(g)
    mask = h.mask
    t = c.table
    inv = c.inverses
    hg = list(h.generators) or [m for m in h.members if m]
    for s in c.generators:
        # s^-1 * h * s for every generator h of H
        conj = t[t[inv[s], hg], s]
        if not mask[conj].all():
            return False
    return True


def normal_closure(g: GroupHandle, seeds: Iterable[int]) -> Subgroup:
    c = as_cayley(g)
    t = c.table
    inv = c.inverses
    seeds = [int(s) for s in seeds if int(s) != 0]
    sub = subgroup_closure(c, seeds)
    gens = list(seeds)
    while True:
        mask = sub.mask
        extra = []
        for s in c.generators:
            conj = t[t[inv[s], gens], s] if gens else np.array([], dtype=int)
            for x in conj:
                if not mask[x]:
                    extra.append(int(x))
        if not extra:
            return Subgroup(g, sub.members, tuple(dict.fromkeys(gens)))
        gens.extend(dict.fromkeys(extra))
        sub = subgroup_closure(c, gens)


def center(g: GroupHandle) -> Subgroup:
    c = as_cayley(g)
    t = c.table
    gens = list(c.generators)
    comm = (t[:, gens] == t[gens, :].T).all(axis=1)
    members = tuple(int(i) for i in np.nonzero(comm)[0])
    return Subgroup(g, members, tuple(greedy_generators_of(c, members)))


def derived_subgroup(g: GroupHandle) -> Subgroup:
    c = as_cayley(g)
    gens = list(c.generators)
    comms = {commutator(c, a, b) for a in gens for b in gens}
    comms.discard(0)
    return normal_closure(c, sorted(comms))


def quotient(g: GroupHandle, n: Subgroup) -> CayleyGroup:
    """Table of ``g / n`` on left cosets; ``result.projection[x]`` is the coset of x."""
    c = as_cayley(g)
    if not is_normal(c, n):
        raise NotNormalError("quotient by a subgroup that is not normal")
    t = c.table
    members = np.asarray(n.members)
    reps_of = t[:, members].min(axis=1)
    reps = np.unique(reps_of)  # reps[0] == 0, the coset of the identity
    index = np.full(c.order, -1, dtype=np.int64)
    index[reps] = np.arange(len(reps))
    proj = index[reps_of]
    q = proj[t[np.ix_(reps, reps)]]
    out = CayleyGroup(q, check=False)
    out.projection = proj
    return out


# -- products --------------------------------------------------------------

def direct_product(a: GroupHandle, b: GroupHandle,
                   bound: int = DEFAULT_BOUNDS.enumeration) -> GroupHandle:
    """``a x b``; element ``(i, j)`` has index ``i * |b| + j``."""
    require(a.order * b.order, bound, "direct product")
    if isinstance(a, PermGroup) and isinstance(b, PermGroup):
        da, db = a.degree, b.degree
        gens = []
        for p in a.generators:
            gens.append(Permutation(p.images + tuple(range(da, da + db))))
        for p in b.generators:
            gens.append(Permutation(tuple(range(da)) + tuple(da + i for i in p.images)))
        if not gens:
            gens = [Permutation.identity(da + db)]
        return PermGroup(da + db, gens)
    ta = as_cayley(a).table.astype(np.int64)
    tb = as_cayley(b).table.astype(np.int64)
    na, nb = ta.shape[0], tb.shape[0]
    table = (ta[:, None, :, None] * nb + tb[None, :, None, :]).reshape(na * nb, na * nb)
    return CayleyGroup(table, check=False)


def is_central_involution(g: GroupHandle, z: int) -> bool:
    c = as_cayley(g)
    if int(c.orders[z]) != 2:
        return False
    return bool((c.table[z, :] == c.table[:, z]).all())


def central_product(a: GroupHandle, z_a: int, b: GroupHandle, z_b: int) -> CayleyGroup:
    """``(a x b) / <(z_a, z_b)>`` for central involutions ``z_a``, ``z_b``."""
    for grp, z, name in ((a, z_a, "first"), (b, z_b, "second")):
        if not is_central_involution(grp, z):
            raise NotCentralInvolution(f"{name} amalgamation element is not a central involution")
    d = direct_product(as_cayley(a), as_cayley(b))
    z = z_a * b.order + z_b
    return quotient(d, Subgroup(d, (0, z), (z,)))


# -- generating sets -------------------------------------------------------

def greedy_generators_of(g: GroupHandle, members: Sequence[int], limit: int = 48) -> list:
    """A small generating list for the subgroup on ``members``.

    Each step adds the element whose join with the current subgroup is
    largest, among at most ``limit`` trial elements per step (highest order
    first).
    """
    c = as_cayley(g)
    orders = c.orders
    target = len(members)
    pool = sorted((int(m) for m in members if m != 0), key=lambda x: (-orders[x], x))
    gens: list = []
    cur = {0}
    while len(cur) < target:
        best = None
        tried = 0
        for x in pool:
            if x in cur:
                continue
            size = len(closure_members(c, gens + [x]))
            if best is None or size > best[0]:
                best = (size, x)
                if size == target:
                    break
            tried += 1
            if tried >= limit:
                break
        gens.append(best[1])
        cur = set(closure_members(c, gens))
    return gens


def greedy_generators(g: GroupHandle) -> tuple:
    return tuple(greedy_generators_of(g, range(g.order)))


def relabel(g: CayleyGroup, perm: Sequence[int]) -> CayleyGroup:
    """The same group with element ``x`` renamed ``perm[x]`` (``perm[0]`` must be 0)."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm[0] != 0:
        raise ValueError("relabelling must fix the identity")
    t = as_cayley(g).table.astype(np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    return CayleyGroup(perm[t[np.ix_(inv, inv)]], check=False)
