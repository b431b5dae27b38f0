"""Permutations on {0..n-1} and permutation groups with a stabilizer chain.

Products act on the right: ``(p * q)(i) == q(p(i))``, so ``p * q`` means
"apply p, then q".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exact import checked_count


class MalformedPermutation(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise MalformedPermutation(f"not a permutation: {self.images!r}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        imgs = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                imgs[a] = b
        return cls(tuple(imgs))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        q = other.images
        return Permutation(tuple(q[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list:
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.images else 1

    def __repr__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation{body}"


def _compose(p: tuple, q: tuple) -> tuple:
    return tuple(q[i] for i in p)


def _invert(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int):
        self.point = point
        self.gens: list = []
        self.transversal: dict = {}

    def rebuild(self, identity: tuple):
        # breadth-first orbit; first generator that reaches a point wins
        trans = {self.point: identity}
        queue = [self.point]
        for beta in queue:
            u = trans[beta]
            for g in self.gens:
                img = g[beta]
                if img not in trans:
                    trans[img] = _compose(u, g)
                    queue.append(img)
        self.transversal = trans


class PermGroup:
    """Permutation group with a deterministic stabilizer chain.

    Base points are the smallest point moved at each level; transversals are
    built breadth-first over the strong generators in insertion order, so
    the chain and the element enumeration order depend only on the input.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation]):
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(tuple(g))
            if g.degree != degree:
                raise MalformedPermutation(
                    f"generator of degree {g.degree} in a group of degree {degree}"
                )
            gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self._identity = tuple(range(degree))
        self._levels: list = []
        self._build()
        self.order = checked_count(
            math.prod(len(lv.transversal) for lv in self._levels)
        )
        self._elements = None
        self._index = None
        self._cayley = None

    # -- stabilizer chain ------------------------------------------------

    def _new_level_for(self, g: tuple) -> _Level:
        for i, j in enumerate(g):
            if i != j:
                return _Level(i)
        raise AssertionError("identity has no moved point")

    def _strip(self, g: tuple, start: int):
        for lvl in range(start, len(self._levels)):
            lv = self._levels[lvl]
            beta = g[lv.point]
            u = lv.transversal.get(beta)
            if u is None:
                return g, lvl
            g = _compose(g, _invert(u))
        return g, len(self._levels)

    def _build(self):
        ident = self._identity
        for g in self.generators:
            gt = g.images
            if gt == ident:
                continue
            if all(gt[lv.point] == lv.point for lv in self._levels):
                self._levels.append(self._new_level_for(gt))
            # a generator of G belongs to the level-0 strong generating set
            self._levels[0].gens.append(gt)
        if not self._levels:
            return
        for lv in self._levels:
            lv.rebuild(ident)
        i = len(self._levels) - 1
        while i >= 0:
            added_at = self._schreier_pass(i)
            if added_at is None:
                i -= 1
            else:
                i = added_at

    def _schreier_pass(self, i: int):
        ident = self._identity
        lv = self._levels[i]
        for beta, u in list(lv.transversal.items()):
            for x in list(lv.gens):
                ux = _compose(u, x)
                v = lv.transversal[ux[lv.point]]
                s = _compose(ux, _invert(v))
                if s == ident:
                    continue
                h, j = self._strip(s, i + 1)
                if h == ident:
                    continue
                if j == len(self._levels):
                    self._levels.append(self._new_level_for(h))
                for lvl in range(i + 1, j + 1):
                    self._levels[lvl].gens.append(h)
                    self._levels[lvl].rebuild(ident)
                return j
        return None

    # -- queries ---------------------------------------------------------

    @property
    def base(self) -> tuple:
        return tuple(lv.point for lv in self._levels)

    @property
    def transversal_sizes(self) -> tuple:
        return tuple(len(lv.transversal) for lv in self._levels)

    def contains(self, p) -> bool:
        imgs = p.images if isinstance(p, Permutation) else tuple(p)
        if len(imgs) != self.degree:
            return False
        h, _ = self._strip(imgs, 0)
        return h == self._identity

    def element_array(self) -> np.ndarray:
        """All elements as rows of an (order x degree) array, identity first."""
        if self._elements is None:
            dtype = np.int32 if self.degree > 32000 else np.int16
            elts = np.arange(self.degree, dtype=dtype)[None, :]
            for lv in reversed(self._levels):
                reps = [np.asarray(u, dtype=dtype) for u in lv.transversal.values()]
                # e * u == u[e]: apply the deeper factor first
                elts = np.concatenate([u[elts] for u in reps], axis=0)
            self._elements = elts
        return self._elements

    def element(self, i: int) -> Permutation:
        return Permutation(tuple(int(v) for v in self.element_array()[i]))

    def index_of(self, p) -> int:
        imgs = p.images if isinstance(p, Permutation) else tuple(p)
        if self._index is None:
            arr = self.element_array()
            self._index = {row.tobytes(): k for k, row in enumerate(arr)}
        key = np.asarray(imgs, dtype=self.element_array().dtype).tobytes()
        try:
            return self._index[key]
        except KeyError:
            raise ValueError("permutation is not an element of the group") from None

    def lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        """Vectorised ``index_of`` for an (m x degree) array of elements."""
        arr = self.element_array()
        if self._index is None:
            self._index = {row.tobytes(): k for k, row in enumerate(arr)}
        rows = np.ascontiguousarray(rows, dtype=arr.dtype)
        idx = self._index
        return np.fromiter((idx[r.tobytes()] for r in rows), dtype=np.int64, count=len(rows))

    def element_orders(self) -> np.ndarray:
        """Order of every element, by iterated powers of the whole array."""
        arr = self.element_array()
        n = arr.shape[0]
        ident = np.arange(self.degree, dtype=arr.dtype)
        orders = np.zeros(n, dtype=np.int64)
        power = arr.copy()
        k = 1
        pending = np.ones(n, dtype=bool)
        while pending.any():
            done = pending & (power == ident).all(axis=1)
            orders[done] = k
            pending &= ~done
            if not pending.any():
                break
            k += 1
            # x^(k+1) = x^k * x, i.e. apply x^k then x
            power = np.take_along_axis(arr, power.astype(np.int64), axis=1)
        return orders

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def bsgs_build(degree: int, generators: Iterable) -> PermGroup:
    return PermGroup(degree, generators)
