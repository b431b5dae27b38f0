"""Isomorphism testing by invariant screening and generator-image backtracking."""

from __future__ import annotations

from collections import Counter
from typing import Iterator, Optional

import numpy as np

from .config import DEFAULT_BOUNDS, require
from .group import CayleyGroup, GroupHandle, as_cayley, center, derived_subgroup


def element_keys(c: CayleyGroup) -> list:
    """Per-element isomorphism-invariant key: (order, centralizer size, #square roots)."""
    cached = getattr(c, "_element_keys", None)
    if cached is not None:
        return cached
    t = c.table
    ar = np.arange(c.order)
    roots = np.bincount(t[ar, ar], minlength=c.order)
    keys = list(zip(c.orders.tolist(), c.centralizer_sizes.tolist(), roots.tolist()))
    c._element_keys = keys
    return keys


def signature(g: GroupHandle) -> tuple:
    """Screening invariants; unequal signatures mean non-isomorphic."""
    c = as_cayley(g)
    cached = getattr(c, "_signature", None)
    if cached is None:
        keys = Counter(element_keys(c))
        cached = (c.order, c.is_abelian, center(c).order, derived_subgroup(c).order,
                  tuple(sorted(keys.items())))
        c._signature = cached
    return cached


def _key_ids(ka: list, kb: list):
    ids: dict = {}
    a = np.fromiter((ids.setdefault(k, len(ids)) for k in ka), dtype=np.int64, count=len(ka))
    b = np.fromiter((ids.setdefault(k, len(ids)) for k in kb), dtype=np.int64, count=len(kb))
    return a, b


def _extend(ta, tb, phi, gens, images, members_known):
    """Extend the partial map ``phi`` along right multiplication by ``gens``.

    Returns False on an inconsistency (the map would not be a function).
    """
    frontier = members_known
    while frontier.size:
        new_src = []
        new_img = []
        for s, im in zip(gens, images):
            src = ta[frontier, s].astype(np.int64)
            img = tb[phi[frontier], im].astype(np.int64)
            seen = phi[src]
            clash = (seen >= 0) & (seen != img)
            if clash.any():
                return False
            fresh = seen < 0
            new_src.append(src[fresh])
            new_img.append(img[fresh])
        src = np.concatenate(new_src)
        img = np.concatenate(new_img)
        if not src.size:
            break
        src, first = np.unique(src, return_index=True)
        img_first = img[first]
        # the same new element reached twice must agree
        full = np.full(len(phi), -1, dtype=np.int64)
        full[src] = img_first
        all_src = np.concatenate(new_src)
        if (full[all_src] != np.concatenate(new_img)).any():
            return False
        phi[src] = img_first
        frontier = src
    return True


def iter_isomorphisms(a: GroupHandle, b: GroupHandle, use_keys: bool = True,
                      gens: Optional[tuple] = None) -> Iterator[np.ndarray]:
    """Yield every isomorphism a -> b as an image array ``phi[x]``.

    The images of a fixed generating tuple of ``a`` are chosen one at a
    time; after each choice the map is propagated over the generated
    subgroup and checked for consistency, injectivity and (with
    ``use_keys``) preservation of element keys.
    """
    ca, cb = as_cayley(a), as_cayley(b)
    n = ca.order
    if cb.order != n:
        return
    ta, tb = ca.table, cb.table
    if use_keys:
        ka, kb = _key_ids(element_keys(ca), element_keys(cb))
    else:
        ka, kb = _key_ids(ca.orders.tolist(), cb.orders.tolist())
    gens = tuple(ca.generators if gens is None else gens)
    by_key: dict = {}
    for y, k in enumerate(kb.tolist()):
        by_key.setdefault(k, []).append(y)

    def rec(level, phi, images):
        known = np.nonzero(phi >= 0)[0]
        if level == len(gens):
            if len(known) == n:
                yield phi.copy()
            return
        used = np.zeros(n, dtype=bool)
        used[phi[known]] = True
        for y in by_key.get(int(ka[gens[level]]), []):
            if used[y]:
                continue
            nphi = phi.copy()
            if not _extend(ta, tb, nphi, gens[: level + 1], images + [y], known):
                continue
            dom = np.nonzero(nphi >= 0)[0]
            img = nphi[dom]
            if len(np.unique(img)) != len(dom):
                continue
            if (ka[dom] != kb[img]).any():
                continue
            yield from rec(level + 1, nphi, images + [y])

    phi0 = np.full(n, -1, dtype=np.int64)
    phi0[0] = 0
    yield from rec(0, phi0, [])


def find_isomorphism(a: GroupHandle, b: GroupHandle, screen: bool = True,
                     bound: int = DEFAULT_BOUNDS.iso) -> Optional[np.ndarray]:
    require(max(a.order, b.order), bound, "isomorphism test")
    if a.order != b.order:
        return None
    ca, cb = as_cayley(a), as_cayley(b)
    if np.array_equal(ca.table, cb.table):
        return np.arange(ca.order)
    if screen and signature(ca) != signature(cb):
        return None
    return next(iter_isomorphisms(ca, cb, use_keys=screen), None)


def is_isomorphic(a: GroupHandle, b: GroupHandle, screen: bool = True,
                  bound: int = DEFAULT_BOUNDS.iso) -> bool:
    """True iff ``a`` and ``b`` are isomorphic.

    ``screen=False`` skips the invariant screen and filters generator
    images by element order alone, forcing the backtracking to decide.
    """
    return find_isomorphism(a, b, screen=screen, bound=bound) is not None


def is_homomorphism(a: GroupHandle, b: GroupHandle, phi) -> bool:
    ta, tb = as_cayley(a).table, as_cayley(b).table
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[ta], tb[np.ix_(phi, phi)]))
