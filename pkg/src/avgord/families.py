"""Constructors for every group family the package knows by name."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import descriptor as D
from .config import DEFAULT_BOUNDS, require
from .group import (
    CayleyGroup,
    GroupHandle,
    NotCentralInvolution,
    as_cayley,
    center,
    central_product,
    direct_product,
)
from .perm import Permutation, PermGroup

# order-3 companion block of x^2 + x + 1 over GF(2), acting on column vectors
COMPANION = ((0, 1), (1, 1))


class NotAbelianError(ValueError):
    pass


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [])
    return PermGroup(n, [Permutation.from_cycles(n, tuple(range(n)))])


def abelian_group(factors) -> PermGroup:
    """Product of cyclic groups, each acting on its own block of points."""
    factors = [f for f in factors if f > 1]
    degree = sum(factors) or 1
    gens = []
    start = 0
    for f in factors:
        gens.append(Permutation.from_cycles(degree, tuple(range(start, start + f))))
        start += f
    return PermGroup(degree, gens)


def elementary_abelian(p: int, k: int) -> PermGroup:
    return abelian_group([p] * k)


def dihedral(m: int) -> PermGroup:
    """Dihedral group of order 2m (m >= 2)."""
    if m == 2:
        return PermGroup(4, [Permutation.from_cycles(4, (0, 1), (2, 3)),
                             Permutation.from_cycles(4, (0, 2), (1, 3))])
    rot = Permutation.from_cycles(m, tuple(range(m)))
    ref = Permutation(tuple((-i) % m for i in range(m)))
    return PermGroup(m, [rot, ref])


def symmetric(n: int) -> PermGroup:
    if n <= 1:
        return PermGroup(1, [])
    if n == 2:
        return PermGroup(2, [Permutation.from_cycles(2, (0, 1))])
    return PermGroup(n, [Permutation.from_cycles(n, (0, 1)),
                         Permutation.from_cycles(n, tuple(range(n)))])


def alternating(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup(max(n, 1), [])
    gens = [Permutation.from_cycles(n, (0, 1, 2))]
    if n > 3:
        cyc = tuple(range(n)) if n % 2 else tuple(range(1, n))
        gens.append(Permutation.from_cycles(n, cyc))
    return PermGroup(n, gens)


def generalized_dihedral(a: GroupHandle) -> CayleyGroup:
    """``A`` extended by an involution inverting every element of ``A``.

    Element ``(x, s)`` has index ``s * |A| + x``; the outer coset is the set
    of indices ``>= |A|``.
    """
    ca = as_cayley(a)
    if not ca.is_abelian:
        raise NotAbelianError("generalized dihedral group needs an abelian input")
    t = ca.table.astype(np.int64)
    n = ca.order
    inv = ca.inverses.astype(np.int64)
    table = np.empty((2 * n, 2 * n), dtype=np.int64)
    # (x, s)(y, u) = (x * y^((-1)^s), s + u)
    table[:n, :n] = t
    table[:n, n:] = t + n
    table[n:, :n] = t[:, inv] + n
    table[n:, n:] = t[:, inv]
    return CayleyGroup(table, check=False)


def _the_central_involution(g: GroupHandle) -> int:
    c = as_cayley(g)
    z = center(c)
    invols = [x for x in z.members if c.orders[x] == 2]
    if len(invols) != 1:
        raise NotCentralInvolution(
            f"centre has {len(invols)} involutions; designate the amalgamated element"
        )
    return invols[0]


def central_product_default(a: GroupHandle, b: GroupHandle) -> CayleyGroup:
    return central_product(a, _the_central_involution(a), b, _the_central_involution(b))


def extraspecial_H(r: int) -> CayleyGroup:
    """Central product of r copies of D8."""
    if not 1 <= r <= D.MAX_R:
        raise ValueError(f"H(r) needs 1 <= r <= {D.MAX_R}")
    d8 = as_cayley(dihedral(4))
    g = d8
    for _ in range(r - 1):
        g = central_product_default(g, d8)
    return g


def s_group(r: int) -> CayleyGroup:
    """The 2-group on c, x_i, y_i (all involutions, y_i central, [c, x_i] = y_i).

    Elements are normal-form words ``c^a x^b y^e`` encoded as bit fields:
    bit 0 is a, bits 1..r are b, bits r+1..2r are e.  Moving c past x_i uses
    ``x_i c = c x_i y_i``.
    """
    if not 1 <= r <= D.MAX_R:
        raise ValueError(f"S(r) needs 1 <= r <= {D.MAX_R}")
    n = 2 ** (2 * r + 1)
    idx = np.arange(n, dtype=np.int64)
    a = idx & 1
    b = (idx >> 1) & ((1 << r) - 1)
    e = idx >> (r + 1)
    # (c^a x^b y^e)(c^a' x^b' y^e') = c^(a+a') x^(b+b') y^(e+e'+a'b)
    a2, b2, e2 = a[None, :], b[None, :], e[None, :]
    a1, b1, e1 = a[:, None], b[:, None], e[:, None]
    na = a1 ^ a2
    nb = b1 ^ b2
    ne = e1 ^ e2 ^ (b1 * a2)
    table = na | (nb << 1) | (ne << (r + 1))
    return CayleyGroup(table, check=(n <= 256))


def _block_affine(k: int, block: int, linear: list, translations: list) -> PermGroup:
    """Diagonal affine action on k blocks of ``block`` points each."""
    degree = k * block
    gens = []
    for i in range(k):
        for tr in translations:
            imgs = list(range(degree))
            for v in range(block):
                imgs[i * block + v] = i * block + tr[v]
            gens.append(Permutation(tuple(imgs)))
    imgs = [i * block + linear[v] for i in range(k) for v in range(block)]
    gens.append(Permutation(tuple(imgs)))
    return PermGroup(degree, gens)


def _apply_companion(v: int) -> int:
    b0, b1 = v & 1, (v >> 1) & 1
    (m00, m01), (m10, m11) = COMPANION
    return ((m00 * b0 + m01 * b1) % 2) | (((m10 * b0 + m11 * b1) % 2) << 1)


def frobenius_2_3(k: int, bound: int = DEFAULT_BOUNDS.enumeration) -> PermGroup:
    """C2^(2k) semidirect C3, the C3 acting by k companion blocks.

    Realised on k blocks of the 4 vectors of GF(2)^2: translations by the
    two basis vectors of each block, plus the companion matrix applied to
    every block at once.
    """
    if k < 1:
        raise ValueError("Frob2 needs k >= 1")
    require(3 * 4**k, bound, "Frob2")
    linear = [_apply_companion(v) for v in range(4)]
    translations = [[v ^ 1 for v in range(4)], [v ^ 2 for v in range(4)]]
    return _block_affine(k, 4, linear, translations)


def frobenius_3_2(k: int, bound: int = DEFAULT_BOUNDS.enumeration) -> PermGroup:
    """C3^k extended by the inverting involution, on k copies of GF(3)."""
    if k < 1:
        raise ValueError("Frob3 needs k >= 1")
    require(2 * 3**k, bound, "Frob3")
    linear = [(-v) % 3 for v in range(3)]
    translations = [[(v + 1) % 3 for v in range(3)]]
    return _block_affine(k, 3, linear, translations)


def descriptor_order(d) -> int:
    if isinstance(d, D.Cyc):
        return d.n
    if isinstance(d, D.EA):
        return d.p**d.k
    if isinstance(d, D.Ab):
        return int(np.prod(d.factors))
    if isinstance(d, D.Dih):
        return 2 * d.m
    if isinstance(d, D.GD):
        return 2 * descriptor_order(d.inner)
    if isinstance(d, (D.H, D.Sgrp)):
        return 2 ** (2 * d.r + 1)
    if isinstance(d, D.Frob2):
        return 3 * 4**d.k
    if isinstance(d, D.Frob3):
        return 2 * 3**d.k
    if isinstance(d, D.Sym):
        return int(np.prod(range(1, d.n + 1), dtype=object))
    if isinstance(d, D.Alt):
        return max(1, descriptor_order(D.Sym(d.n)) // 2)
    if isinstance(d, D.Prod):
        return descriptor_order(d.left) * descriptor_order(d.right)
    if isinstance(d, D.CProd):
        return descriptor_order(d.left) * descriptor_order(d.right) // 2
    raise TypeError(f"not a descriptor: {d!r}")


def build(d, bound: int = DEFAULT_BOUNDS.enumeration) -> GroupHandle:
    if isinstance(d, str):
        d = D.parse_descriptor(d)
    require(descriptor_order(d), bound, f"build {d}")
    return _build(d)


@lru_cache(maxsize=256)
def _build(d) -> GroupHandle:
    if isinstance(d, D.Cyc):
        return cyclic(d.n)
    if isinstance(d, D.EA):
        return elementary_abelian(d.p, d.k)
    if isinstance(d, D.Ab):
        return abelian_group(d.factors)
    if isinstance(d, D.Dih):
        return dihedral(d.m)
    if isinstance(d, D.GD):
        return generalized_dihedral(_build(d.inner))
    if isinstance(d, D.H):
        return extraspecial_H(d.r)
    if isinstance(d, D.Sgrp):
        return s_group(d.r)
    if isinstance(d, D.Frob2):
        return frobenius_2_3(d.k)
    if isinstance(d, D.Frob3):
        return frobenius_3_2(d.k)
    if isinstance(d, D.Sym):
        return symmetric(d.n)
    if isinstance(d, D.Alt):
        return alternating(d.n)
    if isinstance(d, D.Prod):
        return direct_product(_build(d.left), _build(d.right))
    if isinstance(d, D.CProd):
        return central_product_default(_build(d.left), _build(d.right))
    raise TypeError(f"not a descriptor: {d!r}")
