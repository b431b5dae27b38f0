"""Order spectra, average order and the structural invariants the lemmas need."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .config import DEFAULT_BOUNDS, require
from .descriptor import is_prime
from .exact import Rational, checked_count, rational_make, rational_to_json
from .group import (
    CayleyGroup,
    GroupHandle,
    Subgroup,
    as_cayley,
    closure_members,
    derived_subgroup,
    element_orders,
    greedy_generators_of,
    is_normal,
    normal_closure,
    quotient,
    subgroup_closure,
)
from .iso import is_homomorphism, iter_isomorphisms


# -- spectra -----------------------------------------------------------------

@dataclass(frozen=True)
class OrderSpectrum:
    counts: dict  # element order -> number of elements of that order

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def psi(self) -> int:
        return checked_count(sum(k * v for k, v in self.counts.items()))

    @property
    def exponent(self) -> int:
        return math.lcm(*self.counts) if self.counts else 1

    def n(self, k: int) -> int:
        return self.counts.get(k, 0)

    def to_json(self) -> dict:
        return {str(k): v for k, v in sorted(self.counts.items())}

    @classmethod
    def from_json(cls, obj: dict) -> "OrderSpectrum":
        return cls({int(k): int(v) for k, v in obj.items()})


def prime_factors(n: int) -> list:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class SpectrumSummary:
    order: int
    psi: int
    avg: Rational
    spectrum: OrderSpectrum
    primes: tuple
    exponent: int

    @classmethod
    def of(cls, spec: OrderSpectrum) -> "SpectrumSummary":
        order = checked_count(spec.total)
        return cls(order, spec.psi, rational_make(spec.psi, order), spec,
                   tuple(prime_factors(order)), spec.exponent)

    def to_json(self) -> dict:
        return {"order": self.order, "psi": self.psi, "avg": rational_to_json(self.avg),
                "spectrum": self.spectrum.to_json(), "primes": list(self.primes),
                "exponent": self.exponent}


def order_spectrum(g: GroupHandle, bound: int = DEFAULT_BOUNDS.enumeration) -> OrderSpectrum:
    require(g.order, bound, "order spectrum")
    orders = element_orders(g)
    ks, cs = np.unique(orders, return_counts=True)
    return OrderSpectrum({int(k): int(c) for k, c in zip(ks, cs)})


def psi(g: GroupHandle) -> int:
    return order_spectrum(g).psi


def avg_order(g: GroupHandle) -> Rational:
    return rational_make(psi(g), g.order)


def summary(g: GroupHandle) -> SpectrumSummary:
    return SpectrumSummary.of(order_spectrum(g))


def spectrum_of_members(g: GroupHandle, members) -> OrderSpectrum:
    orders = element_orders(g)[np.asarray(list(members), dtype=np.int64)]
    ks, cs = np.unique(orders, return_counts=True)
    return OrderSpectrum({int(k): int(c) for k, c in zip(ks, cs)})


def subgroup_psi(h: Subgroup) -> int:
    return spectrum_of_members(h.parent, h.members).psi


# -- subsets -------------------------------------------------------------------

@dataclass(frozen=True)
class Coset:
    """The left coset ``rep * subgroup``."""
    subgroup: Subgroup
    rep: int


@dataclass(frozen=True)
class Complement:
    """``G \\ subgroup``."""
    subgroup: Subgroup


Subset = Union[Subgroup, Coset, Complement]


def subset_members(g: GroupHandle, subset: Subset) -> np.ndarray:
    if isinstance(subset, Subgroup):
        return np.asarray(subset.members, dtype=np.int64)
    if isinstance(subset, Coset):
        if not 0 <= subset.rep < g.order:
            raise ValueError("coset representative is not an element")
        t = as_cayley(g).table
        return t[subset.rep, list(subset.subgroup.members)].astype(np.int64)
    if isinstance(subset, Complement):
        return np.nonzero(~subset.subgroup.mask)[0]
    raise TypeError(f"malformed subset: {subset!r}")


def n_k_in_subset(g: GroupHandle, subset: Subset, k: int) -> int:
    members = subset_members(g, subset)
    return checked_count(int((element_orders(g)[members] == k).sum()))


# -- Sylow, nilpotency, solvability -------------------------------------------

def normalizer(g: GroupHandle, h: Subgroup) -> Subgroup:
    c = as_cayley(g)
    t = c.table
    gens = list(h.generators) or [0]
    inv = c.inverses
    # x^-1 h x for every x and every generator h
    conj = t[t[inv][:, gens], np.arange(c.order)[:, None]]
    ok = h.mask[conj].all(axis=1)
    members = tuple(int(x) for x in np.nonzero(ok)[0])
    return Subgroup(g, members, tuple(greedy_generators_of(c, members)))


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def sylow(g: GroupHandle, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown by adjoining p-elements of the normalizer."""
    n = g.order
    if not is_prime(p) or n % p:
        raise ValueError(f"{p} is not a prime divisor of {n}")
    c = as_cayley(g)
    orders = c.orders
    target = p_part(n, p)
    is_p_elt = np.array([o == p_part(o, p) for o in orders.tolist()])
    # start from a p-element of largest order
    cand = np.nonzero(is_p_elt)[0]
    start = int(cand[np.argmax(orders[cand])])
    P = subgroup_closure(c, [start])
    while P.order < target:
        N = normalizer(c, P)
        grown = None
        for y in N.members:
            if is_p_elt[y] and not P.mask[y]:
                grown = subgroup_closure(c, list(P.generators) + [y])
                break
        if grown is None:
            raise AssertionError("Sylow ascent stalled")
        P = grown
    return P


def is_abelian(g: GroupHandle) -> bool:
    return as_cayley(g).is_abelian


def is_nilpotent(g: GroupHandle) -> bool:
    # every Sylow subgroup is normal iff it is unique iff the p-elements number |P|
    orders = element_orders(g)
    for p in prime_factors(g.order):
        q = p_part(g.order, p)
        if int((q % orders == 0).sum()) != q:
            return False
    return True


def is_nilpotent_by_sylow(g: GroupHandle) -> bool:
    c = as_cayley(g)
    return all(is_normal(c, sylow(c, p)) for p in prime_factors(c.order))


def derived_series(g: GroupHandle) -> list:
    c = as_cayley(g)
    out = [c.order]
    cur = c
    while cur.order > 1:
        d = derived_subgroup(cur)
        if d.order == cur.order:
            break
        out.append(d.order)
        cur = _subgroup_table(cur, d)
    return out


def is_solvable(g: GroupHandle) -> bool:
    return derived_series(g)[-1] == 1


def _subgroup_table(g: CayleyGroup, h: Subgroup) -> CayleyGroup:
    """The subgroup ``h`` as a group in its own right (element k = h.members[k])."""
    members = np.asarray(h.members, dtype=np.int64)
    index = np.full(g.order, -1, dtype=np.int64)
    index[members] = np.arange(len(members))
    return CayleyGroup(index[g.table[np.ix_(members, members)]], check=False)


def subgroup_as_group(h: Subgroup) -> CayleyGroup:
    return _subgroup_table(as_cayley(h.parent), h)


# -- subgroups ------------------------------------------------------------------

def cyclic_subgroups(g: GroupHandle) -> list:
    c = as_cayley(g)
    seen = {}
    for x in range(c.order):
        members = tuple(closure_members(c, [x]))
        if members not in seen:
            seen[members] = Subgroup(g, members, (x,) if x else ())
    return list(seen.values())


def subgroup_lattice(g: GroupHandle, bound: int = DEFAULT_BOUNDS.lattice) -> list:
    """Every subgroup once, joined up from the cyclic ones; sorted by order."""
    require(g.order, bound, "subgroup lattice")
    c = as_cayley(g)
    cyclic = cyclic_subgroups(c)
    found = {h.members: h for h in cyclic}
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for h in frontier:
            for z in cyclic:
                if not z.generators or z.generators[0] in h:
                    continue
                gens = list(h.generators) + [z.generators[0]]
                members = tuple(closure_members(c, gens))
                if members not in found:
                    sub = Subgroup(g, members, tuple(gens))
                    found[members] = sub
                    nxt.append(sub)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, s.members))


def normal_subgroups(g: GroupHandle) -> list:
    """All normal subgroups: joins of normal closures of single elements."""
    c = as_cayley(g)
    atoms = {}
    for x in range(c.order):
        n = normal_closure(c, [x])
        atoms.setdefault(n.members, n)
    found = dict(atoms)
    frontier = list(atoms.values())
    atom_list = list(atoms.values())
    while frontier:
        nxt = []
        for h in frontier:
            for a in atom_list:
                if set(a.members) <= set(h.members):
                    continue
                members = tuple(closure_members(c, list(h.generators) + list(a.generators)))
                if members not in found:
                    sub = Subgroup(g, members, tuple(h.generators) + tuple(a.generators))
                    found[members] = sub
                    nxt.append(sub)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, s.members))


def minimal_normal_subgroups(g: GroupHandle) -> list:
    """Minimal normal subgroups; each is the normal closure of any of its elements."""
    c = as_cayley(g)
    closures = {}
    for x in range(1, c.order):
        n = normal_closure(c, [x])
        closures.setdefault(n.members, n)
    cands = sorted(closures.values(), key=lambda s: s.order)
    out = []
    for n in cands:
        if not any(set(m.members) < set(n.members) for m in cands):
            out.append(n)
    return out


def prime_index_normal_subgroups(g: GroupHandle, p: int) -> list:
    """Normal subgroups of index p: hyperplanes of G / (G' G^p)."""
    c = as_cayley(g)
    t = c.table
    if c.order % p:
        return []
    ar = np.arange(c.order)
    power = np.zeros(c.order, dtype=np.int64)
    for _ in range(p):
        power = t[power, ar]
    seeds = set(int(x) for x in power) | set(derived_subgroup(c).members)
    base = normal_closure(c, sorted(seeds))
    if base.order == c.order:
        return []
    q = quotient(c, base)
    # coordinates of the elementary abelian quotient in a greedy basis
    basis = greedy_generators_of(q, range(q.order))
    coords = {0: (0,) * len(basis)}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, b in enumerate(basis):
                y = int(q.table[x, b])
                if y not in coords:
                    v = list(coords[x])
                    v[i] = (v[i] + 1) % p
                    coords[y] = tuple(v)
                    nxt.append(y)
        frontier = nxt
    r = len(basis)
    coord = np.zeros((q.order, r), dtype=np.int64)
    of_coords = {}
    for y, v in coords.items():
        coord[y] = v
        of_coords[v] = y
    proj = q.projection
    lift = np.full(q.order, -1, dtype=np.int64)
    lift[proj[::-1]] = np.arange(c.order)[::-1]  # least element of each coset
    elt_coords = coord[proj]
    base_gens = list(base.generators)
    out = []
    for f in itertools.product(range(p), repeat=r):
        nz = [i for i, a in enumerate(f) if a]
        if not nz or f[nz[0]] != 1:  # one functional per line
            continue
        j = nz[0]
        ker = np.nonzero((elt_coords @ np.asarray(f)) % p == 0)[0]
        # e_i - f_i e_j (i != j) span the kernel of f in the quotient
        gens = list(base_gens)
        for i in range(r):
            if i == j:
                continue
            v = [0] * r
            v[i] = 1
            v[j] = (-f[i]) % p
            gens.append(int(lift[of_coords[tuple(v)]]))
        out.append(Subgroup(g, tuple(int(x) for x in ker), tuple(x for x in gens if x)))
    return out


def index_two_subgroups(g: GroupHandle) -> list:
    return prime_index_normal_subgroups(g, 2)


# -- automorphisms ----------------------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    group: GroupHandle = field(repr=False)
    generators: tuple
    images: tuple

    @property
    def permutation(self) -> np.ndarray:
        """The map on all elements, extended from the generator images."""
        return _extend_map(self.group, self.generators, self.images)


def _extend_map(g: GroupHandle, gens, images) -> np.ndarray:
    c = as_cayley(g)
    t = c.table
    phi = np.full(c.order, -1, dtype=np.int64)
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, im in zip(gens, images):
                y = int(t[x, s])
                v = int(t[phi[x], im])
                if phi[y] < 0:
                    phi[y] = v
                    nxt.append(y)
                elif phi[y] != v:
                    raise ValueError("generator images do not define a homomorphism")
        frontier = nxt
    if (phi < 0).any():
        raise ValueError("generators do not generate the group")
    return phi


def automorphism_list(g: GroupHandle, bound: int = DEFAULT_BOUNDS.automorphism) -> list:
    require(g.order, bound, "automorphism list")
    c = as_cayley(g)
    gens = tuple(c.generators)
    out = []
    for phi in iter_isomorphisms(c, c, gens=gens):
        if not is_homomorphism(c, c, phi):
            raise AssertionError("backtracking produced a non-homomorphism")
        out.append(Automorphism(g, gens, tuple(int(phi[s]) for s in gens)))
    return out


def automorphism_permutations(g: GroupHandle, bound: int = DEFAULT_BOUNDS.automorphism):
    require(g.order, bound, "automorphism list")
    c = as_cayley(g)
    return list(iter_isomorphisms(c, c))


def inversion_ratio(g: GroupHandle, aut) -> Rational:
    """Fraction of elements sent to their inverses by ``aut``."""
    c = as_cayley(g)
    phi = aut.permutation if isinstance(aut, Automorphism) else np.asarray(aut)
    if len(np.unique(phi)) != c.order or not is_homomorphism(c, c, phi):
        raise ValueError("not an automorphism")
    hits = int((phi == c.inverses).sum())
    return rational_make(hits, c.order)


def identity_automorphism(g: GroupHandle) -> Automorphism:
    gens = tuple(as_cayley(g).generators)
    return Automorphism(g, gens, gens)


def exponent(g: GroupHandle) -> int:
    return order_spectrum(g).exponent
