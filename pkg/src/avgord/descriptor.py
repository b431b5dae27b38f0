"""Symbolic group names and their parser.

Grammar (whitespace ignored)::

    expr  = atom { "x" atom }
    atom  = NAME "(" args ")" | "C" INT | "D" INT
    args  = arg { "," arg }          (integers or nested exprs)

``D<n>`` is the dihedral group of order n.  A product made only of cyclic
factors is normalised to its invariant factors, so ``C4xC4`` parses to
``Ab(4,4)`` and ``C2xC3`` to ``C6``.  ``str(parse(s))`` is the canonical
spelling and parses back to the same tree.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


MAX_R = 5


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class Cyc:
    n: int

    def __str__(self):
        return f"C{self.n}"


@dataclass(frozen=True)
class EA:
    p: int
    k: int

    def __str__(self):
        return f"EA({self.p},{self.k})"


@dataclass(frozen=True)
class Ab:
    factors: tuple

    def __str__(self):
        return "Ab(" + ",".join(map(str, self.factors)) + ")"


@dataclass(frozen=True)
class Dih:
    m: int  # D_{2m}, order 2m

    def __str__(self):
        return f"D{2 * self.m}"


@dataclass(frozen=True)
class GD:
    inner: "Descriptor"

    def __str__(self):
        return f"GD({self.inner})"


@dataclass(frozen=True)
class H:
    r: int

    def __str__(self):
        return f"H({self.r})"


@dataclass(frozen=True)
class Sgrp:
    r: int

    def __str__(self):
        return f"Sgrp({self.r})"


@dataclass(frozen=True)
class Frob2:
    k: int

    def __str__(self):
        return f"Frob2({self.k})"


@dataclass(frozen=True)
class Frob3:
    k: int

    def __str__(self):
        return f"Frob3({self.k})"


@dataclass(frozen=True)
class Sym:
    n: int

    def __str__(self):
        return f"Sym({self.n})"


@dataclass(frozen=True)
class Alt:
    n: int

    def __str__(self):
        return f"Alt({self.n})"


@dataclass(frozen=True)
class Prod:
    left: "Descriptor"
    right: "Descriptor"

    def __str__(self):
        return f"{self.left} x {self.right}"


@dataclass(frozen=True)
class CProd:
    left: "Descriptor"
    right: "Descriptor"

    def __str__(self):
        return f"CProd({self.left},{self.right})"


Descriptor = Union[Cyc, EA, Ab, Dih, GD, H, Sgrp, Frob2, Frob3, Sym, Alt, Prod, CProd]


def invariant_factors(orders) -> tuple:
    """Invariant factors d1 | d2 | ... of a product of cyclic groups."""
    # split into prime powers, then recombine largest-with-largest
    powers: dict = {}
    for n in orders:
        m = n
        p = 2
        while m > 1:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                powers.setdefault(p, []).append(p**e)
            p += 1
    width = max((len(v) for v in powers.values()), default=0)
    factors = [1] * width
    for p, lst in powers.items():
        lst.sort(reverse=True)
        for i, q in enumerate(lst):
            factors[width - 1 - i] *= q
    return tuple(factors)


def abelian(orders) -> Descriptor:
    f = invariant_factors(orders)
    if not f:
        return Cyc(1)
    if len(f) == 1:
        return Cyc(f[0])
    return Ab(f)


def _cyclic_orders(d) -> tuple | None:
    if isinstance(d, Cyc):
        return (d.n,)
    if isinstance(d, Ab):
        return d.factors
    if isinstance(d, Prod):
        a, b = _cyclic_orders(d.left), _cyclic_orders(d.right)
        if a is not None and b is not None:
            return a + b
    return None


def product(left: Descriptor, right: Descriptor) -> Descriptor:
    p = Prod(left, right)
    cyc = _cyclic_orders(p)
    return abelian(cyc) if cyc is not None else p


_INT_FAMILIES = {
    # name -> (arity, constructor)
    "Cyc": (1, Cyc), "EA": (2, EA), "Dih": (1, Dih), "H": (1, H), "Sgrp": (1, Sgrp),
    "Frob2": (1, Frob2), "Frob3": (1, Frob3), "Sym": (1, Sym), "Alt": (1, Alt),
}


_NAME_CHARS = re.compile(r"[A-Za-wyz0-9]*")  # 'x' is the product sign


def _lex(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch.isdigit():
            end = pos
            while end < len(text) and text[end].isdigit():
                end += 1
            toks.append(("int", text[pos:end], pos))
            pos = end
        elif ch.isupper():
            end = _NAME_CHARS.match(text, pos + 1).end()
            word = text[pos:end]
            if word[0] in "CD" and word[1:].isdigit():
                toks.append(("name", word[0], pos))
                toks.append(("int", word[1:], pos + 1))
            else:
                toks.append(("name", word, pos))
            pos = end
        elif ch in "(),x":
            toks.append(("sym", ch, pos))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", None, len(self.text))

    def take(self, kind=None, val=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (val and tok[1] != val):
            want = val or kind
            raise ParseError(f"expected {want!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Descriptor:
        d = self.atom()
        while self.peek()[:2] == ("sym", "x"):
            self.take()
            d = product(d, self.atom())
        return d

    def atom(self) -> Descriptor:
        kind, val, pos = self.peek()
        if kind != "name":
            raise ParseError(f"expected a group name, found {val!r}", pos)
        self.take()
        if val in ("C", "D") and self.peek()[0] == "int":
            n = int(self.take("int")[1])
            if val == "C":
                if n < 1:
                    raise ParseError("cyclic order must be positive", pos)
                return Cyc(n)
            if n < 4 or n % 2:
                raise ParseError("D<n> needs an even order n >= 4", pos)
            return Dih(n // 2)
        self.take("sym", "(")
        args = self.args()
        self.take("sym", ")")
        return self.make(val, args, pos)

    def args(self) -> list:
        out = []
        while True:
            kind, val, pos = self.peek()
            if kind == "int":
                self.take()
                out.append((int(val), pos))
            else:
                out.append((self.expr(), pos))
            if self.peek()[:2] == ("sym", ","):
                self.take()
                continue
            return out

    def make(self, name: str, args: list, pos: int) -> Descriptor:
        def ints(k):
            if len(args) != k:
                raise ParseError(f"{name} takes {k} argument(s), got {len(args)}", pos)
            vals = []
            for a, apos in args:
                if not isinstance(a, int):
                    raise ParseError(f"{name} takes integer arguments", apos)
                vals.append(a)
            return vals

        def descs(k):
            if len(args) != k:
                raise ParseError(f"{name} takes {k} argument(s), got {len(args)}", pos)
            for a, apos in args:
                if isinstance(a, int):
                    raise ParseError(f"{name} takes group arguments", apos)
            return [a for a, _ in args]

        if name in _INT_FAMILIES:
            arity, ctor = _INT_FAMILIES[name]
            vals = ints(arity)
            if name == "EA":
                p, k = vals
                if not is_prime(p):
                    raise ParseError(f"EA needs a prime, got {p}", args[0][1])
                if k < 0:
                    raise ParseError("EA rank must be non-negative", args[1][1])
            elif name in ("H", "Sgrp"):
                if not 1 <= vals[0] <= MAX_R:
                    raise ParseError(f"{name} needs 1 <= r <= {MAX_R}", args[0][1])
            elif name in ("Frob2", "Frob3"):
                if vals[0] < 1:
                    raise ParseError(f"{name} needs k >= 1", args[0][1])
            elif name == "Dih":
                if vals[0] < 2:
                    raise ParseError("Dih needs m >= 2", args[0][1])
            elif vals[0] < 1:
                raise ParseError(f"{name} needs a positive argument", args[0][1])
            return ctor(*vals)
        if name == "Ab":
            if not args:
                raise ParseError("Ab needs at least one factor", pos)
            vals = ints(len(args))
            if any(v < 1 for v in vals):
                raise ParseError("Ab factors must be positive", pos)
            return abelian(vals)
        if name == "GD":
            (inner,) = descs(1)
            return GD(inner)
        if name == "Prod":
            a, b = descs(2)
            return product(a, b)
        if name == "CProd":
            a, b = descs(2)
            return CProd(a, b)
        raise ParseError(f"unknown family {name!r}", pos)


def parse_descriptor(text: str) -> Descriptor:
    p = _Parser(text)
    d = p.expr()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {val!r}", pos)
    return d
