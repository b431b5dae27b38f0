"""Size bounds shared by the kernel, the census and the verifier."""

from dataclasses import dataclass


class BoundExceeded(RuntimeError):
    """A computation was asked to go past a configured size bound."""


@dataclass(frozen=True)
class Bounds:
    enumeration: int = 2**20
    iso: int = 1024
    lattice: int = 128
    automorphism: int = 64
    canonical: int = 64
    census: int = 16
    assoc_full: int = 256


DEFAULT_BOUNDS = Bounds()


def require(size: int, bound: int, what: str):
    if size > bound:
        raise BoundExceeded(f"{what}: size {size} exceeds bound {bound}")
