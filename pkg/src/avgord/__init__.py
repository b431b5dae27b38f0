"""Average element orders of finite groups: construction, census and verification."""

from .exact import Rational, rational_compare, rational_make
from .families import build
from .descriptor import parse_descriptor
from .invariants import avg_order, order_spectrum, psi

__all__ = ["Rational", "rational_make", "rational_compare", "build", "parse_descriptor",
           "avg_order", "order_spectrum", "psi"]
