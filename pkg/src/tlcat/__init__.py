"""Exact computations in the Temperley-Lieb category: diagrams, cell modules,
hom spaces, the TL tower and its Grothendieck groups."""

from .coeffring import GENERIC, make_field
from .diagrams import PlanarDiagram, compose, enumerate_diagrams, mul
from .errors import InvariantViolation

__version__ = "0.1.0"

__all__ = [
    "GENERIC",
    "InvariantViolation",
    "PlanarDiagram",
    "compose",
    "enumerate_diagrams",
    "make_field",
    "mul",
]
