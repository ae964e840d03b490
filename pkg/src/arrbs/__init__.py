"""Exact lattice invariants controlling Bernstein-Sato ideals and topological
zeta functions of central hyperplane arrangements."""
from .arrangement import Arrangement, ArrangementError, FactorizationKind, parse
from .lattice import Edge, Lattice, build_lattice

__all__ = [
    "Arrangement",
    "ArrangementError",
    "Edge",
    "FactorizationKind",
    "Lattice",
    "build_lattice",
    "parse",
]
__version__ = "0.1.0"
