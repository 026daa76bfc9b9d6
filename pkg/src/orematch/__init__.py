"""Exact degree-sum (Ore-type) perfect-matching toolkit for 3-uniform
hypergraphs: extremal family constructions, matching solvers, finite lemma
verification and constructive absorbing machinery."""

__version__ = "0.1.0"

from ._kernels import backend_name
from .hypergraph import Hypergraph3, LinkGraph, build, random_hypergraph

__all__ = [
    "__version__",
    "backend_name",
    "Hypergraph3",
    "LinkGraph",
    "build",
    "random_hypergraph",
]
