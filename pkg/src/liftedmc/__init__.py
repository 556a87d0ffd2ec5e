"""Lifted multicuts: enumeration, exact polytope geometry, facet predicates and solvers."""

from .graph import Edge, Graph, GraphError, LiftedPair, edge
from .inequality import LinearInequality, Tag
from .lifting import enumerate_lifted_multicuts, is_lifted_multicut, lift
from .partitions import Decomposition, NotAMulticut, enumerate_multicuts, is_multicut
from .polytope import affine_dimension, face, is_facet, is_valid

__all__ = [
    "Decomposition",
    "Edge",
    "Graph",
    "GraphError",
    "LiftedPair",
    "LinearInequality",
    "NotAMulticut",
    "Tag",
    "affine_dimension",
    "edge",
    "enumerate_lifted_multicuts",
    "enumerate_multicuts",
    "face",
    "is_facet",
    "is_lifted_multicut",
    "is_multicut",
    "is_valid",
    "lift",
]

__version__ = "0.1.0"
