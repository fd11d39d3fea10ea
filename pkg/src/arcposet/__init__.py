"""Arc diagrams, block matrices, their posets, and simplicial topology.

A library for k-noncrossing arc diagrams on a linear backbone: block
decompositions and block matrices, swap canonicalization to regular
representatives, dual/blow-up/realization constructions, the diagram and
matrix families as finite posets, multitriangulation complexes, and exact
integral simplicial homology.
"""

from .diagram import Diagram, parse, to_text
from .errors import InvalidArgumentError, ResourceLimitError
from .matrix import SymmetricMatrix
from .poset import FinitePoset
from .complexes import SimplicialComplex

__all__ = [
    "Diagram",
    "FinitePoset",
    "InvalidArgumentError",
    "ResourceLimitError",
    "SimplicialComplex",
    "SymmetricMatrix",
    "parse",
    "to_text",
]
