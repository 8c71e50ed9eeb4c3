"""Projection inequalities, switching and spectral bounds for equiangular lines."""

__version__ = "0.1.0"

from eqlines.codes import GramMatrix, SphericalCode, gram, verify_equiangular
from eqlines.graph import Graph
from eqlines.linalg import EigenDecomposition, eig_herm, eig_sym, pinv

__all__ = [
    "EigenDecomposition",
    "Graph",
    "GramMatrix",
    "SphericalCode",
    "eig_herm",
    "eig_sym",
    "gram",
    "pinv",
    "verify_equiangular",
]
