"""Exact Clifford-algebra invariants of symmetric pairs (sl(n), k)."""

from .exact import Scalar, frac, parse_scalar
from .liealg import CATALOG, CatalogError, LieAlgebra, SymmetricPair, build_pair, pair_from_id
from .multivec import Multivector, QuadraticSpace, SpaceMismatch, UsageError

__all__ = ["Scalar", "frac", "parse_scalar", "CATALOG", "CatalogError", "LieAlgebra",
           "SymmetricPair", "build_pair", "pair_from_id", "Multivector", "QuadraticSpace",
           "SpaceMismatch", "UsageError"]

__version__ = "0.1.0"
