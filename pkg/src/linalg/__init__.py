"""Exact scalars and sparse exact linear algebra."""

from src.linalg.scalars import Ring, Scalar
from src.linalg.sparse import (
    HomologyReport,
    Infeasible,
    Solution,
    SolveResult,
    SparseMatrix,
    complement_in,
    homology,
    kernel_basis,
    rank,
    rref,
    solve,
)

__all__ = [
    "Ring",
    "Scalar",
    "SparseMatrix",
    "Solution",
    "Infeasible",
    "SolveResult",
    "HomologyReport",
    "solve",
    "homology",
    "rank",
    "rref",
    "kernel_basis",
    "complement_in",
]
