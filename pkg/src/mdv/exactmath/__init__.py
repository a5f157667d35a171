"""Exact integer/rational linear algebra and linear programming."""

from .linalg import (
    ShapeError,
    clear_denominators,
    content,
    det_exact,
    identity,
    inverse,
    kernel_basis,
    matmul,
    matvec,
    primitive,
    rank,
    rref,
    solve,
    transpose,
)
from .lp import Constraint, LpError, LpProblem, LpResult, check_refutation, lp_maximize, lp_strict_feasible, simplex
from .snf import SnfDecomposition, invariant_factors, snf

__all__ = [
    "Constraint",
    "LpError",
    "LpProblem",
    "LpResult",
    "ShapeError",
    "SnfDecomposition",
    "check_refutation",
    "clear_denominators",
    "content",
    "det_exact",
    "identity",
    "invariant_factors",
    "inverse",
    "kernel_basis",
    "lp_maximize",
    "lp_strict_feasible",
    "matmul",
    "matvec",
    "primitive",
    "rank",
    "rref",
    "simplex",
    "snf",
    "solve",
    "transpose",
]
