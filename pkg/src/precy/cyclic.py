"""
Search for a cyclically symmetric representative of a cochain class.

Given a closed cochain c, find an isotypic beta and any gamma with

    c = beta + [mu, gamma]

in the input window. The window is a quotient of the cochain complex, so an
infeasible system at window E rules out a representative outright; a
feasible one is only a statement about the window.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Union

import structlog

from src.cochains import HigherCochain, SliceBasis, differential, differential_matrix, isotypic_check
from src.linalg import Infeasible, SparseMatrix, solve
from src.utils.exceptions import InconclusiveWindowError

logger = structlog.get_logger(__name__)


@dataclass
class Witness:
    """c = beta + [mu, gamma] with beta isotypic."""

    beta: HigherCochain
    gamma: HigherCochain
    input_bound: int

    def verify(self, c: HigherCochain) -> bool:
        E = self.input_bound
        rhs = self.beta + differential(self.gamma, E)
        return isotypic_check(self.beta) and (c.window(E) == rhs.window(E))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": "witness",
            "input_bound": self.input_bound,
            "beta": self.beta.to_dict(),
            "gamma": self.gamma.to_dict(),
        }


def cyclic_representative_search(
    c: HigherCochain,
    input_bound: int,
    column_order: Optional[Sequence[int]] = None,
) -> Union[Witness, Infeasible]:
    """
    Solve c - beta = [mu, gamma] with beta isotypic.

    Args:
        c: Closed homogeneous cochain with at least two outputs
        input_bound: Window E of the equations
        column_order: Optional pivot order forwarded to the solver

    Returns:
        Witness(beta, gamma), or Infeasible with the solver's certificate

    Raises:
        InconclusiveWindowError: If c is nonzero but vanishes in the window
        ValueError: If c is zero or not homogeneous

    Example:
        ```python
        result = cyclic_representative_search(g, input_bound=2)
        isinstance(result, Witness)  # True over Q
        ```
    """
    if c.is_zero():
        raise ValueError("Cannot search a representative for the zero cochain")
    algebra = c.algebra
    E = input_bound
    ell, degree, weight = c.ell, c.map_degree(), c.weight()

    target = c.window(E)
    if target.is_zero():
        logger.warning("cyclic_search_inconclusive", input_bound=E, terms=len(c))
        raise InconclusiveWindowError(
            f"Cochain vanishes in the window E={E}",
            details={"input_bound": E},
        )
    if isotypic_check(target):
        logger.info("cyclic_search_isotypic_input", ell=ell, weight=weight)
        return Witness(target, HigherCochain.zero(algebra, ell), E)

    standard = SliceBasis.build(algebra, ell, degree, weight, E)
    symmetric = SliceBasis.build(algebra, ell, degree, weight, E, isotypic=True)
    gammas = SliceBasis.build(algebra, ell, degree + 1, weight - 1, E)

    entries: Dict[Any, Any] = {}
    for j, elem in enumerate(symmetric.elements()):
        for i, v in enumerate(standard.coordinates(elem)):
            if v != algebra.ring.zero:
                entries[(i, j)] = v
    d_gamma = differential_matrix(gammas, standard, E)
    offset = len(symmetric)
    for (i, j), v in d_gamma.entries.items():
        entries[(i, offset + j)] = v
    system = SparseMatrix(len(standard), offset + len(gammas), entries, algebra.ring)
    rhs = standard.coordinates(target)

    result = solve(system, rhs, column_order)
    if isinstance(result, Infeasible):
        logger.info(
            "cyclic_search_infeasible",
            ell=ell,
            weight=weight,
            degree=degree,
            ring=algebra.ring.tag,
            unknowns=system.cols,
        )
        return result

    beta = symmetric.combine(result.x[:offset])
    gamma = gammas.combine(result.x[offset:])
    logger.info(
        "cyclic_search_witness",
        ell=ell,
        weight=weight,
        degree=degree,
        ring=algebra.ring.tag,
        beta_terms=len(beta),
        gamma_terms=len(gamma),
    )
    return Witness(beta, gamma, E)
