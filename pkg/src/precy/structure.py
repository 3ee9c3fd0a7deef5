"""
Pre-Calabi-Yau structures on the loop algebra.

The sphere structure is psi = mu + alpha, where mu is the product and alpha
is a two-output cochain with one input:

    alpha(t^k) = sum_{i+j=k-1} +- t^i (x) t^j

plus its rotation with the input in sector 2. alpha is not transcribed from
a formula. It is the unique solution of a linear system on the isotypic
two-output slice of weight 1 and map degree -n:

- [mu, alpha] = 0 in the input window
- the coefficient of alpha(t) on 1 (x) 1 (input in sector 1) is 1

and is then checked for integrality and for the vanishing of the
three-output part of alpha * alpha.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import structlog

from src.cochains import HigherCochain, SliceBasis, differential_matrix, product_cochain
from src.cochains.rotation import orbit_representative, orbit_sum_terms
from src.linalg import Infeasible, Ring, SparseMatrix, rank, solve
from src.loop_algebra import LoopAlgebra
from src.necklace import ConvolutionElement, mc_defect, necklace_product
from src.utils.exceptions import ConventionError

logger = structlog.get_logger(__name__)

ALPHA_ANCHOR = ((0, 0), ((1,), ()))
"""alpha(t) = 1 (x) 1 with the input in sector 1"""


@dataclass
class AlphaDerivation:
    """Result of the constraint solve for alpha."""

    alpha: HigherCochain
    """The derived two-output part"""

    input_bound: int
    """Window the constraints were imposed in"""

    free_dimension: int
    """Dimension of the solution space left after normalization"""

    unknowns: int
    """Size of the isotypic slice basis"""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha.to_dict(),
            "free_dimension": self.free_dimension,
            "input_bound": self.input_bound,
            "unknowns": self.unknowns,
        }


def derive_alpha(algebra: LoopAlgebra, input_bound: int) -> AlphaDerivation:
    """
    Solve for the two-output part of the sphere structure.

    Args:
        algebra: Loop algebra context (any coefficient field)
        input_bound: Largest total input exponent of alpha

    Returns:
        AlphaDerivation with the integral solution

    Raises:
        ConventionError: If the system is infeasible, the solution is not
            integral, or alpha * alpha has a three-output part
    """
    n = algebra.n
    ring = algebra.ring
    source = SliceBasis.build(algebra, 2, -n, 1, input_bound, isotypic=True)
    target = SliceBasis.build(algebra, 2, -n - 1, 2, input_bound, isotypic=True)
    closed = differential_matrix(source, target)

    rep = orbit_representative(ALPHA_ANCHOR, n)
    orbit = orbit_sum_terms(ALPHA_ANCHOR, n, ring.characteristic)
    anchor = source.index(rep)
    if orbit is None or anchor is None:
        raise ConventionError(
            "alpha(t) = 1 (x) 1 has no isotypic extension",
            details={"n": n, "input_bound": input_bound},
        )

    entries = dict(closed.entries)
    entries[(closed.rows, anchor)] = ring.one
    system = SparseMatrix(closed.rows + 1, closed.cols, entries, ring)
    rhs = [ring.zero] * closed.rows + [ring.sign(orbit[ALPHA_ANCHOR])]

    result = solve(system, rhs)
    if isinstance(result, Infeasible):
        logger.error("alpha_infeasible", n=n, input_bound=input_bound, ring=ring.tag)
        raise ConventionError(
            "No closed isotypic alpha with alpha(t) = 1 (x) 1",
            details={"n": n, "input_bound": input_bound, "certificate": result.to_dict()},
        )

    alpha = source.combine(result.x)
    free = len(source) - rank(system)
    _check_alpha(alpha, input_bound)
    logger.info(
        "alpha_derived",
        n=n,
        ring=ring.tag,
        input_bound=input_bound,
        terms=len(alpha),
        free_dimension=free,
    )
    return AlphaDerivation(
        alpha=alpha,
        input_bound=input_bound,
        free_dimension=free,
        unknowns=len(source),
    )


def _check_alpha(alpha: HigherCochain, input_bound: int) -> None:
    ring = alpha.ring
    bad = [k for k, v in alpha.terms.items() if not ring.is_integral(v)]
    if bad:
        raise ConventionError(
            "Derived alpha has denominators",
            details={"terms": [str(k) for k in bad[:5]]},
        )
    x = ConvolutionElement.from_cochain(alpha)
    square = necklace_product(x, x, input_bound, levels=[2])
    if not square.is_zero():
        logger.error("alpha_square_nonzero", terms=len(square))
        raise ConventionError(
            "The three-output part of alpha * alpha does not vanish",
            details={"terms": len(square)},
        )


# ============================================================================
# STRUCTURES
# ============================================================================


@dataclass
class PreCYStructure:
    """
    A weight-one Maurer-Cartan element psi = mu + alpha + higher parts.

    Example:
        ```python
        H = LoopAlgebra(n=2, D=10)
        psi = PreCYStructure.sphere(H, input_bound=4)
        psi.check(input_bound=4)  # True
        ```
    """

    algebra: LoopAlgebra
    mu: HigherCochain
    alpha: HigherCochain
    higher: List[HigherCochain] = field(default_factory=list)
    input_bound: Optional[int] = None
    """Window alpha was derived in (None for exact structures)"""

    @classmethod
    def sphere(cls, algebra: LoopAlgebra, input_bound: int) -> "PreCYStructure":
        derivation = derive_alpha(algebra, input_bound)
        return cls(algebra, product_cochain(algebra), derivation.alpha, input_bound=input_bound)

    @classmethod
    def associative(cls, algebra: LoopAlgebra) -> "PreCYStructure":
        """psi = mu with vanishing two-output part."""
        return cls(algebra, product_cochain(algebra), HigherCochain.zero(algebra, 2))

    def with_ring(self, ring: Ring) -> "PreCYStructure":
        algebra = self.algebra.with_ring(ring)
        if self.input_bound is None:
            return PreCYStructure.associative(algebra)
        return PreCYStructure.sphere(algebra, self.input_bound)

    @property
    def psi(self) -> ConvolutionElement:
        return ConvolutionElement(self.algebra, [self.mu, self.alpha, *self.higher])

    def check(self, input_bound: int) -> bool:
        """
        Weight one, no copairing, and psi * psi = 0 in the window.

        Raises:
            ConventionError: If psi is not a Maurer-Cartan element
        """
        if any(not sum(len(s) for s in k[1]) for k in self.alpha.terms):
            raise ConventionError("Structure has a copairing component")
        psi = self.psi
        if psi.weights() - {1}:
            raise ConventionError(
                f"Structure is not of homogeneous weight one: {sorted(psi.weights())}"
            )
        defect = mc_defect(psi, input_bound)
        if not defect.is_zero():
            logger.error(
                "structure_not_mc",
                bidegrees=[(b.weight, b.level) for b in defect.bidegrees()],
            )
            raise ConventionError(
                "psi * psi does not vanish",
                details={"bidegrees": [b.to_dict() for b in defect.bidegrees()]},
            )
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra.to_dict(),
            "alpha": self.alpha.to_dict(),
            "higher": [h.to_dict() for h in self.higher],
            "input_bound": self.input_bound,
        }
