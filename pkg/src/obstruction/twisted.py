"""
The twisted convolution algebra h = (g_H, [-,-], d^psi = [psi, -]).

Every computation here is linear algebra on a finite window: a Window bounds
the total input exponent, the weight and the level of the terms involved; a
BlockBasis stacks the isotypic slice bases of one convolution degree and
weight over a range of levels; TwistedAlgebra turns d^psi between two blocks
into a SparseMatrix.

Design Principles:
- d^psi is computed through the necklace bracket, so its signs are the
  bracket's signs
- Unknowns are isotypic and equations read coefficients on orbit
  representatives
- alpha must be known for every output an unknown can feed into it
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import structlog

from src.cochains import HigherCochain, SliceBasis, isotypic_check
from src.config.settings import WindowSettings
from src.linalg import Ring, SolveResult, SparseMatrix, solve
from src.loop_algebra import LoopAlgebra
from src.necklace import ConvolutionElement, necklace_bracket, project
from src.precy import PreCYStructure
from src.utils.exceptions import UnsafeTruncationError

logger = structlog.get_logger(__name__)


def map_degree_for(n: int, conv_degree: int, level: int) -> int:
    """Map degree of an (level + 1)-output cochain of the given convolution degree."""
    return conv_degree - 1 - (n - 2) * level


def boundedness(k: int) -> int:
    """delta_k = k + 1; the weight-k part of g_H sits in levels below delta_{k+1}."""
    return k + 1


@dataclass(frozen=True)
class Window:
    """
    Finite window of a computation.

    Attributes:
        input_bound: Largest total input exponent E of a term
        weight_max: Largest weight considered
        level_max: Largest level (outputs - 1) considered
        input_margin: Extra input budget for alpha beyond E
        persistence: Look-ahead used to drop top-window cocycles
    """

    input_bound: int
    weight_max: int
    level_max: int
    input_margin: int = 0
    persistence: int = 0

    def __post_init__(self) -> None:
        if self.input_bound < 1:
            raise ValueError(f"input_bound must be >= 1, got {self.input_bound}")
        if self.weight_max < 0 or self.level_max < 0:
            raise ValueError(
                f"Window bounds must be >= 0, got weight {self.weight_max}, level {self.level_max}"
            )
        if self.input_margin < 0 or self.persistence < 0:
            raise ValueError("input_margin and persistence must be >= 0")

    @classmethod
    def from_settings(cls, settings: WindowSettings) -> "Window":
        return cls(
            input_bound=settings.input_bound,
            weight_max=settings.weight_max,
            level_max=settings.outputs_max,
            input_margin=settings.input_margin,
            persistence=settings.persistence_delta,
        )

    def alpha_bound(self, n: int) -> int:
        """
        Input bound alpha must be derived to.

        A degree-zero unknown with one output and E inputs has an output of
        exponent up to E + (E - 1) / (n - 1); alpha receives that output.
        """
        return self.input_bound + max(self.input_margin, (self.input_bound - 1) // (n - 1))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "input_bound": self.input_bound,
            "weight_max": self.weight_max,
            "level_max": self.level_max,
            "input_margin": self.input_margin,
            "persistence": self.persistence,
        }


# ============================================================================
# BLOCK BASES
# ============================================================================


@dataclass
class BlockBasis:
    """
    Isotypic basis of the weight-w, degree-c part of g_H over a set of levels.

    Columns are ordered level by level, each level in its SliceBasis order.
    """

    algebra: LoopAlgebra
    conv_degree: int
    weight: int
    blocks: List[Tuple[int, SliceBasis]] = field(default_factory=list)

    @classmethod
    def build(
        cls,
        algebra: LoopAlgebra,
        conv_degree: int,
        weight: int,
        levels: Iterable[int],
        input_bound: int,
    ) -> "BlockBasis":
        block = cls(algebra, conv_degree, weight)
        if weight < 1:
            return block
        for level in sorted(set(levels)):
            ell = level + 1
            if weight < ell - 2:
                continue
            basis = SliceBasis.build(
                algebra,
                ell,
                map_degree_for(algebra.n, conv_degree, level),
                weight,
                input_bound,
                isotypic=True,
            )
            if len(basis):
                block.blocks.append((level, basis))
        return block

    def __len__(self) -> int:
        return sum(len(b) for _, b in self.blocks)

    @property
    def levels(self) -> List[int]:
        return [level for level, _ in self.blocks]

    def coordinates(self, x: ConvolutionElement) -> List[Any]:
        vec: List[Any] = []
        for level, basis in self.blocks:
            vec.extend(basis.coordinates(x.part(level + 1), strict=False))
        return vec

    def combine(self, vec: Sequence[Any]) -> ConvolutionElement:
        if len(vec) != len(self):
            raise ValueError(f"Expected {len(self)} coordinates, got {len(vec)}")
        parts: List[HigherCochain] = []
        offset = 0
        for _, basis in self.blocks:
            parts.append(basis.combine(vec[offset : offset + len(basis)]))
            offset += len(basis)
        return ConvolutionElement(self.algebra, parts, strict=False)

    def elements(self) -> Iterator[ConvolutionElement]:
        for _, basis in self.blocks:
            for elem in basis.elements():
                yield ConvolutionElement.from_cochain(elem, strict=False)

    def max_output(self) -> int:
        return max(
            (max(key[0]) for _, basis in self.blocks for key in basis.keys),
            default=0,
        )

    def descriptor(self) -> Dict[str, Any]:
        return {
            "conv_degree": self.conv_degree,
            "weight": self.weight,
            "levels": self.levels,
            "size": len(self),
        }


def stack_matrices(
    blocks: Sequence[Sequence[Optional[SparseMatrix]]],
    rows: Sequence[int],
    cols: Sequence[int],
    ring: Ring,
) -> SparseMatrix:
    """Assemble a block matrix; None blocks are zero."""
    entries: Dict[Tuple[int, int], Any] = {}
    row_offset = 0
    for r, row in enumerate(blocks):
        col_offset = 0
        for c, M in enumerate(row):
            if M is not None:
                for (i, j), v in M.entries.items():
                    entries[(row_offset + i, col_offset + j)] = v
            col_offset += cols[c]
        row_offset += rows[r]
    return SparseMatrix(sum(rows), sum(cols), entries, ring)


# ============================================================================
# TWISTED ALGEBRA
# ============================================================================


class TwistedAlgebra:
    """
    g_H twisted by a weight-one Maurer-Cartan element psi.

    Example:
        ```python
        H = LoopAlgebra(n=2, D=10)
        h = TwistedAlgebra.sphere(H, Window(input_bound=3, weight_max=4, level_max=3))
        source = h.basis(conv_degree=0, weight=2, levels=range(3))
        target = h.basis(conv_degree=-1, weight=3, levels=range(3))
        M = h.d_matrix(source, target)
        ```
    """

    def __init__(self, structure: PreCYStructure, window: Window):
        self.structure = structure
        self.window = window
        self.algebra = structure.algebra
        self.psi = structure.psi
        self._matrices: Dict[Tuple, SparseMatrix] = {}

    @classmethod
    def sphere(cls, algebra: LoopAlgebra, window: Window) -> "TwistedAlgebra":
        bound = window.alpha_bound(algebra.n)
        logger.info("twisted_sphere", n=algebra.n, ring=algebra.ring.tag, alpha_bound=bound)
        return cls(PreCYStructure.sphere(algebra, bound), window)

    @classmethod
    def associative(cls, algebra: LoopAlgebra, window: Window) -> "TwistedAlgebra":
        """psi = mu; every class of the Hochschild complex survives."""
        return cls(PreCYStructure.associative(algebra), window)

    @property
    def ring(self) -> Ring:
        return self.algebra.ring

    def with_window(self, window: Window) -> "TwistedAlgebra":
        return TwistedAlgebra(self.structure, window)

    # ------------------------------------------------------------------
    # Bracket and differential
    # ------------------------------------------------------------------

    def require_alpha(self, max_output: int, input_bound: Optional[int] = None) -> None:
        """
        alpha must hold every term an element can reach.

        Raises:
            UnsafeTruncationError: If alpha was derived in a smaller window
        """
        bound = self.structure.input_bound
        if bound is None:
            return
        needed = max(max_output, input_bound or 0)
        if needed > bound:
            logger.error("alpha_window_too_small", needed=needed, alpha_bound=bound)
            raise UnsafeTruncationError(
                f"alpha was derived up to input t^{bound}, but t^{needed} is needed",
                details={"alpha_bound": bound, "needed": needed},
            )

    def d(
        self,
        x: ConvolutionElement,
        weights: Optional[Iterable[int]] = None,
        levels: Optional[Iterable[int]] = None,
    ) -> ConvolutionElement:
        """d^psi x = [psi, x] in the input window."""
        E = self.window.input_bound
        self.require_alpha(x.max_output(), E)
        return necklace_bracket(self.psi, x, input_bound=E, weights=weights, levels=levels)

    def bracket(
        self,
        x: ConvolutionElement,
        y: ConvolutionElement,
        input_bound: Optional[int] = None,
        weights: Optional[Iterable[int]] = None,
        levels: Optional[Iterable[int]] = None,
    ) -> ConvolutionElement:
        return necklace_bracket(x, y, input_bound=input_bound, weights=weights, levels=levels)

    def square_zero(self, x: ConvolutionElement) -> bool:
        """d^psi d^psi x = 0 in the window."""
        W = self.window.weight_max
        once = project(self.d(x), weights=range(W + 1))
        return self.d(once, weights=range(W + 1)).is_zero()

    # ------------------------------------------------------------------
    # Bases and matrices
    # ------------------------------------------------------------------

    def basis(self, conv_degree: int, weight: int, levels: Iterable[int]) -> BlockBasis:
        return BlockBasis.build(
            self.algebra, conv_degree, weight, levels, self.window.input_bound
        )

    def d_matrix(self, source: BlockBasis, target: BlockBasis) -> SparseMatrix:
        """
        Matrix of d^psi from one block to another.

        Args:
            source: Block of the unknowns
            target: Block one weight higher and one degree lower

        Returns:
            SparseMatrix with len(target) rows and len(source) columns
        """
        cache_key = (
            source.conv_degree,
            source.weight,
            tuple(source.levels),
            target.conv_degree,
            target.weight,
            tuple(target.levels),
        )
        cached = self._matrices.get(cache_key)
        if cached is not None:
            return cached

        ring = self.ring
        self.require_alpha(source.max_output(), self.window.input_bound)
        entries: Dict[Tuple[int, int], Any] = {}
        for j, elem in enumerate(source.elements()):
            image = self.d(elem, weights=[target.weight], levels=target.levels)
            for i, v in enumerate(target.coordinates(image)):
                if v != ring.zero:
                    entries[(i, j)] = v
        M = SparseMatrix(len(target), len(source), entries, ring)
        logger.debug(
            "twisted_matrix_built",
            source=source.descriptor(),
            target=target.descriptor(),
            nnz=M.nnz,
        )
        self._matrices[cache_key] = M
        return M

    def solve_d(
        self,
        source: BlockBasis,
        target: BlockBasis,
        rhs: ConvolutionElement,
        column_order: Optional[Sequence[int]] = None,
    ) -> SolveResult:
        """Solve d^psi u = rhs between two blocks."""
        for ell, part in rhs.parts.items():
            if not isotypic_check(part):
                raise ValueError(f"Right-hand side is not isotypic on {ell} outputs")
        M = self.d_matrix(source, target)
        return solve(M, target.coordinates(rhs), column_order=column_order)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra.to_dict(),
            "alpha_bound": self.structure.input_bound,
            "window": self.window.to_dict(),
        }
