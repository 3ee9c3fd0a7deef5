"""
Cohomology of bidegree slices.

The slice (l, d, w) sits in the complex

    (l, d+1, w-1) --d_in--> (l, d, w) --d_out--> (l, d-1, w+1)

truncated to total input exponent <= E. Because the truncation is a quotient
complex, a cocycle of the top window may fail to extend to a genuine cocycle;
``persistence`` keeps only the classes whose representatives lift to
cocycles of the window E + delta.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import structlog

from src.cochains.basis import SliceBasis
from src.cochains.cochain import HigherCochain
from src.cochains.differential import differential
from src.linalg import HomologyReport, SparseMatrix, complement_in, homology, kernel_basis, rank
from src.loop_algebra import LoopAlgebra

logger = structlog.get_logger(__name__)


def differential_matrix(
    source: SliceBasis, target: SliceBasis, input_bound: Optional[int] = None
) -> SparseMatrix:
    """
    Matrix of d from one slice basis to another.

    Args:
        source: Basis of the domain slice
        target: Basis of the codomain slice (weight one higher, degree one lower)
        input_bound: Window for d (defaults to the target's)

    Returns:
        SparseMatrix with len(target) rows and len(source) columns
    """
    E = target.input_bound if input_bound is None else input_bound
    ring = source.algebra.ring
    entries: Dict[Tuple[int, int], Any] = {}
    for j, elem in enumerate(source.elements()):
        image = differential(elem, E)
        for i, v in enumerate(target.coordinates(image, strict=not target.isotypic)):
            if v != ring.zero:
                entries[(i, j)] = v
    return SparseMatrix(len(target), len(source), entries, ring)


@dataclass
class SliceCohomology:
    """Cohomology of one slice together with its bases."""

    basis: SliceBasis
    report: HomologyReport
    persistence_delta: int = 0
    representatives: List[HigherCochain] = field(default_factory=list)

    @property
    def betti(self) -> int:
        return self.report.betti

    def to_dict(self) -> Dict[str, Any]:
        return {
            "slice": self.basis.descriptor(),
            "persistence_delta": self.persistence_delta,
            "betti": self.betti,
            "rank_kernel": self.report.rank_kernel,
            "rank_image_in": self.report.rank_image_in,
            "representatives": [r.to_dict() for r in self.representatives],
        }


def _project(vec: List[Any], big: SliceBasis, small: SliceBasis) -> List[Any]:
    return small.coordinates(big.combine(vec).window(small.input_bound), strict=False)


def cohomology_slice(
    algebra: LoopAlgebra,
    ell: int,
    degree: int,
    weight: int,
    input_bound: int,
    isotypic: bool = False,
    persistence: int = 0,
) -> SliceCohomology:
    """
    Cohomology of CH_(l)(H) under [mu, -] at one bidegree.

    Args:
        algebra: Loop algebra context
        ell: Number of outputs
        degree: Map degree d
        weight: Weight w
        input_bound: Window E on the total input exponent
        isotypic: Restrict to the isotypic subspace
        persistence: If positive, keep only classes represented by cocycles
            that extend to the window E + persistence

    Returns:
        SliceCohomology with the HomologyReport and representative cochains

    Raises:
        NotComplexError: If d o d != 0 on the slice
        UnsafeTruncationError: If D is too small for the window
    """
    middle = SliceBasis.build(algebra, ell, degree, weight, input_bound, isotypic)
    source = SliceBasis.build(algebra, ell, degree + 1, weight - 1, input_bound, isotypic)
    target = SliceBasis.build(algebra, ell, degree - 1, weight + 1, input_bound, isotypic)
    d_in = differential_matrix(source, middle)
    d_out = differential_matrix(middle, target)
    report = homology(d_in, d_out)

    if persistence > 0 and report.betti > 0:
        report = _persistent_report(algebra, middle, d_in, report, persistence)

    representatives = [middle.combine(v) for v in report.representatives]
    logger.info(
        "slice_computed",
        ell=ell,
        degree=degree,
        weight=weight,
        input_bound=input_bound,
        isotypic=isotypic,
        size=len(middle),
        betti=report.betti,
    )
    return SliceCohomology(
        basis=middle,
        report=report,
        persistence_delta=persistence,
        representatives=representatives,
    )


def _persistent_report(
    algebra: LoopAlgebra,
    middle: SliceBasis,
    d_in: SparseMatrix,
    report: HomologyReport,
    delta: int,
) -> HomologyReport:
    """Restrict the cocycles to projections of cocycles of a larger window."""
    ring = algebra.ring
    E = middle.input_bound
    big = SliceBasis.build(
        algebra, middle.ell, middle.degree, middle.weight, E + delta, middle.isotypic
    )
    big_target = SliceBasis.build(
        algebra, middle.ell, middle.degree - 1, middle.weight + 1, E + delta, middle.isotypic
    )
    big_out = differential_matrix(big, big_target)
    lifted = [_project(v, big, middle) for v in kernel_basis(big_out)]
    image = [d_in.column(j) for j in range(d_in.cols)]
    image_rank = rank(d_in)
    reps = complement_in(image, lifted, len(middle), ring) if lifted else []
    logger.debug(
        "persistence_filter",
        before=report.betti,
        after=len(reps),
        delta=delta,
    )
    return HomologyReport(
        rank_kernel=image_rank + len(reps),
        rank_image_in=image_rank,
        representatives=reps,
        ring=ring,
    )
