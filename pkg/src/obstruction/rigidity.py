"""
Rigidity criterion for a weight-one Maurer-Cartan element.

The associated graded of the level filtration is the Hochschild complex:
gr_L^i g_H is the (i + 1)-output complex under [mu, -]. A deformation is
gauge trivial once, for every level i, the classes of F^2 H_{-1}(gr_L^i)
die in H_{-1}(g / L^{i+1}), i.e. each representative c has a primitive

    d^psi upsilon = c  modulo levels > i

with upsilon of degree 0 and weight one less than c. Level 0 is the
associative part; its input is that the ell = 1 complex has no classes of
degree -1 and weight >= 2 at all.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

import structlog

from src.cochains import HigherCochain, cohomology_slice
from src.linalg import Infeasible, Solution
from src.loop_algebra import LoopAlgebra
from src.necklace import ConvolutionElement
from src.obstruction.twisted import TwistedAlgebra, Window, map_degree_for

logger = structlog.get_logger(__name__)


@dataclass
class ClassImage:
    """One class of gr_L^i and the fate of its image modulo L^{i+1}."""

    level: int
    weight: int
    representative: HigherCochain
    primitive: Optional[ConvolutionElement] = None
    certificate: Optional[Infeasible] = None

    @property
    def vanishes(self) -> bool:
        return self.primitive is not None

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "level": self.level,
            "weight": self.weight,
            "status": "vanishes" if self.vanishes else "nonzero",
            "representative": self.representative.to_dict(),
        }
        if self.primitive is not None:
            payload["witness"] = self.primitive.to_dict()
        if self.certificate is not None:
            payload["certificate"] = self.certificate.to_dict()
        return payload


@dataclass
class SliceCount:
    """Betti number of one examined slice."""

    level: int
    weight: int
    betti: int

    def to_dict(self) -> Dict[str, Any]:
        return {"level": self.level, "weight": self.weight, "betti": self.betti}


@dataclass
class RigidityReport:
    """Outcome of the rigidity criterion over a range of levels."""

    window: Window
    levels: List[int]
    slices: List[SliceCount] = field(default_factory=list)
    images: List[ClassImage] = field(default_factory=list)
    associative: List[SliceCount] = field(default_factory=list)

    @property
    def failures(self) -> List[ClassImage]:
        return [img for img in self.images if not img.vanishes]

    @property
    def associative_classes(self) -> int:
        return sum(s.betti for s in self.associative)

    @property
    def status(self) -> str:
        if self.failures or self.associative_classes:
            return "fail"
        if not self.slices and not self.associative:
            return "inconclusive"
        return "pass"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "window": self.window.to_dict(),
            "levels": self.levels,
            "slices": [s.to_dict() for s in self.slices],
            "associative": [s.to_dict() for s in self.associative],
            "images": [img.to_dict() for img in self.images],
        }


def associative_rigidity_check(algebra: LoopAlgebra, window: Window) -> List[SliceCount]:
    """
    Degree -1 cohomology of the one-output complex in weights 2..weight_max.

    Every Betti number is zero for the polynomial algebra; a nonzero entry
    is an associative deformation the window cannot rule out.
    """
    counts = []
    for w in range(2, window.weight_max + 1):
        report = cohomology_slice(
            algebra,
            1,
            map_degree_for(algebra.n, -1, 0),
            w,
            window.input_bound,
            isotypic=True,
            persistence=window.persistence,
        )
        counts.append(SliceCount(level=0, weight=w, betti=report.betti))
    logger.info(
        "associative_rigidity",
        n=algebra.n,
        weights=window.weight_max,
        classes=sum(c.betti for c in counts),
    )
    return counts


def class_image(
    twisted: TwistedAlgebra, level: int, representative: HigherCochain
) -> ClassImage:
    """Solve d^psi upsilon = c modulo levels > level."""
    weight = representative.weight()
    levels = range(level + 1)
    source = twisted.basis(conv_degree=0, weight=weight - 1, levels=levels)
    target = twisted.basis(conv_degree=-1, weight=weight, levels=levels)
    rhs = ConvolutionElement.from_cochain(representative, strict=False)
    result = twisted.solve_d(source, target, rhs)
    if isinstance(result, Solution):
        return ClassImage(level, weight, representative, primitive=source.combine(result.x))
    return ClassImage(level, weight, representative, certificate=result)


def rigidity_criterion(twisted: TwistedAlgebra, levels: Iterable[int]) -> RigidityReport:
    """
    Check that every class of F^2 H_{-1}(gr_L^i) dies modulo L^{i+1}.

    Args:
        twisted: Twisted algebra of psi, with the window
        levels: Levels i to examine (each >= 1; level 0 is the associative check)

    Returns:
        RigidityReport; status "pass" when every image has a primitive and
        the associative check finds no class, "inconclusive" when the window
        holds no slice at all

    Example:
        ```python
        h = TwistedAlgebra.sphere(LoopAlgebra(n=2, D=10), Window(4, 6, 4, persistence=1))
        rigidity_criterion(h, levels=[2, 3, 4]).status  # "pass"
        ```
    """
    window = twisted.window
    algebra = twisted.algebra
    levels = sorted(set(levels))
    if any(i < 1 for i in levels):
        raise ValueError(f"Levels must be >= 1, got {levels}")
    report = RigidityReport(window=window, levels=levels)
    report.associative = associative_rigidity_check(algebra, window)

    for i in levels:
        ell = i + 1
        for w in range(max(2, ell - 2), window.weight_max + 1):
            cohomology = cohomology_slice(
                algebra,
                ell,
                map_degree_for(algebra.n, -1, i),
                w,
                window.input_bound,
                isotypic=True,
                persistence=window.persistence,
            )
            report.slices.append(SliceCount(level=i, weight=w, betti=cohomology.betti))
            for rep in cohomology.representatives:
                image = class_image(twisted, i, rep)
                report.images.append(image)
                if not image.vanishes:
                    logger.warning("class_image_nonzero", level=i, weight=w)

    logger.info(
        "rigidity_criterion",
        levels=levels,
        classes=len(report.images),
        failures=len(report.failures),
        status=report.status,
    )
    return report
