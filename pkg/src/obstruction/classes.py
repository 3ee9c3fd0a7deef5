"""
Obstruction classes of a deformation and gauge-triviality sequences.

For psi + xi Maurer-Cartan with xi in F^k (k >= 2), the weight-k part xi_k is
d^psi-closed, and the question is whether a gauge of weight k - 1 pushes xi
into F^{k+1}. The weight-k part of upsilon . xi is xi_k - d^psi upsilon, so
every question here is a linear system:

- theta_k^i: is xi_k = d^psi upsilon modulo levels > i?
  (the class of xi in H_{-1}(h / (L^{i+1} F^k + F^{k+1})))
- theta_k: the same over all levels, i.e. modulo F^{k+1} alone

The intermediate sequence computes theta_k^0, theta_k^1, ... and after each
vanishing class replaces xi_k by xi_k - d^psi upsilon_i. Only the weight-k
part enters later classes, so this linear update is exact and the sequence
runs over any field. The first nonzero index is the intermediate degree
eta_k; it is infinite when every level up to delta_{k+1} - 1 = k + 1 is
killed. Which solution the solver returns does not change eta_k.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import structlog

from src.linalg import Infeasible, Solution
from src.necklace import ConvolutionElement, project
from src.obstruction.gauge import Gauge, compose_gauges, gauge_action
from src.obstruction.twisted import TwistedAlgebra, Window, boundedness
from src.utils.exceptions import ConventionError, InconclusiveWindowError

logger = structlog.get_logger(__name__)

THETA_K = "theta_k"
THETA_K_I = "theta_k_i"


@dataclass
class ObstructionClass:
    """A class theta_k or theta_k^i with its witness or certificate."""

    kind: str
    k: int
    i: Optional[int]
    representative: ConvolutionElement
    """Weight-k part of xi at levels <= i (all levels for theta_k)"""

    window: Window
    witness: Optional[Gauge] = None
    """Gauge upsilon with d^psi upsilon = representative, when the class vanishes"""

    certificate: Optional[Infeasible] = None
    """Left-kernel row, when the class is nonzero"""

    @property
    def vanishes(self) -> bool:
        return self.witness is not None

    @property
    def status(self) -> str:
        return "vanishes" if self.vanishes else "nonzero"

    @property
    def quotient(self) -> str:
        if self.kind == THETA_K:
            return f"F^{self.k + 1}"
        return f"L^{self.i + 1}F^{self.k} + F^{self.k + 1}"

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "kind": self.kind,
            "indices": {"k": self.k, "i": self.i},
            "quotient": self.quotient,
            "status": self.status,
            "window": self.window.to_dict(),
        }
        if self.witness is not None:
            payload["witness"] = self.witness.to_dict()
        if self.certificate is not None:
            payload["certificate"] = self.certificate.to_dict()
        return payload


@dataclass
class IntermediateSequence:
    """The classes theta_k^0, theta_k^1, ... up to the first nonzero one."""

    k: int
    classes: List[ObstructionClass] = field(default_factory=list)
    eta: Union[int, float] = math.inf

    @property
    def trivial(self) -> bool:
        return self.eta == math.inf

    @property
    def gauges(self) -> List[Gauge]:
        return [c.witness for c in self.classes if c.witness is not None]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "eta": "inf" if self.trivial else self.eta,
            "classes": [c.to_dict() for c in self.classes],
        }


# ============================================================================
# SINGLE CLASSES
# ============================================================================


def _weight_part(twisted: TwistedAlgebra, xi: ConvolutionElement, k: int) -> ConvolutionElement:
    """The weight-k part of xi, checked to be a deformation in F^k."""
    if k < 2:
        raise ValueError(f"Obstruction classes need k >= 2, got {k}")
    if xi.algebra != twisted.algebra:
        raise ValueError("Deformation and twisted algebra live over different algebras")
    if xi.is_zero():
        return xi
    low = sorted(w for w in xi.weights() if w < k)
    if low:
        raise ValueError(f"Deformation is not in F^{k}: it has weights {low}")
    part = project(xi, weights=[k])
    if not part.is_zero() and part.conv_degree() != -1:
        raise ValueError(f"Deformation has degree {part.conv_degree()}, expected -1")
    E = twisted.window.input_bound
    if not part.is_zero() and part.window(E).is_zero():
        logger.warning("class_outside_window", k=k, input_bound=E)
        raise InconclusiveWindowError(
            f"The weight-{k} part vanishes in the window E={E}",
            details={"k": k, "input_bound": E},
        )
    return part.window(E)


def _column_order(size: int, seed: Optional[int]) -> Optional[Sequence[int]]:
    if seed is None:
        return None
    return [int(j) for j in np.random.default_rng(seed).permutation(size)]


def _solve_class(
    twisted: TwistedAlgebra,
    part: ConvolutionElement,
    k: int,
    top_level: int,
    seed: Optional[int],
):
    levels = range(top_level + 1)
    source = twisted.basis(conv_degree=0, weight=k - 1, levels=levels)
    target = twisted.basis(conv_degree=-1, weight=k, levels=levels)
    rhs = project(part, levels=levels)
    result = twisted.solve_d(source, target, rhs, column_order=_column_order(len(source), seed))
    if isinstance(result, Solution):
        return rhs, Gauge(source.combine(result.x)), None
    return rhs, None, result


def obstruction_class(
    twisted: TwistedAlgebra,
    xi: ConvolutionElement,
    k: int,
    i: Optional[int] = None,
    seed: Optional[int] = None,
) -> ObstructionClass:
    """
    theta_k^i, or theta_k when i is None.

    Args:
        twisted: Twisted algebra and window
        xi: Deformation in F^k
        k: Weight (>= 2)
        i: Level; the class lives modulo L^{i+1} F^k + F^{k+1}
        seed: Permute the solver's column order (changes the witness only)

    Returns:
        ObstructionClass with a gauge witness or an infeasibility certificate

    Raises:
        ValueError: If xi is not a degree -1 element of F^k
        InconclusiveWindowError: If the levels needed exceed the window
    """
    top = boundedness(k + 1) - 1 if i is None else i
    if top > twisted.window.level_max:
        raise InconclusiveWindowError(
            f"Level {top} is outside the window (level_max={twisted.window.level_max})",
            details={"k": k, "level": top, "level_max": twisted.window.level_max},
        )
    part = _weight_part(twisted, xi, k)
    rhs, witness, certificate = _solve_class(twisted, part, k, top, seed)
    cls = ObstructionClass(
        kind=THETA_K if i is None else THETA_K_I,
        k=k,
        i=i,
        representative=rhs,
        window=twisted.window,
        witness=witness,
        certificate=certificate,
    )
    logger.info("obstruction_class", kind=cls.kind, k=k, i=i, status=cls.status)
    return cls


def theta_vanishes(
    twisted: TwistedAlgebra, xi: ConvolutionElement, k: int, seed: Optional[int] = None
) -> bool:
    """Whether theta_k vanishes, by one solve over all levels."""
    return obstruction_class(twisted, xi, k, seed=seed).vanishes


# ============================================================================
# SEQUENCES
# ============================================================================


def intermediate_sequence(
    twisted: TwistedAlgebra,
    xi: ConvolutionElement,
    k: int,
    seed: Optional[int] = None,
) -> IntermediateSequence:
    """
    The k-th intermediate gauge triviality sequence.

    Args:
        twisted: Twisted algebra and window
        xi: Deformation in F^k
        k: Weight (>= 2)
        seed: Seed for the solver's column orders; eta does not depend on it

    Returns:
        IntermediateSequence with eta_k = first nonzero level, or inf

    Raises:
        InconclusiveWindowError: If every class in the window vanishes but
            levels up to k + 1 do not fit

    Example:
        ```python
        seq = intermediate_sequence(h, xi, k=3)
        seq.eta       # 2
        seq.classes[-1].certificate
        ```
    """
    part = _weight_part(twisted, xi, k)
    top = boundedness(k + 1) - 1
    sequence = IntermediateSequence(k=k)
    rng = np.random.default_rng(seed) if seed is not None else None

    for i in range(top + 1):
        if i > twisted.window.level_max:
            logger.warning("sequence_inconclusive", k=k, level=i, classes=len(sequence.classes))
            raise InconclusiveWindowError(
                f"Classes vanish through level {i - 1} but level {i} is outside the window",
                details={"k": k, "level": i, "level_max": twisted.window.level_max},
            )
        step_seed = int(rng.integers(2**31)) if rng is not None else None
        rhs, witness, certificate = _solve_class(twisted, part, k, i, step_seed)
        cls = ObstructionClass(THETA_K_I, k, i, rhs, twisted.window, witness, certificate)
        sequence.classes.append(cls)
        if witness is None:
            sequence.eta = i
            break
        part = part - twisted.d(witness.element, weights=[k], levels=range(top + 1))

    logger.info("intermediate_sequence", k=k, eta=str(sequence.eta), steps=len(sequence.classes))
    return sequence


@dataclass
class GaugePush:
    """Outcome of pushing a deformation from F^k into F^{k+1}."""

    k: int
    sequence: IntermediateSequence
    gauge: Optional[Gauge] = None
    residual: Optional[ConvolutionElement] = None
    """Part of weight <= k left by the composite gauge"""

    @property
    def succeeded(self) -> bool:
        return self.residual is not None and self.residual.is_zero()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "succeeded": self.succeeded,
            "sequence": self.sequence.to_dict(),
            "gauge": self.gauge.to_dict() if self.gauge is not None else None,
        }


def push_gauge(
    twisted: TwistedAlgebra,
    xi: ConvolutionElement,
    k: int,
    seed: Optional[int] = None,
) -> GaugePush:
    """
    Compose the gauges of the sequence and apply them to xi.

    The composite bch(upsilon_last, bch(..., upsilon_0)) acts on the weight-k
    part by subtracting d^psi of the sum of the upsilon_i, so it sends xi
    into F^{k+1} exactly when eta_k is infinite. Only weights <= k are
    computed.

    Raises:
        FieldRefusedError: Over a prime field
        ConventionError: If the composite gauge leaves a weight-k part
    """
    sequence = intermediate_sequence(twisted, xi, k, seed=seed)
    if not sequence.trivial:
        return GaugePush(k=k, sequence=sequence)

    local = twisted.with_window(replace(twisted.window, weight_max=k))
    gauge = compose_gauges(local, sequence.gauges)
    leftover = project(gauge_action(local, gauge, xi), weights=range(k + 1))
    if not leftover.is_zero():
        logger.error("push_gauge_failed", k=k, terms=len(leftover))
        raise ConventionError(
            f"Composite gauge leaves a weight-{k} part",
            details={"k": k, "bidegrees": [b.to_dict() for b in leftover.bidegrees()]},
        )
    return GaugePush(k=k, sequence=sequence, gauge=gauge, residual=leftover)
