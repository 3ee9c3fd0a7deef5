"""
Gauges and their action on Maurer-Cartan elements.

A gauge is a degree-zero element lambda of positive weight. It acts on
psi + xi through the exponential of the adjoint action:

    lambda . xi = exp(ad_lambda)(psi + xi) - psi

which expands to xi + [lambda, psi] + [lambda, xi] + 1/2 [lambda, [lambda, psi]] + ...
Weights grow under ad_lambda, so the series is finite in a weight window.
The coefficients 1/j! restrict everything here to rational coefficients.

A bracket with lambda can lower the total input exponent of the other factor
by up to lowering(lambda), the largest excess of an output of lambda over its
total input. The series is therefore computed in the window
E + depth * lowering(lambda) and cut back to E at the end.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Dict, Iterator, List, Tuple

import structlog

from src.cochains.koszul import input_total
from src.linalg import Ring
from src.loop_algebra import LoopAlgebra
from src.necklace import ConvolutionElement, project
from src.obstruction.twisted import TwistedAlgebra
from src.utils.exceptions import FieldRefusedError

logger = structlog.get_logger(__name__)


def lowering(x: ConvolutionElement) -> int:
    """How far x, used as the inner factor of a product, can lower an input total."""
    excess = 0
    for part in x.parts.values():
        for key in part.terms:
            excess = max(excess, max(key[0]) - input_total(key))
    return excess


def _require_rational(ring: Ring, what: str) -> None:
    if not ring.is_rational:
        logger.error("gauge_refused", operation=what, ring=ring.tag)
        raise FieldRefusedError(
            f"{what} needs rational coefficients, got {ring.tag}",
            details={"operation": what, "ring": ring.tag},
        )


@dataclass
class Gauge:
    """A degree-zero element of g_H with components of weight >= 1."""

    element: ConvolutionElement

    def __post_init__(self) -> None:
        if self.element.is_zero():
            return
        if self.element.conv_degree() != 0:
            raise ValueError(
                f"A gauge has degree 0, got degree {self.element.conv_degree()}"
            )
        if min(self.element.weights()) < 1:
            raise ValueError("A gauge has no weight-0 component")

    @classmethod
    def zero(cls, algebra: LoopAlgebra) -> "Gauge":
        return cls(ConvolutionElement.zero(algebra))

    @property
    def algebra(self) -> LoopAlgebra:
        return self.element.algebra

    def is_zero(self) -> bool:
        return self.element.is_zero()

    def min_weight(self) -> int:
        return min(self.element.weights(), default=0)

    def __add__(self, other: "Gauge") -> "Gauge":
        return Gauge(self.element + other.element)

    def __neg__(self) -> "Gauge":
        return Gauge(-self.element)

    def scale(self, c: Any) -> "Gauge":
        return Gauge(self.element.scale(c))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Gauge) and other.element == self.element

    def to_dict(self) -> Dict[str, Any]:
        return {"gauge": self.element.to_dict()}


# ============================================================================
# GAUGE ACTION
# ============================================================================


def gauge_action(
    twisted: TwistedAlgebra, gauge: Gauge, xi: ConvolutionElement
) -> ConvolutionElement:
    """
    The gauge-transformed deformation lambda . xi, exact in the window.

    Args:
        twisted: Twisted algebra holding psi and the window
        gauge: The gauge lambda
        xi: Deformation, psi + xi Maurer-Cartan

    Returns:
        exp(ad_lambda)(psi + xi) - psi, restricted to total input exponent
        <= E, weights <= weight_max and levels <= level_max

    Raises:
        FieldRefusedError: Over a prime field
        UnsafeTruncationError: If alpha or D are too small for the working window

    Example:
        ```python
        h = TwistedAlgebra.associative(H, window)
        gauge_action(h, Gauge.zero(H), xi) == xi  # for xi inside the window
        ```
    """
    ring = twisted.ring
    _require_rational(ring, "Gauge action")
    window = twisted.window
    E, W, L = window.input_bound, window.weight_max, window.level_max
    weights, levels = range(W + 1), range(L + 1)
    result = project(xi.window(E), weights, levels)
    if gauge.is_zero():
        return result

    lam = gauge.element
    depth = max(0, W - 1) // gauge.min_weight()
    E_work = E + depth * lowering(lam)
    twisted.require_alpha(lam.max_output(), E_work)

    current = twisted.bracket(lam, twisted.psi, E_work, weights, levels) + twisted.bracket(
        lam, xi, E_work, weights, levels
    )
    j = 1
    while not current.is_zero():
        result = result + project(current.window(E), weights, levels).scale(
            ring.coerce(Fraction(1, factorial(j)))
        )
        j += 1
        current = twisted.bracket(lam, current, E_work, weights, levels)

    logger.debug("gauge_applied", terms=len(result), depth=j - 1, working_bound=E_work)
    return result


# ============================================================================
# BAKER-CAMPBELL-HAUSDORFF
# ============================================================================


def _pair_sequences(order_max: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Sequences ((r_1, s_1), ..., (r_k, s_k)) with r_i + s_i >= 1 and total <= order_max."""

    def extend(prefix: Tuple[Tuple[int, int], ...], budget: int) -> Iterator:
        if prefix:
            yield prefix
        for r in range(budget + 1):
            for s in range(budget - r + 1):
                if r + s:
                    yield from extend(prefix + ((r, s),), budget - r - s)

    yield from extend((), order_max)


def dynkin_coefficients(order_max: int) -> Dict[str, Fraction]:
    """
    Coefficients of the right-nested brackets in Dynkin's formula.

    Returns:
        {word: coefficient} where a word over "x", "y" stands for the
        right-nested bracket [w_1, [w_2, ... [w_{k-1}, w_k]]]; words whose
        innermost bracket repeats a letter are dropped
    """
    coeffs: Dict[str, Fraction] = {}
    for pairs in _pair_sequences(order_max):
        k = len(pairs)
        order = sum(r + s for r, s in pairs)
        denominator = k * order
        for r, s in pairs:
            denominator *= factorial(r) * factorial(s)
        word = "".join("x" * r + "y" * s for r, s in pairs)
        if len(word) >= 2 and word[-1] == word[-2]:
            continue
        coeffs[word] = coeffs.get(word, Fraction(0)) + Fraction((-1) ** (k - 1), denominator)
    return {w: c for w, c in coeffs.items() if c}


def bch(twisted: TwistedAlgebra, x: Gauge, y: Gauge) -> Gauge:
    """
    Truncated Baker-Campbell-Hausdorff composite.

    exp(ad_bch(x, y)) = exp(ad_x) exp(ad_y) through the weight window, so
    acting by bch(x, y) is acting by y and then by x.

    Raises:
        FieldRefusedError: Over a prime field
    """
    ring = twisted.ring
    _require_rational(ring, "BCH")
    W, L = twisted.window.weight_max, twisted.window.level_max
    weights, levels = range(W + 1), range(L + 1)
    if x.is_zero():
        return Gauge(project(y.element, weights, levels))
    if y.is_zero():
        return Gauge(project(x.element, weights, levels))

    letters = {"x": x.element, "y": y.element}
    smallest = min(x.min_weight(), y.min_weight())
    nested: Dict[str, ConvolutionElement] = {}

    def bracket_of(word: str) -> ConvolutionElement:
        if word in nested:
            return nested[word]
        if len(word) == 1:
            value = letters[word]
        else:
            value = twisted.bracket(
                letters[word[0]], bracket_of(word[1:]), weights=weights, levels=levels
            )
        nested[word] = value
        return value

    total = ConvolutionElement.zero(x.algebra)
    for word, c in sorted(dynkin_coefficients(W // smallest).items()):
        term = bracket_of(word)
        if not term.is_zero():
            total = total + term.scale(ring.coerce(c))
    logger.debug("bch_computed", words=len(nested), terms=len(total))
    return Gauge(project(total, weights, levels))


def compose_gauges(twisted: TwistedAlgebra, gauges: List[Gauge]) -> Gauge:
    """bch(g_last, bch(..., g_first)): act by gauges[0] first."""
    if not gauges:
        raise ValueError("Nothing to compose")
    total = gauges[0]
    for g in gauges[1:]:
        total = bch(twisted, g, total)
    return total
