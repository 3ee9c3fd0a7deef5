"""
The convolution algebra of higher cochains.

A ConvolutionElement is a finite sum of higher cochains with different
numbers of outputs. Two gradings organize it:

- weight F: inputs + outputs - 2 (total legs minus two)
- level L: outputs - 1

The necklace product a * b plugs the first output of b into an input of the
first sector of a and sums the result over the cyclic rotations of the
glued word. For cyclically invariant factors this is the sum over all
insertions of an output of b into an input of a. Both gradings are additive
under the product.

Design Principles:
- Parts stored per number of outputs, each a sparse HigherCochain
- Products computed per requested (weight, level) window
- Unit inputs produced by gluing are projected away (normalized cochains)
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

import structlog

from src.cochains import HigherCochain, norm_map
from src.cochains.koszul import (
    conv_degree,
    glue,
    input_total,
    is_normalized,
    key_of,
    n_inputs,
    word_of,
)
from src.cochains.koszul import shifted_parity as term_parity
from src.cochains.koszul import weight as term_weight
from src.loop_algebra import LoopAlgebra
from src.utils.exceptions import UnsafeTruncationError

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class Bidegree:
    """Weight, level and convolution degree of a homogeneous piece."""

    weight: int
    level: int
    degree: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"weight": self.weight, "level": self.level, "degree": self.degree}


class ConvolutionElement:
    """
    Element of the convolution algebra g_H.

    Example:
        ```python
        H = LoopAlgebra(n=2, D=10)
        mu = ConvolutionElement.from_cochain(product_cochain(H))
        mc_defect(mu, input_bound=4).is_zero()  # True
        ```
    """

    def __init__(
        self,
        algebra: LoopAlgebra,
        parts: Optional[Iterable[HigherCochain]] = None,
        strict: bool = True,
    ):
        """
        Initialize a convolution element.

        Args:
            algebra: Loop algebra context
            parts: Cochains to sum; parts with the same number of outputs
                are added together
            strict: Reject terms of total arity below 3, which do not belong
                to g_H

        Raises:
            ValueError: If a part lives over another algebra or a term has
                total arity below 3 in strict mode
        """
        self.algebra = algebra
        self.strict = strict
        self.parts: Dict[int, HigherCochain] = {}
        for part in parts or []:
            if part.algebra != algebra:
                raise ValueError(f"Part over {part.algebra} added to element over {algebra}")
            if part.is_zero():
                continue
            if part.ell in self.parts:
                self.parts[part.ell] = self.parts[part.ell] + part
            else:
                self.parts[part.ell] = part
        self.parts = {ell: p for ell, p in self.parts.items() if not p.is_zero()}
        if strict:
            self._validate()

    def _validate(self) -> None:
        for ell, part in self.parts.items():
            for key in part.terms:
                legs = n_inputs(key) + ell
                if legs < 3:
                    raise ValueError(
                        f"Term {key} has total arity {legs}; elements of g_H need at least 3"
                    )
                if term_weight(key) < ell - 2:
                    raise ValueError(f"Term {key} violates relative boundedness")

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, algebra: LoopAlgebra) -> "ConvolutionElement":
        return cls(algebra, [])

    @classmethod
    def from_cochain(cls, c: HigherCochain, strict: bool = True) -> "ConvolutionElement":
        return cls(c.algebra, [c], strict=strict)

    def _new(self, parts: Iterable[HigherCochain]) -> "ConvolutionElement":
        return ConvolutionElement(self.algebra, parts, strict=False)

    def part(self, ell: int) -> HigherCochain:
        """The l-output part (zero if absent)."""
        return self.parts.get(ell, HigherCochain.zero(self.algebra, ell))

    # ------------------------------------------------------------------
    # Linear structure
    # ------------------------------------------------------------------

    def __add__(self, other: "ConvolutionElement") -> "ConvolutionElement":
        if other.algebra != self.algebra:
            raise ValueError(f"Incompatible algebras: {self.algebra} vs {other.algebra}")
        merged: Dict[int, HigherCochain] = dict(self.parts)
        for ell, part in other.parts.items():
            merged[ell] = merged[ell] + part if ell in merged else part
        return self._new(merged.values())

    def __sub__(self, other: "ConvolutionElement") -> "ConvolutionElement":
        return self + other.scale(-1)

    def __neg__(self) -> "ConvolutionElement":
        return self.scale(-1)

    def scale(self, c: Any) -> "ConvolutionElement":
        return self._new(p.scale(c) for p in self.parts.values())

    def is_zero(self) -> bool:
        return not self.parts

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ConvolutionElement)
            and other.algebra == self.algebra
            and other.parts == self.parts
        )

    def __len__(self) -> int:
        return sum(len(p) for p in self.parts.values())

    # ------------------------------------------------------------------
    # Gradings
    # ------------------------------------------------------------------

    def components(self) -> Dict[Tuple[int, int], HigherCochain]:
        """Split into homogeneous (weight, level) pieces."""
        out: Dict[Tuple[int, int], HigherCochain] = {}
        for ell, part in self.parts.items():
            grouped: Dict[int, Dict] = {}
            for key, v in part.terms.items():
                grouped.setdefault(term_weight(key), {})[key] = v
            for w, terms in grouped.items():
                out[(w, ell - 1)] = HigherCochain(
                    self.algebra, ell, terms, part.complete_through, coerce=False
                )
        return out

    def bidegrees(self) -> List[Bidegree]:
        result = []
        for (w, level), piece in sorted(self.components().items()):
            degrees = _conv_degrees(piece)
            result.append(Bidegree(w, level, degrees.pop() if len(degrees) == 1 else None))
        return result

    def weights(self) -> Set[int]:
        return {w for w, _ in self.components()}

    def levels(self) -> Set[int]:
        return {ell - 1 for ell in self.parts}

    def conv_degree(self) -> int:
        degrees: Set[int] = set()
        for part in self.parts.values():
            degrees |= _conv_degrees(part)
        if len(degrees) != 1:
            raise ValueError(f"Element is not homogeneous in degree: {sorted(degrees)}")
        return degrees.pop()

    def max_output(self) -> int:
        return max((p.max_output() for p in self.parts.values()), default=0)

    def window(self, input_bound: int) -> "ConvolutionElement":
        return self._new(p.window(input_bound) for p in self.parts.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bidegrees": [b.to_dict() for b in self.bidegrees()],
            "parts": [self.parts[ell].to_dict() for ell in sorted(self.parts)],
        }

    def __repr__(self) -> str:
        levels = ",".join(str(ell - 1) for ell in sorted(self.parts))
        return f"ConvolutionElement(levels=[{levels}], terms={len(self)})"


def _conv_degrees(c: HigherCochain) -> Set[int]:
    return {conv_degree(k, c.algebra.n) for k in c.terms}


# ============================================================================
# PRODUCT AND BRACKET
# ============================================================================


def _check_complete_factor(
    a: HigherCochain, b: HigherCochain, input_bound: Optional[int]
) -> None:
    """An outer factor holding every product term needs room for b's outputs."""
    if a.complete_through is None:
        return
    D = a.algebra.D
    if input_bound is None:
        raise UnsafeTruncationError(
            "A product with a complete factor needs an input window",
            details={"bound": D},
        )
    for key in b.terms:
        room = input_bound - input_total(key)
        if room >= 1 and max(key[0]) + room > D:
            logger.error(
                "necklace_unsafe",
                max_output=max(key[0]),
                room=room,
                bound=D,
            )
            raise UnsafeTruncationError(
                f"Output t^{max(key[0])} with input budget {room} exceeds truncation bound {D}",
                details={"output": max(key[0]), "room": room, "bound": D},
            )


def compose_parts(
    a: HigherCochain, b: HigherCochain, input_bound: Optional[int] = None
) -> HigherCochain:
    """
    The necklace product of two single-level cochains.

    Args:
        a: Outer cochain with l_a outputs
        b: Inner cochain with l_b outputs
        input_bound: Keep only result terms with total input exponent at
            most this bound

    Returns:
        Cochain with l_a + l_b - 1 outputs

    Raises:
        UnsafeTruncationError: If a holds every product term and b's outputs
            do not leave room for the window
    """
    _check_complete_factor(a, b, input_bound)
    algebra = a.algebra
    n = algebra.n
    ring = algebra.ring
    L = a.ell + b.ell - 1
    out = HigherCochain.zero(algebra, L)

    inner: Dict[int, List[Tuple[list, Any, int]]] = {}
    for kb, vb in b.terms.items():
        inner.setdefault(kb[0][0], []).append((word_of(kb), vb, input_total(kb)))

    for ka, va in a.terms.items():
        wa = word_of(ka)
        total_a = input_total(ka)
        for p in range(1, len(ka[1][0]) + 1):
            e = wa[p][1]
            for wb, vb, total_b in inner.get(e, ()):
                if input_bound is not None and total_a - e + total_b > input_bound:
                    continue
                res, s = glue(wa, p, wb, 0, n)
                key = key_of(res)
                if not is_normalized(key):
                    continue
                out.add_term(key, ring.sign(s) * va * vb)
    return norm_map(out)


def necklace_product(
    a: ConvolutionElement,
    b: ConvolutionElement,
    input_bound: Optional[int] = None,
    weights: Optional[Iterable[int]] = None,
    levels: Optional[Iterable[int]] = None,
) -> ConvolutionElement:
    """
    The necklace product a * b.

    Args:
        a: Outer element
        b: Inner element
        input_bound: Total input exponent window of the result
        weights: Result weights to compute (all if None)
        levels: Result levels to compute (all if None)

    Returns:
        ConvolutionElement with weight and level additive

    Raises:
        UnsafeTruncationError: If the window needs a larger truncation bound
    """
    wanted_w = set(weights) if weights is not None else None
    wanted_l = set(levels) if levels is not None else None
    pieces: List[HigherCochain] = []
    a_comp = a.components()
    b_comp = b.components()
    for (wa, la), ca in sorted(a_comp.items()):
        for (wb, lb), cb in sorted(b_comp.items()):
            if wanted_w is not None and wa + wb not in wanted_w:
                continue
            if wanted_l is not None and la + lb not in wanted_l:
                continue
            pieces.append(compose_parts(ca, cb, input_bound))
    result = ConvolutionElement(a.algebra, pieces, strict=False)
    logger.debug(
        "necklace_product",
        left_terms=len(a),
        right_terms=len(b),
        result_terms=len(result),
        input_bound=input_bound,
    )
    return result


def _split_parity(x: ConvolutionElement) -> Dict[int, ConvolutionElement]:
    n = x.algebra.n
    buckets: Dict[int, List[HigherCochain]] = {0: [], 1: []}
    for ell, part in x.parts.items():
        for parity in (0, 1):
            piece = part.filter(lambda k, q=parity: term_parity(k, n) == q)
            piece.complete_through = part.complete_through
            buckets[parity].append(piece)
    return {q: ConvolutionElement(x.algebra, ps, strict=False) for q, ps in buckets.items()}


def necklace_bracket(
    a: ConvolutionElement,
    b: ConvolutionElement,
    input_bound: Optional[int] = None,
    weights: Optional[Iterable[int]] = None,
    levels: Optional[Iterable[int]] = None,
) -> ConvolutionElement:
    """
    [a, b] = a * b - (-1)^{delta(a) delta(b)} b * a, extended bilinearly.

    delta is the shifted parity (convolution degree mod 2).
    """
    weights = list(weights) if weights is not None else None
    levels = list(levels) if levels is not None else None
    result = ConvolutionElement.zero(a.algebra)
    for pa, xa in _split_parity(a).items():
        if xa.is_zero():
            continue
        for pb, xb in _split_parity(b).items():
            if xb.is_zero():
                continue
            forward = necklace_product(xa, xb, input_bound, weights, levels)
            backward = necklace_product(xb, xa, input_bound, weights, levels)
            if pa * pb:
                result = result + forward + backward
            else:
                result = result + forward - backward
    return result


def mc_defect(
    m: ConvolutionElement,
    input_bound: Optional[int] = None,
    weights: Optional[Iterable[int]] = None,
    levels: Optional[Iterable[int]] = None,
) -> ConvolutionElement:
    """
    The Maurer-Cartan defect m * m.

    Returns:
        m * m restricted to the requested window; its ``components()``
        report the defect per (weight, level)
    """
    defect = necklace_product(m, m, input_bound, weights, levels)
    if not defect.is_zero():
        logger.info(
            "mc_defect_nonzero",
            bidegrees=[(b.weight, b.level) for b in defect.bidegrees()],
            terms=len(defect),
        )
    return defect


def project(
    m: ConvolutionElement,
    weights: Optional[Iterable[int]] = None,
    levels: Optional[Iterable[int]] = None,
) -> ConvolutionElement:
    """Keep the (weight, level) components in the given sets; None keeps all."""
    wanted_w = set(weights) if weights is not None else None
    wanted_l = set(levels) if levels is not None else None
    kept = []
    for (w, level), piece in m.components().items():
        if wanted_w is not None and w not in wanted_w:
            continue
        if wanted_l is not None and level not in wanted_l:
            continue
        kept.append(piece)
    return ConvolutionElement(m.algebra, kept, strict=False)
