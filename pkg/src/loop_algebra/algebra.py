"""
The truncated loop-space algebra.

H = R[t]/(t^{D+1}) with deg t = n - 1, the homology of the based loop space
of the n-sphere cut off at t-degree D. The truncation is loud: a product
that would need an exponent above D is reported as an Overflow marker
instead of being silently dropped.

Design Principles:
- Immutable values, pure operations
- No silent truncation
- Safe-bound helper so callers size D before computing
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

import structlog

from src.linalg.scalars import Ring
from src.utils.exceptions import TruncationOverflow, UnsafeTruncationError

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class Overflow:
    """Marker returned when a product leaves the truncation window."""

    exponent: int
    """Smallest exponent that did not fit"""

    bound: int
    """Truncation bound D"""

    def __bool__(self) -> bool:
        return False

    def raise_error(self) -> None:
        raise TruncationOverflow(
            f"Exponent {self.exponent} exceeds truncation bound {self.bound}",
            details={"exponent": self.exponent, "bound": self.bound},
        )


class LoopAlgebra:
    """
    Context object for H = R[t]/(t^{D+1}).

    Example:
        ```python
        H = LoopAlgebra(n=2, D=10)
        x = H.monomial(2)
        y = H.mul(x, H.monomial(3))  # t^5
        H.degree(y)                  # 5
        ```
    """

    def __init__(self, n: int, D: int, ring: Optional[Ring] = None):
        """
        Initialize the loop algebra context.

        Args:
            n: Calabi-Yau dimension (>= 2)
            D: Largest t-exponent kept (>= 4)
            ring: Coefficient ring (defaults to Q)

        Raises:
            ValueError: If n < 2 or D < 4
        """
        if n < 2:
            raise ValueError(f"Dimension n must be >= 2, got {n}")
        if D < 4:
            raise ValueError(f"Truncation bound D must be >= 4, got {D}")
        self.n = n
        self.D = D
        self.ring = ring or Ring.rational()

    @property
    def m(self) -> int:
        """Degree of t."""
        return self.n - 1

    def degree_of(self, exponent: int) -> int:
        return exponent * self.m

    def fits(self, exponent: int) -> bool:
        return 0 <= exponent <= self.D

    def require(self, exponent: int) -> None:
        """Raise TruncationOverflow if t^exponent is outside the window."""
        if exponent > self.D:
            Overflow(exponent, self.D).raise_error()
        if exponent < 0:
            raise ValueError(f"Exponents are non-negative, got {exponent}")

    def monomial(self, exponent: int, coeff: Any = 1) -> "AlgebraElement":
        self.require(exponent)
        return AlgebraElement(self, {exponent: self.ring.coerce(coeff)})

    def element(self, coefficients: Dict[int, Any]) -> "AlgebraElement":
        """Build an element from an exponent -> coefficient mapping."""
        for k in coefficients:
            self.require(k)
        return AlgebraElement(self, {k: self.ring.coerce(v) for k, v in coefficients.items()})

    def one(self) -> "AlgebraElement":
        return self.monomial(0)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def mul(self, a: "AlgebraElement", b: "AlgebraElement") -> Union["AlgebraElement", Overflow]:
        """
        Multiply two elements.

        Args:
            a: Left factor
            b: Right factor

        Returns:
            The product, or an Overflow marker if any exponent exceeds D

        Raises:
            ValueError: If the factors live in different contexts
        """
        if a.algebra != self or b.algebra != self:
            raise ValueError("Cannot multiply elements of different loop algebras")
        out: Dict[int, Any] = {}
        for i, u in a.coefficients.items():
            for j, v in b.coefficients.items():
                k = i + j
                if k > self.D:
                    logger.debug("product_overflow", exponent=k, bound=self.D)
                    return Overflow(k, self.D)
                out[k] = out.get(k, self.ring.zero) + u * v
        return AlgebraElement(self, out)

    def degree(self, x: "AlgebraElement") -> int:
        """
        Homological degree of a homogeneous nonzero element.

        Raises:
            ValueError: If x is zero or inhomogeneous
        """
        if x.is_zero():
            raise ValueError("The zero element has no degree")
        if not x.is_homogeneous:
            raise ValueError(f"Element {x} is not homogeneous")
        (k,) = x.coefficients.keys()
        return self.degree_of(k)

    @staticmethod
    def safe_bound(input_bound: int, arity: int) -> int:
        """
        Conservative truncation bound for a computation.

        Args:
            input_bound: Largest t-exponent E of a chain input
            arity: Total arity A of the cochains involved

        Returns:
            The required D, E * A + 3
        """
        return input_bound * arity + 3

    def check_safe(self, input_bound: int, arity: int) -> None:
        """Raise UnsafeTruncationError if D is below safe_bound(E, A)."""
        required = self.safe_bound(input_bound, arity)
        if self.D < required:
            logger.error("unsafe_truncation", required=required, bound=self.D)
            raise UnsafeTruncationError(
                f"Truncation bound {self.D} is below the required {required} "
                f"(input bound {input_bound}, arity {arity})",
                details={"required": required, "bound": self.D},
            )

    def with_ring(self, ring: Ring) -> "LoopAlgebra":
        return LoopAlgebra(self.n, self.D, ring)

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "D": self.D, "ring": self.ring.tag}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LoopAlgebra)
            and (other.n, other.D, other.ring) == (self.n, self.D, self.ring)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.D, self.ring))

    def __repr__(self) -> str:
        return f"LoopAlgebra(n={self.n}, D={self.D}, ring={self.ring.tag})"


@dataclass
class AlgebraElement:
    """A finite combination of monomials t^k, k <= D."""

    algebra: LoopAlgebra
    """Owning context"""

    coefficients: Dict[int, Any] = field(default_factory=dict)
    """Exponent -> nonzero domain element"""

    def __post_init__(self) -> None:
        zero = self.algebra.ring.zero
        self.coefficients = {k: v for k, v in self.coefficients.items() if v != zero}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.coefficients) <= 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, self.algebra.ring.zero) + v
        return AlgebraElement(self.algebra, out)

    def scale(self, c: Any) -> "AlgebraElement":
        c = self.algebra.ring.coerce(c)
        return AlgebraElement(self.algebra, {k: c * v for k, v in self.coefficients.items()})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and other.algebra == self.algebra
            and other.coefficients == self.coefficients
        )

    def to_dict(self) -> Dict[str, Any]:
        ring = self.algebra.ring
        return {str(k): ring.to_json(v) for k, v in sorted(self.coefficients.items())}

    def __repr__(self) -> str:
        if not self.coefficients:
            return "0"
        ring = self.algebra.ring
        return " + ".join(f"{ring.to_str(v)}*t^{k}" for k, v in sorted(self.coefficients.items()))
