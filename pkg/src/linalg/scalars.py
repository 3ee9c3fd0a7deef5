"""
Exact scalars over Q and prime fields.

A Ring wraps a sympy domain (``QQ`` or ``GF(p)``) so that every module in the
workbench manipulates coefficients through one object: coercion, canonical
printing, JSON encoding and the invertibility questions that decide whether
an operation (symmetrization, gauge exponentials) is allowed.

Design Principles:
- No floating point anywhere
- Canonical forms: reduced fractions with positive denominator, residues in [0, p)
- Domain elements are used raw in hot loops; Scalar is the boundary type
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ

from src.utils.exceptions import FieldRefusedError

Number = Union[int, Fraction]


class Ring:
    """
    Coefficient ring: the rationals or a prime field.

    Example:
        ```python
        q = Ring.rational()
        f2 = Ring.prime(2)
        x = q.coerce(Fraction(3, 6))
        q.to_str(x)        # "1/2"
        f2.to_str(f2.coerce(3))  # "1"
        ```
    """

    def __init__(self, characteristic: int = 0):
        """
        Initialize a coefficient ring.

        Args:
            characteristic: 0 for Q, otherwise a prime p

        Raises:
            ValueError: If the characteristic is not 0 or a prime
        """
        if characteristic != 0 and not isprime(characteristic):
            raise ValueError(f"Field modulus must be prime, got {characteristic}")
        self.characteristic = characteristic
        self.domain = QQ if characteristic == 0 else GF(characteristic, symmetric=False)
        self.zero = self.domain.zero
        self.one = self.domain.one

    @classmethod
    def rational(cls) -> "Ring":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Ring":
        return cls(p)

    @classmethod
    def from_tag(cls, tag: str) -> "Ring":
        """
        Build a ring from a CLI/settings tag.

        Args:
            tag: "q", "f2" or "fp:<p>" (case-insensitive)

        Returns:
            The corresponding Ring

        Raises:
            ValueError: If the tag is malformed or the modulus is not prime
        """
        t = tag.strip().lower()
        if t == "q":
            return cls.rational()
        if t == "f2":
            return cls.prime(2)
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError as e:
                raise ValueError(f"Invalid prime in field tag: {tag}") from e
            return cls.prime(p)
        raise ValueError(f"Field must be one of ['q', 'f2', 'fp:<p>'], got {tag!r}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def tag(self) -> str:
        return "Q" if self.is_rational else f"F{self.characteristic}"

    def coerce(self, value: Union[Number, str, Any]) -> Any:
        """
        Convert an int, Fraction or "num/den" string to a domain element.

        Raises:
            FieldRefusedError: If a denominator is not invertible in the field
        """
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return self.domain(int(value.numerator))
            if not self.is_unit(value.denominator):
                raise FieldRefusedError(
                    f"Denominator {value.denominator} is not invertible over {self.tag}"
                )
            return self.domain(int(value.numerator)) / self.domain(int(value.denominator))
        if isinstance(value, int):
            return self.domain(value)
        # already a domain element
        return value

    def is_unit(self, k: int) -> bool:
        """True iff the integer k is invertible in the ring."""
        if self.is_rational:
            return k != 0
        return k % self.characteristic != 0

    def is_zero(self, x: Any) -> bool:
        return x == self.zero

    def sign(self, exponent: int) -> Any:
        """(-1)^exponent as a domain element."""
        return self.one if exponent % 2 == 0 else -self.one

    def to_fraction(self, x: Any) -> Fraction:
        """Exact rational value (residue in [0, p) over a prime field)."""
        if self.is_rational:
            return Fraction(int(self.domain.numer(x)), int(self.domain.denom(x)))
        return Fraction(int(self.domain.to_sympy(x)) % self.characteristic)

    def residue(self, x: Any) -> int:
        """Canonical residue of a prime-field element."""
        return int(self.domain.to_sympy(x)) % self.characteristic

    def to_str(self, x: Any) -> str:
        if self.is_rational:
            f = self.to_fraction(x)
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        return str(self.residue(x))

    def to_json(self, x: Any) -> Union[str, int]:
        """Rationals as "num/den" strings, residues as integers."""
        if self.is_rational:
            return self.to_str(x)
        return self.residue(x)

    def is_integral(self, x: Any) -> bool:
        """True iff x has denominator 1 (always true over a prime field)."""
        if not self.is_rational:
            return True
        return self.to_fraction(x).denominator == 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Ring", self.characteristic))

    def __repr__(self) -> str:
        return f"Ring({self.tag})"


@dataclass(frozen=True)
class Scalar:
    """An exact coefficient together with its ring, used at API boundaries."""

    value: Fraction
    """Reduced fraction, or residue in [0, p) stored with denominator 1"""

    ring: Ring
    """Ring the value lives in"""

    @classmethod
    def of(cls, ring: Ring, x: Any) -> "Scalar":
        return cls(value=ring.to_fraction(ring.coerce(x)), ring=ring)

    def element(self) -> Any:
        return self.ring.coerce(self.value)

    def __str__(self) -> str:
        return self.ring.to_str(self.element())
