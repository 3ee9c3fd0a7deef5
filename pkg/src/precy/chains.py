"""
Normalized Hochschild chains of the loop algebra.

A basis chain a0[a1|...|ak] is stored as ``(a0, (a1, ..., ak))`` with the
t-exponents of its letters; normalized chains have a_i >= 1 for i >= 1. The
degree is sum_i |a_i| + k with |t^e| = e(n-1). The boundary is

    b = sum_{i<k} (-1)^i d_i + (-1)^k d_k

where d_i multiplies a_i a_{i+1} and d_k moves a_k to the front with the
Koszul sign of passing a0, ..., a_{k-1}.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import structlog

from src.linalg import Ring
from src.loop_algebra import LoopAlgebra

logger = structlog.get_logger(__name__)

ChainKey = Tuple[int, Tuple[int, ...]]


class HochschildChain:
    """
    Element of the normalized Hochschild chain complex C_*(H).

    Example:
        ```python
        H = LoopAlgebra(n=2, D=10)
        x = HochschildChain.basis(H, 0, (1,))  # 1[t]
        x.degree()          # 2
        boundary(x).is_zero()  # True
        ```
    """

    def __init__(self, algebra: LoopAlgebra, terms: Optional[Dict[ChainKey, Any]] = None):
        self.algebra = algebra
        self.ring = algebra.ring
        self.terms: Dict[ChainKey, Any] = {}
        for (a0, bar), v in (terms or {}).items():
            bar = tuple(bar)
            algebra.require(a0)
            for e in bar:
                algebra.require(e)
                if e < 1:
                    raise ValueError(f"Bar letters are normalized (exponent >= 1), got {bar}")
            v = self.ring.coerce(v)
            if v != self.ring.zero:
                self.terms[(a0, bar)] = v

    @classmethod
    def basis(cls, algebra: LoopAlgebra, a0: int, bar: Tuple[int, ...] = ()) -> "HochschildChain":
        return cls(algebra, {(a0, tuple(bar)): 1})

    def add_term(self, key: ChainKey, value: Any) -> None:
        new = self.terms.get(key, self.ring.zero) + value
        if new == self.ring.zero:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def __add__(self, other: "HochschildChain") -> "HochschildChain":
        out = HochschildChain(self.algebra)
        out.terms = dict(self.terms)
        for k, v in other.terms.items():
            out.add_term(k, v)
        return out

    def scale(self, c: Any) -> "HochschildChain":
        c = self.ring.coerce(c)
        out = HochschildChain(self.algebra)
        out.terms = {k: c * v for k, v in self.terms.items() if c * v != self.ring.zero}
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HochschildChain) and other.terms == self.terms

    def length(self) -> int:
        lengths = {len(bar) for _, bar in self.terms}
        if len(lengths) != 1:
            raise ValueError(f"Chain mixes bar lengths {sorted(lengths)}")
        return lengths.pop()

    def degree(self) -> int:
        m = self.algebra.m
        degrees = {m * (a0 + sum(bar)) + len(bar) for a0, bar in self.terms}
        if len(degrees) != 1:
            raise ValueError(f"Chain is not homogeneous: degrees {sorted(degrees)}")
        return degrees.pop()

    def to_str(self) -> str:
        parts = []
        for (a0, bar), v in sorted(self.terms.items()):
            word = _letter(a0) + ("[" + "|".join(_letter(e) for e in bar) + "]" if bar else "")
            coeff = self.ring.to_str(v)
            parts.append(word if coeff == "1" else f"{coeff}*{word}")
        return " + ".join(parts) or "0"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "terms": [
                {"a0": a0, "bar": list(bar), "coeff": self.ring.to_json(v)}
                for (a0, bar), v in sorted(self.terms.items())
            ]
        }

    def __repr__(self) -> str:
        return f"HochschildChain({self.to_str()})"


def _letter(e: int) -> str:
    if e == 0:
        return "1"
    return "t" if e == 1 else f"t^{e}"


def boundary(x: HochschildChain) -> HochschildChain:
    """
    The Hochschild boundary b.

    Raises:
        TruncationOverflow: If a product leaves the truncation window
    """
    algebra = x.algebra
    m = algebra.m
    ring = x.ring
    out = HochschildChain(algebra)
    for (a0, bar), v in x.terms.items():
        k = len(bar)
        if k == 0:
            continue
        letters = (a0,) + bar
        for i in range(k):
            merged = letters[i] + letters[i + 1]
            algebra.require(merged)
            new = letters[:i] + (merged,) + letters[i + 2 :]
            out.add_term((new[0], new[1:]), ring.sign(i) * v)
        last = bar[-1]
        passed = m * sum(letters[:-1])
        koszul = (m * last) * passed
        merged = last + a0
        algebra.require(merged)
        out.add_term((merged, bar[:-1]), ring.sign(k + koszul) * v)
    return out


# ============================================================================
# HOCHSCHILD HOMOLOGY TABLE
# ============================================================================


@dataclass
class HochschildClass:
    """A rational Hochschild homology class of H with its representative."""

    degree: int
    representative: HochschildChain
    is_cycle: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "representative": self.representative.to_str(),
            "is_cycle": self.is_cycle,
        }


def hh_class_table(n: int, degree_max: int, D: int = 10) -> List[HochschildClass]:
    """
    Rational Hochschild homology classes of H in degrees <= degree_max.

    For n odd the classes are t^k in degree k(n-1) and t^k[t] in degree
    k(n-1) + n. For n even only 1, the odd powers t^k and the chains t^k[t]
    with k even survive.

    Args:
        n: Sphere dimension (>= 2)
        degree_max: Largest degree listed
        D: Truncation bound for the representatives

    Returns:
        Classes sorted by degree, each with its boundary check
    """
    algebra = LoopAlgebra(n=n, D=D, ring=Ring.rational())
    m = algebra.m
    table: List[HochschildClass] = []
    k = 0
    while k * m <= degree_max and k + 1 <= D:
        if n % 2 == 1 or k == 0 or k % 2 == 1:
            table.append(_entry(HochschildChain.basis(algebra, k)))
        if k * m + n <= degree_max and (n % 2 == 1 or k % 2 == 0):
            table.append(_entry(HochschildChain.basis(algebra, k, (1,))))
        k += 1
    table.sort(key=lambda c: c.degree)
    logger.debug("hh_table", n=n, degree_max=degree_max, classes=len(table))
    return table


def _entry(x: HochschildChain) -> HochschildClass:
    return HochschildClass(degree=x.degree(), representative=x, is_cycle=boundary(x).is_zero())


def cochain_degree(n: int, chain_degree: int) -> int:
    """Map degree of the one-output cochain dual to a chain of the given degree."""
    return chain_degree - n
