"""
Higher Hochschild cochains.

A HigherCochain is a finitely supported linear combination of basis terms:
each term fixes l output exponents and, for every sector between consecutive
outputs, the exponents of the inputs read there. Terms are stored sparsely
as ``{key: coefficient}`` with keys from ``src.cochains.koszul``.

Cochains are normalized: an input equal to the unit t^0 never appears. The
one exception is the product structure itself, flagged ``complete_through``,
which holds every product t^a t^b with a + b <= D.

Design Principles:
- Sparse dictionary storage, no stored zeros
- Loud truncation: every exponent is checked against the loop algebra bound
- Canonical JSON with sorted keys for witnesses
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Set, Tuple

import structlog

from src.cochains.koszul import (
    Key,
    conv_degree,
    input_total,
    is_normalized,
    map_degree,
    n_inputs,
    profile,
    shifted_parity,
    weight,
)
from src.loop_algebra import LoopAlgebra

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class InputProfile:
    """Per-sector input counts of a cochain component."""

    counts: Tuple[int, ...]
    """k_1, ..., k_l"""

    @property
    def ell(self) -> int:
        return len(self.counts)

    @property
    def n_inputs(self) -> int:
        return sum(self.counts)

    @property
    def legs(self) -> int:
        return self.n_inputs + self.ell

    def __str__(self) -> str:
        return "(" + ",".join(str(k) for k in self.counts) + ")"


@dataclass
class CochainComponent:
    """The terms of a cochain sharing one input profile."""

    profile: InputProfile
    degree: Optional[int]
    entries: Dict[Key, Any]


class HigherCochain:
    """
    Element of the l-output Hochschild cochain space CH_(l)(H).

    Example:
        ```python
        H = LoopAlgebra(n=2, D=10)
        # alpha(t) = 1 (x) 1, one input in sector 1
        c = HigherCochain(H, 2, {((0, 0), ((1,), ())): 1})
        c.map_degree()  # -2
        ```
    """

    def __init__(
        self,
        algebra: LoopAlgebra,
        ell: int,
        terms: Optional[Dict[Key, Any]] = None,
        complete_through: Optional[int] = None,
        coerce: bool = True,
    ):
        """
        Initialize a cochain.

        Args:
            algebra: Loop algebra context
            ell: Number of outputs (>= 1)
            terms: Mapping key -> coefficient (ints, Fractions or domain elements)
            complete_through: Set only on the product structure, which holds
                every term with output exponent up to this bound
            coerce: Coerce coefficients into the ring (skip for internal use)

        Raises:
            ValueError: If a key has the wrong number of outputs or sectors
            TruncationOverflow: If an exponent exceeds D
        """
        if ell < 1:
            raise ValueError(f"Number of outputs must be >= 1, got {ell}")
        self.algebra = algebra
        self.ring = algebra.ring
        self.ell = ell
        self.complete_through = complete_through
        self.terms: Dict[Key, Any] = {}
        zero = self.ring.zero
        for key, value in (terms or {}).items():
            if coerce:
                self._validate_key(key)
                value = self.ring.coerce(value)
            if value != zero:
                self.terms[key] = value

    def _validate_key(self, key: Key) -> None:
        outs, sectors = key
        if len(outs) != self.ell or len(sectors) != self.ell:
            raise ValueError(
                f"Key {key} does not have {self.ell} outputs and {self.ell} sectors"
            )
        for e in outs:
            self.algebra.require(e)
        for sector in sectors:
            for e in sector:
                self.algebra.require(e)

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, algebra: LoopAlgebra, ell: int) -> "HigherCochain":
        return cls(algebra, ell, {})

    @classmethod
    def basis(cls, algebra: LoopAlgebra, key: Key) -> "HigherCochain":
        return cls(algebra, len(key[0]), {key: 1})

    def _new(self, terms: Dict[Key, Any]) -> "HigherCochain":
        return HigherCochain(self.algebra, self.ell, terms, coerce=False)

    def copy(self) -> "HigherCochain":
        return HigherCochain(
            self.algebra, self.ell, dict(self.terms), self.complete_through, coerce=False
        )

    # ------------------------------------------------------------------
    # Linear structure
    # ------------------------------------------------------------------

    def _check_compatible(self, other: "HigherCochain") -> None:
        if other.algebra != self.algebra or other.ell != self.ell:
            raise ValueError(
                f"Incompatible cochains: ell {self.ell} vs {other.ell}, "
                f"{self.algebra} vs {other.algebra}"
            )

    def __add__(self, other: "HigherCochain") -> "HigherCochain":
        self._check_compatible(other)
        out = dict(self.terms)
        zero = self.ring.zero
        for k, v in other.terms.items():
            out[k] = out.get(k, zero) + v
        return self._new(out)

    def __sub__(self, other: "HigherCochain") -> "HigherCochain":
        return self + other.scale(-1)

    def __neg__(self) -> "HigherCochain":
        return self.scale(-1)

    def scale(self, c: Any) -> "HigherCochain":
        c = self.ring.coerce(c)
        return self._new({k: c * v for k, v in self.terms.items()})

    def add_term(self, key: Key, value: Any) -> None:
        """In-place accumulation used by the builders."""
        new = self.terms.get(key, self.ring.zero) + value
        if new == self.ring.zero:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HigherCochain)
            and other.algebra == self.algebra
            and other.ell == self.ell
            and other.terms == self.terms
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Key, Any]]:
        return iter(sorted(self.terms.items()))

    def coefficient(self, key: Key) -> Any:
        return self.terms.get(key, self.ring.zero)

    # ------------------------------------------------------------------
    # Gradings
    # ------------------------------------------------------------------

    def _single(self, values: Set[int], what: str) -> int:
        if len(values) != 1:
            raise ValueError(f"Cochain is not homogeneous in {what}: {sorted(values)}")
        return next(iter(values))

    def map_degree(self) -> int:
        return self._single({map_degree(k, self.algebra.n) for k in self.terms}, "degree")

    def conv_degree(self) -> int:
        return self._single({conv_degree(k, self.algebra.n) for k in self.terms}, "degree")

    def shifted_parity(self) -> int:
        return self._single({shifted_parity(k, self.algebra.n) for k in self.terms}, "parity")

    def weights(self) -> Set[int]:
        return {weight(k) for k in self.terms}

    def weight(self) -> int:
        return self._single(self.weights(), "weight")

    def max_output(self) -> int:
        return max((max(k[0]) for k in self.terms), default=0)

    def max_input_total(self) -> int:
        return max((input_total(k) for k in self.terms), default=0)

    def is_normalized(self) -> bool:
        return all(is_normalized(k) for k in self.terms)

    # ------------------------------------------------------------------
    # Projections
    # ------------------------------------------------------------------

    def window(self, input_bound: int) -> "HigherCochain":
        """Keep the terms whose total input exponent is at most input_bound."""
        return self._new({k: v for k, v in self.terms.items() if input_total(k) <= input_bound})

    def filter(self, predicate) -> "HigherCochain":
        return self._new({k: v for k, v in self.terms.items() if predicate(k)})

    def with_weight(self, w: int) -> "HigherCochain":
        return self.filter(lambda k: weight(k) == w)

    def components(self) -> List[CochainComponent]:
        """Group terms by input profile, in profile order."""
        grouped: Dict[Tuple[int, ...], Dict[Key, Any]] = {}
        for k, v in self.terms.items():
            grouped.setdefault(profile(k), {})[k] = v
        out = []
        n = self.algebra.n
        for prof in sorted(grouped):
            entries = grouped[prof]
            degrees = {map_degree(k, n) for k in entries}
            out.append(
                CochainComponent(
                    profile=InputProfile(prof),
                    degree=degrees.pop() if len(degrees) == 1 else None,
                    entries=entries,
                )
            )
        return out

    def evaluate(self, inputs: Iterable[Iterable[int]]) -> Dict[Tuple[int, ...], Any]:
        """
        Value on a tuple of monomial inputs.

        Args:
            inputs: One tuple of input exponents per sector

        Returns:
            Mapping from output exponent tuples (a pure tensor t^o1 (x) ... )
            to coefficients
        """
        sectors = tuple(tuple(s) for s in inputs)
        return {k[0]: v for k, v in self.terms.items() if k[1] == sectors}

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        """
        Canonical JSON form.

        Returns:
            {ell, degree, components: [{profile, entries: [{inputs,
            output_tensor, coeff}]}]}
        """
        degrees = {map_degree(k, self.algebra.n) for k in self.terms}
        components = []
        for comp in self.components():
            entries = [
                {
                    "coeff": self.ring.to_json(v),
                    "inputs": [list(s) for s in k[1]],
                    "output_tensor": list(k[0]),
                }
                for k, v in sorted(comp.entries.items())
            ]
            components.append({"entries": entries, "profile": list(comp.profile.counts)})
        return {
            "components": components,
            "degree": degrees.pop() if len(degrees) == 1 else None,
            "ell": self.ell,
        }

    @classmethod
    def from_dict(cls, algebra: LoopAlgebra, payload: Dict[str, Any]) -> "HigherCochain":
        ell = int(payload["ell"])
        terms: Dict[Key, Any] = {}
        for comp in payload.get("components", []):
            for entry in comp["entries"]:
                key = (
                    tuple(entry["output_tensor"]),
                    tuple(tuple(s) for s in entry["inputs"]),
                )
                terms[key] = algebra.ring.coerce(
                    entry["coeff"] if isinstance(entry["coeff"], int) else str(entry["coeff"])
                )
        return cls(algebra, ell, terms)

    def __repr__(self) -> str:
        return f"HigherCochain(ell={self.ell}, terms={len(self.terms)}, ring={self.ring.tag})"

    def pretty(self, limit: int = 20) -> str:
        """Human-readable listing of the first terms."""
        lines = []
        for key, v in list(self)[:limit]:
            outs, sectors = key
            ins = ";".join(",".join(f"t^{e}" for e in s) or "-" for s in sectors)
            tensor = " (x) ".join(f"t^{o}" for o in outs)
            lines.append(f"{self.ring.to_str(v)} * [{ins}] -> {tensor}")
        if len(self.terms) > limit:
            lines.append(f"... ({len(self.terms) - limit} more)")
        return "\n".join(lines)
