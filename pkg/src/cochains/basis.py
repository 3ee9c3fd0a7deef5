"""
Finite bases of bidegree slices.

A slice fixes the number of outputs l, the map degree d and the weight w.
Then the input count is N = w + 2 - l, and every term satisfies

    sum(outputs) = sum(inputs) + (d + N) / (n - 1)

so with the total input exponent bounded by E the slice is finite. The
isotypic variant uses the orbit-sum basis of ``rotation``.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import structlog

from src.cochains.cochain import HigherCochain
from src.cochains.koszul import Key
from src.cochains.rotation import orbit_representative, orbit_sum_terms
from src.loop_algebra import LoopAlgebra

logger = structlog.get_logger(__name__)


@lru_cache(maxsize=None)
def compositions(total: int, parts: int, minimum: int) -> Tuple[Tuple[int, ...], ...]:
    """All ordered tuples of ``parts`` integers >= minimum summing to total."""
    if parts == 0:
        return ((),) if total == 0 else ()
    out = []
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in compositions(total - first, parts - 1, minimum):
            out.append((first,) + rest)
    return tuple(out)


def _split(seq: Sequence[int], counts: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    out, i = [], 0
    for k in counts:
        out.append(tuple(seq[i : i + k]))
        i += k
    return tuple(out)


def enumerate_keys(
    algebra: LoopAlgebra,
    ell: int,
    degree: int,
    weight: int,
    input_bound: int,
) -> List[Key]:
    """
    All normalized basis terms of a slice, sorted.

    Args:
        algebra: Loop algebra context
        ell: Number of outputs
        degree: Map degree d
        weight: Weight w (total legs minus two)
        input_bound: Largest total input exponent E

    Returns:
        Sorted list of keys; empty if the slice is empty
    """
    n_in = weight + 2 - ell
    m = algebra.m
    if ell < 1 or n_in < 0:
        return []
    if (degree + n_in) % m:
        return []
    shift = (degree + n_in) // m
    keys: List[Key] = []
    sector_counts = compositions(n_in, ell, 0)
    for s_in in range(n_in, input_bound + 1):
        s_out = s_in + shift
        if s_out < 0:
            continue
        input_tuples = compositions(s_in, n_in, 1)
        output_tuples = [o for o in compositions(s_out, ell, 0) if max(o) <= algebra.D]
        if not output_tuples:
            continue
        for ins in input_tuples:
            if any(e > algebra.D for e in ins):
                continue
            for counts in sector_counts:
                sectors = _split(ins, counts)
                for outs in output_tuples:
                    keys.append((outs, sectors))
    keys.sort()
    return keys


@dataclass
class SliceBasis:
    """
    Ordered basis of a slice, standard or isotypic.

    Attributes:
        algebra: Loop algebra context
        ell: Number of outputs
        degree: Map degree
        weight: Weight
        input_bound: Total input exponent bound
        isotypic: Orbit-sum basis instead of single terms
        keys: Basis keys (orbit representatives when isotypic)
    """

    algebra: LoopAlgebra
    ell: int
    degree: int
    weight: int
    input_bound: int
    isotypic: bool = False
    keys: List[Key] = field(default_factory=list)
    _index: Dict[Key, int] = field(default_factory=dict, repr=False)
    _orbits: Dict[Key, Dict[Key, int]] = field(default_factory=dict, repr=False)

    @classmethod
    def build(
        cls,
        algebra: LoopAlgebra,
        ell: int,
        degree: int,
        weight: int,
        input_bound: int,
        isotypic: bool = False,
    ) -> "SliceBasis":
        keys = enumerate_keys(algebra, ell, degree, weight, input_bound)
        basis = cls(algebra, ell, degree, weight, input_bound, isotypic)
        n = algebra.n
        if isotypic:
            reps = []
            for key in keys:
                if orbit_representative(key, n) != key:
                    continue
                terms = orbit_sum_terms(key, n, algebra.ring.characteristic)
                if terms is None:
                    continue
                reps.append(key)
                basis._orbits[key] = terms
            basis.keys = reps
        else:
            basis.keys = keys
        basis._index = {k: i for i, k in enumerate(basis.keys)}
        logger.debug(
            "slice_basis_built",
            ell=ell,
            degree=degree,
            weight=weight,
            input_bound=input_bound,
            isotypic=isotypic,
            size=len(basis.keys),
        )
        return basis

    def __len__(self) -> int:
        return len(self.keys)

    def index(self, key: Key) -> Optional[int]:
        return self._index.get(key)

    def element(self, i: int) -> HigherCochain:
        """The i-th basis cochain."""
        ring = self.algebra.ring
        key = self.keys[i]
        if self.isotypic:
            terms = {k: ring.sign(s) for k, s in self._orbits[key].items()}
        else:
            terms = {key: ring.one}
        return HigherCochain(self.algebra, self.ell, terms, coerce=False)

    def elements(self) -> Iterator[HigherCochain]:
        for i in range(len(self.keys)):
            yield self.element(i)

    def coordinates(self, c: HigherCochain, strict: bool = True) -> List[Any]:
        """
        Coordinates of a cochain in this basis.

        For the isotypic basis the coordinate is the coefficient on each
        orbit representative; c is assumed isotypic.

        Raises:
            ValueError: If strict and c has a term outside the slice
        """
        ring = self.algebra.ring
        vec = [ring.zero] * len(self.keys)
        for key, v in c.terms.items():
            i = self._index.get(key)
            if i is None:
                if strict and not self.isotypic:
                    raise ValueError(f"Term {key} is not in the slice")
                continue
            vec[i] = v
        return vec

    def combine(self, vec: Sequence[Any]) -> HigherCochain:
        """The cochain with the given coordinates."""
        out = HigherCochain.zero(self.algebra, self.ell)
        ring = self.algebra.ring
        for i, v in enumerate(vec):
            if v == ring.zero:
                continue
            if self.isotypic:
                for k, s in self._orbits[self.keys[i]].items():
                    out.add_term(k, ring.sign(s) * v)
            else:
                out.add_term(self.keys[i], v)
        return out

    def descriptor(self) -> Dict[str, Any]:
        return {
            "ell": self.ell,
            "degree": self.degree,
            "weight": self.weight,
            "input_bound": self.input_bound,
            "isotypic": self.isotypic,
            "size": len(self.keys),
        }
