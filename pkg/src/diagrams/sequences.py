"""
Boundary data of planar trees.

Reading the legs of a planar tree once around the disc gives the outputs in
some cyclic order with a (possibly empty) group of inputs after each output.
Readings are normalized to start at output 1, so a sequence is a rotation
class of readings.
"""

from dataclasses import dataclass
from itertools import permutations
from math import comb, factorial
from typing import Any, Dict, Iterator, List, Sequence, Tuple


@dataclass(frozen=True)
class SequenceS:
    """
    Outputs in boundary order, each followed by the inputs up to the next one.

    Attributes:
        outputs: Output labels, starting at the smallest
        groups: groups[j] are the inputs between outputs[j] and outputs[j + 1]
    """

    outputs: Tuple[int, ...]
    groups: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.outputs:
            raise ValueError("A sequence needs at least one output")
        if len(self.groups) != len(self.outputs):
            raise ValueError(
                f"Expected {len(self.outputs)} input groups, got {len(self.groups)}"
            )
        if self.outputs[0] != min(self.outputs):
            raise ValueError("Sequences start at their smallest output")

    @classmethod
    def from_boundary(cls, legs: Sequence[Tuple[str, int]]) -> "SequenceS":
        """Normalize a cyclic leg reading."""
        outs = [k for k, (kind, _) in enumerate(legs) if kind == "o"]
        if not outs:
            raise ValueError("A boundary reading needs an output leg")
        start = min(outs, key=lambda k: legs[k][1])
        rotated = list(legs[start:]) + list(legs[:start])
        outputs: List[int] = []
        groups: List[List[int]] = []
        for kind, label in rotated:
            if kind == "o":
                outputs.append(label)
                groups.append([])
            else:
                groups[-1].append(label)
        return cls(tuple(outputs), tuple(tuple(g) for g in groups))

    @property
    def arity(self) -> Tuple[int, int]:
        return (len(self.outputs), sum(len(g) for g in self.groups))

    def to_text(self) -> str:
        parts = []
        for out, group in zip(self.outputs, self.groups):
            parts.append(str(out))
            parts.append("(" + ",".join(str(i) for i in group) + ")")
        return "(" + ", ".join(parts) + ")"

    def to_dict(self) -> Dict[str, Any]:
        return {"outputs": list(self.outputs), "groups": [list(g) for g in self.groups]}


def realizable(ell: int, n_inputs: int) -> bool:
    """Arities carried by trees with at least one vertex, except (2;0)."""
    return ell >= 1 and ell + n_inputs >= 3 and (ell, n_inputs) != (2, 0)


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_sequences(ell: int, n_inputs: int) -> List[SequenceS]:
    """
    All sequences of arity (ell; n_inputs).

    Example:
        ```python
        len(enumerate_sequences(1, 2))  # 2
        ```
    """
    if ell < 0 or n_inputs < 0:
        raise ValueError(f"Arity must be non-negative, got ({ell};{n_inputs})")
    if not realizable(ell, n_inputs):
        return []
    found = []
    for rest in permutations(range(2, ell + 1)):
        outputs = (1,) + rest
        for tau in permutations(range(1, n_inputs + 1)):
            for sizes in _compositions(n_inputs, ell):
                groups, pos = [], 0
                for size in sizes:
                    groups.append(tuple(tau[pos : pos + size]))
                    pos += size
                found.append(SequenceS(outputs, tuple(groups)))
    return found


def sequence_count(ell: int, n_inputs: int) -> int:
    """(ell - 1)! N! C(N + ell - 1, ell - 1) on realizable arities."""
    if not realizable(ell, n_inputs):
        return 0
    return factorial(ell - 1) * factorial(n_inputs) * comb(n_inputs + ell - 1, ell - 1)
