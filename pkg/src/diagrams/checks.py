"""
Bounded checks of the dual dioperad.

- ``basis_dimension`` counts each arity twice: boundary sequences, and the
  rank of trees modulo flips.
- ``genus_vanishing_check`` reduces every graph of positive genus to zero.

Both abort with ConventionError on a mismatch or a graph that does not
reduce. The rank route runs over F2, where every flip is the two-term
identification t = t', so it does not depend on the sign table.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import structlog

from src.diagrams.enumeration import enumerate_graphs, enumerate_trees
from src.diagrams.graph_term import GraphTerm
from src.diagrams.rewriting import TraceStep, find_reduction, neighbours
from src.diagrams.sequences import enumerate_sequences
from src.linalg import Ring, SparseMatrix, rank
from src.utils.exceptions import ConventionError, RewriteError

logger = structlog.get_logger(__name__)


@dataclass
class DimensionReport:
    """Both counts of one arity component."""

    ell: int
    n_inputs: int
    sequences: int
    trees: int
    relations: int
    rank: int

    @property
    def dimension(self) -> int:
        return self.trees - self.rank

    @property
    def agree(self) -> bool:
        return self.dimension == self.sequences

    def to_dict(self) -> Dict[str, Any]:
        return {
            "arity": [self.ell, self.n_inputs],
            "sequences": self.sequences,
            "trees": self.trees,
            "relations": self.relations,
            "rank": self.rank,
            "dimension": self.dimension,
            "agree": self.agree,
        }


def basis_dimension(ell: int, n_inputs: int, max_legs: int = 7) -> DimensionReport:
    """
    Dimension of the arity (ell; n_inputs) component, computed two ways.

    Args:
        ell: Number of outputs
        n_inputs: Number of inputs
        max_legs: Bound on ell + n_inputs

    Returns:
        DimensionReport whose routes agree

    Raises:
        RewriteError: If the arity exceeds the bound
        ConventionError: If the two routes disagree, or a tree reads a
            sequence that is not enumerated

    Example:
        ```python
        basis_dimension(1, 3).dimension  # 6
        ```
    """
    if ell < 0 or n_inputs < 0:
        raise ValueError(f"Arity must be non-negative, got ({ell};{n_inputs})")
    if ell + n_inputs > max_legs:
        raise RewriteError(
            f"Arity ({ell};{n_inputs}) exceeds the bound of {max_legs} legs",
            {"ell": ell, "inputs": n_inputs},
        )

    sequences = enumerate_sequences(ell, n_inputs)
    trees = enumerate_trees(ell, n_inputs)
    index = {t: j for j, t in enumerate(trees)}

    unknown = {t.sequence() for t in trees} - set(sequences)
    if unknown:
        raise ConventionError(
            f"Trees of arity ({ell};{n_inputs}) read {len(unknown)} sequences outside the list",
            {"example": sorted(s.to_text() for s in unknown)[0]},
        )

    pairs = set()
    for t in trees:
        for flip in neighbours(t):
            j = index[flip.term.canonical()]
            if j != index[t]:
                pairs.add((min(index[t], j), max(index[t], j)))

    f2 = Ring.prime(2)
    triples = []
    for row, (i, j) in enumerate(sorted(pairs)):
        triples.extend([(row, i, 1), (row, j, 1)])
    relations = SparseMatrix.from_triples(len(pairs), len(trees), triples, f2)
    relation_rank = rank(relations) if pairs else 0

    report = DimensionReport(
        ell=ell,
        n_inputs=n_inputs,
        sequences=len(sequences),
        trees=len(trees),
        relations=len(pairs),
        rank=relation_rank,
    )
    if not report.agree:
        logger.error("dimension_mismatch", **report.to_dict())
        raise ConventionError(
            f"Arity ({ell};{n_inputs}): {report.sequences} sequences but dimension {report.dimension}",
            report.to_dict(),
        )
    logger.info("dimension_checked", ell=ell, inputs=n_inputs, dimension=report.dimension)
    return report


def dimension_table(max_legs: int) -> List[DimensionReport]:
    """basis_dimension for every arity with 1 <= ell and ell + N <= max_legs."""
    return [
        basis_dimension(ell, total - ell, max_legs=max_legs)
        for total in range(max_legs + 1)
        for ell in range(1, total + 1)
    ]


@dataclass
class GenusReport:
    """Reduction traces of every graph of one genus within a vertex bound."""

    max_vertices: int
    genus: int
    traces: List[Tuple[GraphTerm, List[TraceStep]]] = field(default_factory=list)

    @property
    def checked(self) -> int:
        return len(self.traces)

    @property
    def by_vertices(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for term, _ in self.traces:
            counts[term.n_vertices] = counts.get(term.n_vertices, 0) + 1
        return counts

    @property
    def longest_trace(self) -> int:
        return max((len(steps) for _, steps in self.traces), default=0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_vertices": self.max_vertices,
            "genus": self.genus,
            "checked": self.checked,
            "by_vertices": {str(v): c for v, c in sorted(self.by_vertices.items())},
            "longest_trace": self.longest_trace,
            "traces": [
                {"term": term.to_text(), "steps": [s.to_text() for s in steps]}
                for term, steps in self.traces
            ],
        }


def genus_vanishing_check(max_vertices: int, genus: int = 1) -> GenusReport:
    """
    Reduce every graph of the given genus with at most ``max_vertices``
    vertices to zero.

    Raises:
        ValueError: If ``genus`` is not positive
        RewriteError: If the bound exceeds six vertices
        ConventionError: If some graph does not reduce
    """
    if genus < 1:
        raise ValueError(f"Genus must be >= 1, got {genus}")
    if max_vertices > 6:
        raise RewriteError(f"Vertex bound {max_vertices} exceeds 6", {"max_vertices": max_vertices})

    report = GenusReport(max_vertices=max_vertices, genus=genus)
    for term in enumerate_graphs(max_vertices, genus=genus):
        steps = find_reduction(term)
        if steps is None:
            logger.error("genus_term_survives", term=term.to_text())
            raise ConventionError(
                f"Genus-{genus} term {term.to_text()} does not reduce to zero",
                {"term": term.to_text(), "vertices": term.n_vertices},
            )
        report.traces.append((term, steps))
    logger.info(
        "genus_vanishing_checked",
        max_vertices=max_vertices,
        genus=genus,
        checked=report.checked,
        longest_trace=report.longest_trace,
    )
    return report
