"""
Relation rewriting on ribbon graphs.

Contracting an internal edge gives a 4-valent vertex with slots c0..c3 in
cyclic order. Its resolutions split the slots into two adjacent pairs,
{c0 c1 | c2 c3} or {c1 c2 | c3 c0}, joined by an edge in either direction,
and every valid resolution is identified with the others up to sign. Flips are
grouped by the arity of the contracted vertex:

    assoc        (1;3)
    nu_omega     (2;2)
    omega_omega  (3;1)
    psi_omega    (4;0)

The ``genus`` relation kills any graph with two edges between the same pair
of vertices. Neither kind of move changes the genus or the arity.
"""

from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np
import structlog

from src.diagrams.graph_term import OUT_KINDS, GraphTerm, is_acyclic, outputs_at
from src.diagrams.sequences import SequenceS
from src.linalg import Ring
from src.utils.exceptions import ConventionError, RewriteError

logger = structlog.get_logger(__name__)

GROUP_BY_OUTPUTS = {1: "assoc", 2: "nu_omega", 3: "omega_omega", 4: "psi_omega"}
FLIP_RELATIONS = tuple(GROUP_BY_OUTPUTS.values())
GENUS = "genus"
RELATIONS = FLIP_RELATIONS + (GENUS,)


def relation_sign(relation: str, n: int, split_changed: bool) -> int:
    """
    Coefficient c in t = c * t' for one flip.

    Reversing the edge of the same split is an identification. Changing the
    split uses the coefficient of the displayed pair in each group.
    """
    if relation not in FLIP_RELATIONS:
        raise RewriteError(f"No sign for relation {relation!r}")
    if not split_changed:
        return 1
    if relation == "assoc":
        return -1
    if relation == "omega_omega":
        return (-1) ** (n - 1)
    return (-1) ** n


@dataclass(frozen=True)
class Flip:
    """One resolution of the vertex obtained by contracting ``edge``."""

    edge: int
    relation: str
    split_changed: bool
    term: GraphTerm


class SignedTerm(NamedTuple):
    coefficient: int
    term: GraphTerm


def _parallel_to(term: GraphTerm, edge: int) -> Optional[int]:
    for a, b in term.parallel_edges():
        if edge in (a, b):
            return b if a == edge else a
    return None


def flips(term: GraphTerm, edge: int) -> List[Flip]:
    """
    All resolutions of the contracted vertex at ``edge`` other than ``term``.

    Raises:
        RewriteError: If ``edge`` is not an internal edge or has a parallel
            edge (contracting it would make a loop)
    """
    ends = term.edge_ends()
    if edge not in ends:
        raise RewriteError(f"No internal edge e{edge}", {"term": term.to_text()})
    if _parallel_to(term, edge) is not None:
        raise RewriteError(f"Edge e{edge} has a parallel edge", {"term": term.to_text()})

    (u, a), (v, b) = ends[edge]
    U, V = term.vertices[u], term.vertices[v]
    ring4 = [U[(a + 1) % 3], U[(a + 2) % 3], V[(b + 1) % 3], V[(b + 2) % 3]]
    relation = GROUP_BY_OUTPUTS[sum(1 for kind, _ in ring4 if kind in OUT_KINDS)]

    found = []
    for offset in (0, 1):
        x_pair = (ring4[offset], ring4[offset + 1])
        y_pair = (ring4[(offset + 2) % 4], ring4[(offset + 3) % 4])
        for forward in (True, False):
            if offset == 0 and forward:
                continue
            new_x = ((">" if forward else "<", edge),) + x_pair
            new_y = (("<" if forward else ">", edge),) + y_pair
            if outputs_at(new_x) == 0 or outputs_at(new_y) == 0:
                continue
            vertices = list(term.vertices)
            vertices[u] = new_x
            vertices[v] = new_y
            if not is_acyclic(tuple(vertices)):
                continue
            found.append(Flip(edge, relation, offset == 1, GraphTerm(tuple(vertices))))
    return found


def apply_relation(
    term: GraphTerm, relation: str, location: int, choice: int = 0, n: int = 2
) -> List[SignedTerm]:
    """
    Rewrite ``term`` by one relation at an internal edge.

    Args:
        term: Graph to rewrite
        relation: One of RELATIONS
        location: Label of the internal edge
        choice: Which resolution to move to when there are several
        n: Sphere dimension entering the signs

    Returns:
        The signed terms whose sum equals ``term``; empty for ``genus``

    Raises:
        RewriteError: If the relation does not match at the location

    Example:
        ```python
        left = GraphTerm.parse("v0=[<e0,i3,o1] v1=[>e0,i1,i2]")
        [(c, right)] = apply_relation(left, "assoc", 0)
        c  # -1
        ```
    """
    if relation not in RELATIONS:
        raise RewriteError(f"Unknown relation {relation!r}; expected one of {list(RELATIONS)}")
    if relation == GENUS:
        if location not in term.edge_ends():
            raise RewriteError(f"No internal edge e{location}", {"term": term.to_text()})
        if _parallel_to(term, location) is None:
            raise RewriteError(
                f"Edge e{location} has no parallel edge", {"term": term.to_text()}
            )
        return []

    alternatives = flips(term, location)
    if alternatives and alternatives[0].relation != relation:
        raise RewriteError(
            f"Relation {relation} does not match at e{location}; "
            f"the contracted vertex is of kind {alternatives[0].relation}",
            {"term": term.to_text()},
        )
    if not alternatives:
        raise RewriteError(
            f"Relation {relation} does not match at e{location}; no other resolution",
            {"term": term.to_text()},
        )
    if not 0 <= choice < len(alternatives):
        raise RewriteError(f"Choice {choice} out of range; {len(alternatives)} resolutions")
    flip = alternatives[choice]
    return [SignedTerm(relation_sign(relation, n, flip.split_changed), flip.term)]


def neighbours(term: GraphTerm) -> List[Flip]:
    parallel = {e for pair in term.parallel_edges() for e in pair}
    found = []
    for edge in term.edges():
        if edge not in parallel:
            found.extend(flips(term, edge))
    return found


# ============================================================================
# Normal forms of trees
# ============================================================================


@dataclass
class NormalForm:
    """
    term = coefficient * representative.

    ``conflict`` is a flip whose sign disagrees with the signs already
    propagated through the component; such a component contains t = -t and
    its coefficient is zero unless the ring has characteristic 2.
    """

    term: GraphTerm
    representative: GraphTerm
    coefficient: Any
    component_size: int
    ring: Ring
    conflict: Optional[Tuple[GraphTerm, GraphTerm]] = None

    @property
    def coherent(self) -> bool:
        return self.conflict is None

    @property
    def sequence(self) -> Optional[SequenceS]:
        return self.representative.sequence() if self.representative.labeled else None

    def to_dict(self) -> Dict[str, Any]:
        seq = self.sequence
        return {
            "term": self.term.to_text(),
            "representative": self.representative.to_text(),
            "coefficient": self.ring.to_json(self.coefficient),
            "component_size": self.component_size,
            "coherent": self.coherent,
            "conflict": [g.to_text() for g in self.conflict] if self.conflict else None,
            "sequence": seq.to_dict() if seq is not None else None,
        }


def normal_form(
    term: GraphTerm,
    n: int = 2,
    ring: Optional[Ring] = None,
    seed: Optional[int] = None,
    max_vertices: int = 6,
) -> NormalForm:
    """
    Rewrite a tree to the smallest canonical tree it is identified with.

    Every tree reachable by flips is visited, so the representative does not
    depend on the order of the moves; ``seed`` shuffles that order. Signs are
    propagated from the term and every flip of the component is checked
    against them, including flips back to an already visited tree. When one
    disagrees the component identifies t with -t: the coefficient is zero
    outside characteristic 2 and the offending pair is kept in ``conflict``.

    Args:
        term: Tree to normalize
        n: Sphere dimension entering the signs
        ring: Coefficient ring (defaults to Q)
        seed: Optional shuffle of the exploration order
        max_vertices: Size bound of the search

    Raises:
        ValueError: If ``term`` has positive genus
        RewriteError: If ``term`` exceeds the size bound
        ConventionError: If a flip changed the boundary sequence
    """
    if term.genus != 0:
        raise ValueError(f"Normal forms are defined on trees, got genus {term.genus}")
    if term.n_vertices > max_vertices:
        raise RewriteError(
            f"Term has {term.n_vertices} vertices; the bound is {max_vertices}",
            {"term": term.to_text()},
        )
    ring = ring or Ring.rational()
    rng = np.random.default_rng(seed) if seed is not None else None

    start = term.canonical()
    signs: Dict[GraphTerm, int] = {start: 1}
    conflict: Optional[Tuple[GraphTerm, GraphTerm]] = None
    queue = deque([start])
    while queue:
        current = queue.popleft()
        moves = neighbours(current)
        if rng is not None:
            moves = [moves[k] for k in rng.permutation(len(moves))]
        for flip in moves:
            nxt = flip.term.canonical()
            # current = s * nxt, so nxt carries sign(current) * s
            sign = signs[current] * relation_sign(flip.relation, n, flip.split_changed)
            if nxt not in signs:
                signs[nxt] = sign
                queue.append(nxt)
            elif signs[nxt] != sign and conflict is None:
                conflict = (current, nxt)

    representative = min(signs, key=lambda g: g.vertices)
    if term.labeled and representative.sequence() != term.sequence():
        raise ConventionError(
            "A flip changed the boundary sequence",
            {"term": term.to_text(), "representative": representative.to_text()},
        )
    coefficient = ring.coerce(signs[representative])
    if conflict is not None:
        logger.warning(
            "flip_signs_disagree",
            term=term.to_text(),
            between=[g.to_text() for g in conflict],
            component_size=len(signs),
        )
        if ring.characteristic != 2:
            coefficient = ring.zero
    return NormalForm(
        term=term,
        representative=representative,
        coefficient=coefficient,
        component_size=len(signs),
        ring=ring,
        conflict=conflict,
    )


# ============================================================================
# Reduction of higher genus terms
# ============================================================================


@dataclass(frozen=True)
class TraceStep:
    """A relation applied at an edge of ``term``."""

    relation: str
    edge: int
    term: GraphTerm

    def to_text(self) -> str:
        return f"{self.relation}@e{self.edge}"

    def to_dict(self) -> Dict[str, Any]:
        return {"relation": self.relation, "edge": self.edge, "term": self.term.to_text()}


def find_reduction(term: GraphTerm, max_states: int = 200_000) -> Optional[List[TraceStep]]:
    """
    Shortest flip sequence from ``term`` to a graph killed by ``genus``.

    Returns:
        The trace ending with the ``genus`` step, or None when no reachable
        graph has parallel edges (always the case for trees)

    Raises:
        RewriteError: If the search visits more than ``max_states`` graphs
    """
    start = term.canonical()
    parent: Dict[GraphTerm, Optional[Tuple[GraphTerm, int, str]]] = {start: None}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        pairs = current.parallel_edges()
        if pairs:
            steps = [TraceStep(GENUS, pairs[0][0], current)]
            node = current
            while parent[node] is not None:
                prev, edge, relation = parent[node]
                steps.append(TraceStep(relation, edge, prev))
                node = prev
            return list(reversed(steps))
        for flip in neighbours(current):
            nxt = flip.term.canonical()
            if nxt not in parent:
                parent[nxt] = (current, flip.edge, flip.relation)
                queue.append(nxt)
                if len(parent) > max_states:
                    raise RewriteError(
                        f"Reduction search exceeded {max_states} states",
                        {"term": term.to_text()},
                    )
    return None
