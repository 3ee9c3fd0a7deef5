"""
Exhaustive enumeration of trees and higher genus graphs.

Tree shapes grow by grafting a new vertex onto a leg; every tree with at least
two vertices has a vertex carrying a single internal edge, so all shapes are
reached. Graphs of genus g are shapes with g extra edges joining an output
leg to an input leg.
"""

from functools import lru_cache
from itertools import permutations
from typing import List, Tuple

import structlog

from src.diagrams.graph_term import GraphTerm, Slot, Vertex, is_acyclic, relabel_legs

logger = structlog.get_logger(__name__)

_LEG_PAIRS: Tuple[Tuple[Slot, Slot], ...] = (
    (("o", 0), ("o", 0)),
    (("o", 0), ("i", 0)),
    (("i", 0), ("o", 0)),
    (("i", 0), ("i", 0)),
)

_SINGLE_VERTICES: Tuple[Vertex, ...] = (
    (("o", 0), ("i", 0), ("i", 0)),
    (("o", 0), ("o", 0), ("i", 0)),
    (("o", 0), ("o", 0), ("o", 0)),
)


def _next_edge(vertices: Tuple[Vertex, ...]) -> int:
    labels = [label for v in vertices for kind, label in v if kind in (">", "<")]
    return max(labels) + 1 if labels else 0


def _grafts(shape: GraphTerm) -> List[GraphTerm]:
    grown = []
    edge = _next_edge(shape.vertices)
    for k, s in shape.leg_darts():
        kind, _ = shape.vertices[k][s]
        here = (">", edge) if kind == "o" else ("<", edge)
        there = ("<", edge) if kind == "o" else (">", edge)
        for a, b in _LEG_PAIRS:
            new_vertex = (there, a, b)
            if sum(1 for kd, _ in new_vertex if kd in ("o", ">")) == 0:
                continue
            vertices = list(shape.vertices)
            vertex = list(vertices[k])
            vertex[s] = here
            vertices[k] = tuple(vertex)
            vertices.append(new_vertex)
            grown.append(GraphTerm(tuple(vertices)))
    return grown


@lru_cache(maxsize=None)
def tree_shapes(n_vertices: int) -> Tuple[GraphTerm, ...]:
    """Trees with unlabeled legs, one per isomorphism class."""
    if n_vertices < 1:
        return ()
    if n_vertices == 1:
        return tuple(sorted((GraphTerm((v,)).canonical() for v in _SINGLE_VERTICES), key=_key))
    found = {g.canonical() for shape in tree_shapes(n_vertices - 1) for g in _grafts(shape)}
    return tuple(sorted(found, key=_key))


def _key(term: GraphTerm):
    return term.vertices


def enumerate_trees(ell: int, n_inputs: int) -> List[GraphTerm]:
    """
    Labeled trees of arity (ell; n_inputs), in canonical form.

    A tree with v trivalent vertices has v + 2 legs, so the arity fixes v.

    Example:
        ```python
        len(enumerate_trees(1, 2))  # 2: the two orders of nu's inputs
        ```
    """
    if ell < 0 or n_inputs < 0:
        raise ValueError(f"Arity must be non-negative, got ({ell};{n_inputs})")
    n_vertices = ell + n_inputs - 2
    found = set()
    for shape in tree_shapes(n_vertices):
        if shape.arity != (ell, n_inputs):
            continue
        for outs in permutations(range(1, ell + 1)):
            for ins in permutations(range(1, n_inputs + 1)):
                found.add(relabel_legs(shape, outs, ins).canonical())
    trees = sorted(found, key=_key)
    logger.debug("trees_enumerated", ell=ell, inputs=n_inputs, count=len(trees))
    return trees


def _joins(graph: GraphTerm) -> List[GraphTerm]:
    joined = []
    edge = _next_edge(graph.vertices)
    darts = graph.leg_darts()
    for k, s in darts:
        if graph.vertices[k][s][0] != "o":
            continue
        for m, r in darts:
            if graph.vertices[m][r][0] != "i" or m == k:
                continue
            vertices = [list(v) for v in graph.vertices]
            vertices[k][s] = (">", edge)
            vertices[m][r] = ("<", edge)
            table = tuple(tuple(v) for v in vertices)
            if is_acyclic(table):
                joined.append(GraphTerm(table))
    return joined


def enumerate_graphs(max_vertices: int, genus: int = 1) -> List[GraphTerm]:
    """
    Connected graphs of the given genus with 1..max_vertices vertices.

    Legs are unlabeled; one graph per isomorphism class.
    """
    if genus < 0:
        raise ValueError(f"Genus must be non-negative, got {genus}")
    graphs: List[GraphTerm] = []
    for v in range(1, max_vertices + 1):
        layer = set(tree_shapes(v))
        for _ in range(genus):
            layer = {g.canonical() for shape in layer for g in _joins(shape)}
        graphs.extend(sorted(layer, key=_key))
    logger.debug("graphs_enumerated", max_vertices=max_vertices, genus=genus, count=len(graphs))
    return graphs


def genus_generators() -> List[GraphTerm]:
    """The two-vertex graphs of genus one: omega or psi feeding nu twice."""
    return enumerate_graphs(2, genus=1)
