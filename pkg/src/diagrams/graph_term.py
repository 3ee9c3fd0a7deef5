"""
Directed trivalent ribbon graphs for the dual dioperad.

A vertex is a cyclically ordered triple of slots. Each slot is an external
leg (``o``/``i``) or one end of an internal edge (``>`` leaving the vertex,
``<`` entering it). The number of outgoing slots names the generator:

    1 output, 2 inputs  -> nu     (1;2)
    2 outputs, 1 input  -> omega  (2;1)
    3 outputs           -> psi    (3;0)

Each generator module is two-dimensional, and the two cyclic orders of the
three slots are its two basis elements, so a ribbon graph is a basis term of
the free properad on the dual generators.

Text format, one bracket per vertex:

    v0=[o1,i1,>e0] v1=[<e0,i2,i3]

Legs may be unlabeled (``o``, ``i``), which is how graphs are compared up to
isomorphism only.
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from src.diagrams.sequences import SequenceS

Slot = Tuple[str, int]
Vertex = Tuple[Slot, Slot, Slot]
Dart = Tuple[int, int]

LEG_KINDS = ("o", "i")
EDGE_KINDS = (">", "<")
OUT_KINDS = ("o", ">")
VERTEX_TYPES = {1: "nu", 2: "omega", 3: "psi"}

_VERTEX_RE = re.compile(r"v(\d+)=\[([^\]]*)\]")
_SLOT_RE = re.compile(r"^(?:([oi])(\d*)|([<>])e(\d+))$")


def outputs_at(vertex: Vertex) -> int:
    return sum(1 for kind, _ in vertex if kind in OUT_KINDS)


def slot_text(slot: Slot) -> str:
    kind, label = slot
    if kind in LEG_KINDS:
        return f"{kind}{label}" if label else kind
    return f"{kind}e{label}"


def _parse_slot(text: str) -> Slot:
    match = _SLOT_RE.match(text.strip())
    if match is None:
        raise ValueError(f"Cannot parse slot {text!r}")
    leg, leg_label, edge, edge_label = match.groups()
    if leg:
        return (leg, int(leg_label) if leg_label else 0)
    return (edge, int(edge_label))


@dataclass(frozen=True)
class GraphTerm:
    """
    A connected directed ribbon graph with trivalent vertices.

    Attributes:
        vertices: Slot triples in cyclic order, one per internal vertex

    Raises:
        ValueError: If a vertex is not trivalent, has no output, an edge is
            dangling, legs are repeated, or the graph is disconnected or has
            a directed cycle
    """

    vertices: Tuple[Vertex, ...]

    def __post_init__(self):
        self._validate()

    def _validate(self) -> None:
        if not self.vertices:
            raise ValueError("A graph term needs at least one vertex")
        ends: Dict[int, Dict[str, int]] = {}
        legs: Dict[str, List[int]] = {"o": [], "i": []}
        for k, vertex in enumerate(self.vertices):
            if len(vertex) != 3:
                raise ValueError(f"Vertex {k} has {len(vertex)} slots; vertices are trivalent")
            if outputs_at(vertex) == 0:
                raise ValueError(f"Vertex {k} has no output")
            for kind, label in vertex:
                if kind in LEG_KINDS:
                    legs[kind].append(label)
                elif kind in EDGE_KINDS:
                    if kind in ends.setdefault(label, {}):
                        raise ValueError(f"Edge e{label} has two ends of kind {kind!r}")
                    ends[label][kind] = k
                else:
                    raise ValueError(f"Unknown slot kind {kind!r}")
        for label, pair in ends.items():
            if len(pair) != 2:
                raise ValueError(f"Edge e{label} must have one tail and one head")
            if pair[">"] == pair["<"]:
                raise ValueError(f"Edge e{label} is a loop, which is a directed cycle")

        all_labels = legs["o"] + legs["i"]
        if any(all_labels) and not all(all_labels):
            raise ValueError("Legs must be all labeled or all unlabeled")
        if any(all_labels):
            for kind, labels in legs.items():
                if len(set(labels)) != len(labels):
                    raise ValueError(f"Duplicate {kind}-leg labels {sorted(labels)}")

        arrows = [(pair[">"], pair["<"]) for pair in ends.values()]
        if not _connected(len(self.vertices), arrows):
            raise ValueError("Graph is not connected")
        if not _acyclic(len(self.vertices), arrows):
            raise ValueError("Graph has a directed cycle")

    @classmethod
    def parse(cls, text: str) -> "GraphTerm":
        """
        Read the ``v0=[...] v1=[...]`` notation.

        Example:
            ```python
            t = GraphTerm.parse("v0=[<e0,i3,o1] v1=[>e0,i1,i2]")
            t.arity  # (1, 3)
            ```
        """
        found = _VERTEX_RE.findall(text)
        if not found:
            raise ValueError(f"No vertices in {text!r}")
        indices = [int(k) for k, _ in found]
        if indices != list(range(len(found))):
            raise ValueError(f"Vertices must be numbered v0..v{len(found) - 1} in order")
        vertices = []
        for _, body in found:
            slots = tuple(_parse_slot(part) for part in body.split(",") if part.strip())
            vertices.append(slots)
        return cls(tuple(vertices))

    def to_text(self) -> str:
        return " ".join(
            f"v{k}=[{','.join(slot_text(s) for s in vertex)}]"
            for k, vertex in enumerate(self.vertices)
        )

    def __str__(self) -> str:
        return self.to_text()

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def arity(self) -> Tuple[int, int]:
        """(outputs, inputs) of the external legs."""
        outs = sum(1 for v in self.vertices for kind, _ in v if kind == "o")
        ins = sum(1 for v in self.vertices for kind, _ in v if kind == "i")
        return (outs, ins)

    @property
    def labeled(self) -> bool:
        return any(label for v in self.vertices for kind, label in v if kind in LEG_KINDS)

    def edge_ends(self) -> Dict[int, Tuple[Dart, Dart]]:
        """Edge label -> ((tail vertex, slot), (head vertex, slot))."""
        tails: Dict[int, Dart] = {}
        heads: Dict[int, Dart] = {}
        for k, vertex in enumerate(self.vertices):
            for s, (kind, label) in enumerate(vertex):
                if kind == ">":
                    tails[label] = (k, s)
                elif kind == "<":
                    heads[label] = (k, s)
        return {label: (tails[label], heads[label]) for label in sorted(tails)}

    def edges(self) -> List[int]:
        return sorted(self.edge_ends())

    @property
    def genus(self) -> int:
        """First Betti number of the underlying undirected graph."""
        return len(self.edge_ends()) - self.n_vertices + 1

    def vertex_type(self, k: int) -> str:
        return VERTEX_TYPES[outputs_at(self.vertices[k])]

    def type_counts(self) -> Dict[str, int]:
        counts = {name: 0 for name in VERTEX_TYPES.values()}
        for k in range(self.n_vertices):
            counts[self.vertex_type(k)] += 1
        return counts

    def parallel_edges(self) -> List[Tuple[int, int]]:
        """Pairs of edges joining the same two vertices."""
        by_pair: Dict[Tuple[int, int], List[int]] = {}
        for label, ((u, _), (v, _)) in self.edge_ends().items():
            by_pair.setdefault((min(u, v), max(u, v)), []).append(label)
        pairs = []
        for labels in by_pair.values():
            for a in range(len(labels)):
                for b in range(a + 1, len(labels)):
                    pairs.append((labels[a], labels[b]))
        return sorted(pairs)

    def leg_darts(self) -> List[Dart]:
        return [
            (k, s)
            for k, vertex in enumerate(self.vertices)
            for s, (kind, _) in enumerate(vertex)
            if kind in LEG_KINDS
        ]

    # ------------------------------------------------------------------
    # Canonical form
    # ------------------------------------------------------------------

    def _traverse(self, start: Dart, ends: Dict[int, Tuple[Dart, Dart]]) -> Tuple[Vertex, ...]:
        order = {start[0]: 0}
        entry = {start[0]: start[1]}
        queue = [start[0]]
        edge_names: Dict[int, int] = {}
        code = []
        head = 0
        while head < len(queue):
            k = queue[head]
            head += 1
            r = entry[k]
            slots = []
            for step in range(3):
                kind, label = self.vertices[k][(r + step) % 3]
                if kind in LEG_KINDS:
                    slots.append((kind, label))
                    continue
                if label not in edge_names:
                    edge_names[label] = len(edge_names)
                tail, head_dart = ends[label]
                other = head_dart if kind == ">" else tail
                if other[0] not in order:
                    order[other[0]] = len(queue)
                    entry[other[0]] = other[1]
                    queue.append(other[0])
                slots.append((kind, edge_names[label]))
            code.append(tuple(slots))
        return tuple(code)

    def canonical(self) -> "GraphTerm":
        """
        Canonical representative of the isomorphism class.

        Every traversal anchored at a leg dart is tried and the
        lexicographically smallest code wins; leg labels, when present, are
        part of the code.
        """
        ends = self.edge_ends()
        anchors = self.leg_darts() or [
            (k, s) for k in range(self.n_vertices) for s in range(3)
        ]
        best = min(self._traverse(dart, ends) for dart in anchors)
        return GraphTerm(best)

    def is_isomorphic(self, other: "GraphTerm") -> bool:
        return self.canonical() == other.canonical()

    # ------------------------------------------------------------------
    # Boundary of trees
    # ------------------------------------------------------------------

    def boundary(self) -> List[Slot]:
        """Legs in the order they are met walking once around a tree."""
        if self.genus != 0:
            raise ValueError(f"The boundary reading needs a tree, got genus {self.genus}")
        ends = self.edge_ends()
        start = self.leg_darts()[0]
        k, s = start
        legs: List[Slot] = []
        for _ in range(6 * self.n_vertices + 1):
            kind, label = self.vertices[k][s]
            if kind in LEG_KINDS:
                legs.append((kind, label))
                k, s = k, (s + 1) % 3
            else:
                tail, head = ends[label]
                k, s = head if kind == ">" else tail
                s = (s + 1) % 3
            if (k, s) == start:
                return legs
        raise ValueError("Boundary walk did not close")  # pragma: no cover

    def sequence(self) -> SequenceS:
        """The boundary datum S of a labeled tree."""
        if not self.labeled:
            raise ValueError("Sequences need labeled legs")
        return SequenceS.from_boundary(self.boundary())


def _connected(n_vertices: int, arrows: List[Tuple[int, int]]) -> bool:
    neighbours: Dict[int, List[int]] = {k: [] for k in range(n_vertices)}
    for u, v in arrows:
        neighbours[u].append(v)
        neighbours[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in neighbours[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n_vertices


def _acyclic(n_vertices: int, arrows: List[Tuple[int, int]]) -> bool:
    indegree = [0] * n_vertices
    out: Dict[int, List[int]] = {k: [] for k in range(n_vertices)}
    for u, v in arrows:
        out[u].append(v)
        indegree[v] += 1
    ready = [k for k in range(n_vertices) if indegree[k] == 0]
    done = 0
    while ready:
        u = ready.pop()
        done += 1
        for v in out[u]:
            indegree[v] -= 1
            if indegree[v] == 0:
                ready.append(v)
    return done == n_vertices


def is_acyclic(vertices: Tuple[Vertex, ...]) -> bool:
    """Directed acyclicity of a slot table that may not validate yet."""
    tails: Dict[int, int] = {}
    heads: Dict[int, int] = {}
    for k, vertex in enumerate(vertices):
        for kind, label in vertex:
            if kind == ">":
                tails[label] = k
            elif kind == "<":
                heads[label] = k
    arrows = [(tails[e], heads[e]) for e in tails]
    if any(u == v for u, v in arrows):
        return False
    return _acyclic(len(vertices), arrows)


def relabel_legs(
    term: GraphTerm, outputs: Optional[Tuple[int, ...]], inputs: Optional[Tuple[int, ...]]
) -> GraphTerm:
    """Assign leg labels in slot order; ``None`` for both forgets the labels."""
    if (outputs is None) != (inputs is None):
        raise ValueError("Label both leg kinds or neither")
    it = {"o": iter(outputs or ()), "i": iter(inputs or ())}
    vertices = []
    for vertex in term.vertices:
        slots = []
        for kind, label in vertex:
            if kind in LEG_KINDS:
                slots.append((kind, next(it[kind]) if outputs is not None else 0))
            else:
                slots.append((kind, label))
        vertices.append(tuple(slots))
    return GraphTerm(tuple(vertices))
