"""
Tests for tree and graph enumeration.
"""

import pytest

from src.diagrams import enumerate_graphs, enumerate_trees, genus_generators, tree_shapes


# ============================================================================
# TREE TESTS
# ============================================================================


def test_single_vertex_shapes():
    shapes = tree_shapes(1)
    assert len(shapes) == 3
    assert sorted(s.arity for s in shapes) == [(1, 2), (2, 1), (3, 0)]


def test_no_shapes_without_vertices():
    assert tree_shapes(0) == ()


@pytest.mark.parametrize(
    "arity,expected",
    [((1, 2), 2), ((2, 1), 2), ((3, 0), 2), ((1, 3), 12), ((2, 2), 20)],
)
def test_tree_counts(arity, expected):
    assert len(enumerate_trees(*arity)) == expected


@pytest.mark.parametrize("arity", [(2, 0), (1, 1), (0, 2)])
def test_arities_without_trees(arity):
    assert enumerate_trees(*arity) == []


def test_trees_are_canonical_and_labeled():
    for tree in enumerate_trees(1, 3):
        assert tree == tree.canonical()
        assert tree.genus == 0
        assert tree.labeled
        assert tree.arity == (1, 3)


def test_trees_rejects_negative_arity():
    with pytest.raises(ValueError, match="non-negative"):
        enumerate_trees(1, -1)


# ============================================================================
# GRAPH TESTS
# ============================================================================


class TestGenusGraphs:
    """Graphs with extra edges."""

    def test_generators(self):
        generators = genus_generators()
        assert len(generators) == 4
        assert all(g.genus == 1 and g.n_vertices == 2 for g in generators)
        assert all(g.parallel_edges() for g in generators)
        assert sum(1 for g in generators if g.type_counts()["psi"] == 1) == 2

    def test_single_vertex_has_no_genus(self):
        assert enumerate_graphs(1, genus=1) == []

    def test_genus_zero_gives_shapes(self):
        assert enumerate_graphs(2, genus=0) == list(tree_shapes(1)) + list(tree_shapes(2))

    def test_graphs_are_distinct(self):
        graphs = enumerate_graphs(3, genus=1)
        assert len(graphs) == len(set(graphs))
        assert all(g.genus == 1 for g in graphs)

    def test_rejects_negative_genus(self):
        with pytest.raises(ValueError, match="non-negative"):
            enumerate_graphs(2, genus=-1)
