"""
Tests for flips, relation application, normal forms and genus reduction.
"""

import pytest

from src.diagrams import (
    GraphTerm,
    apply_relation,
    find_reduction,
    flips,
    normal_form,
    relation_sign,
)
from src.diagrams.rewriting import FLIP_RELATIONS, GENUS
from src.linalg import Ring
from src.utils.exceptions import RewriteError


# ============================================================================
# FIXTURES
# ============================================================================


LEFT_COMB = "v0=[<e0,i3,o1] v1=[>e0,i1,i2]"
RIGHT_COMB = "v0=[<e0,o1,i1] v1=[>e0,i2,i3]"
OMEGA_NU = "v0=[<e0,o1,o2] v1=[>e0,i1,i2]"
DOUBLE_EDGE = "v0=[i1,>e0,>e1] v1=[<e0,<e1,o1]"
TRIANGLE = "v0=[i1,>e0,>e1] v1=[<e0,i2,>e2] v2=[<e1,<e2,o1]"
NU_OMEGA_NU = "v0=[i1,<e0,o1] v1=[>e0,>e1,i2] v2=[<e1,i3,o2]"


@pytest.fixture
def left():
    return GraphTerm.parse(LEFT_COMB)


@pytest.fixture
def right():
    return GraphTerm.parse(RIGHT_COMB)


# ============================================================================
# FLIP TESTS
# ============================================================================


class TestFlips:
    """Resolutions of a contracted edge."""

    def test_associativity_has_one_other_resolution(self, left, right):
        [flip] = flips(left, 0)
        assert flip.relation == "assoc"
        assert flip.split_changed
        assert flip.term.is_isomorphic(right)

    def test_associativity_is_an_involution(self, left, right):
        [flip] = flips(right, 0)
        assert flip.term.is_isomorphic(left)

    def test_nu_omega_resolutions(self):
        t = GraphTerm.parse(OMEGA_NU)
        found = flips(t, 0)
        assert len(found) == 2
        assert all(f.relation == "nu_omega" for f in found)
        assert all(f.term.sequence() == t.sequence() for f in found)
        assert all(f.term.genus == 0 and f.term.arity == (2, 2) for f in found)

    def test_missing_edge(self, left):
        with pytest.raises(RewriteError, match="No internal edge e3"):
            flips(left, 3)

    def test_parallel_edge_is_not_flipped(self):
        with pytest.raises(RewriteError, match="has a parallel edge"):
            flips(GraphTerm.parse(DOUBLE_EDGE), 0)


class TestRelationSign:
    """Coefficients of the displayed relations."""

    def test_associativity(self):
        assert relation_sign("assoc", 2, True) == -1
        assert relation_sign("assoc", 3, True) == -1

    def test_same_split_is_identification(self):
        for relation in FLIP_RELATIONS:
            assert relation_sign(relation, 2, False) == 1

    def test_depends_on_parity_of_n(self):
        assert relation_sign("nu_omega", 2, True) == 1
        assert relation_sign("nu_omega", 3, True) == -1
        assert relation_sign("omega_omega", 2, True) == -1
        assert relation_sign("psi_omega", 3, True) == -1

    def test_unknown(self):
        with pytest.raises(RewriteError, match="No sign"):
            relation_sign(GENUS, 2, True)


# ============================================================================
# APPLY RELATION TESTS
# ============================================================================


class TestApplyRelation:
    """Single rewriting steps."""

    def test_left_comb_to_right_comb(self, left, right):
        [(coefficient, term)] = apply_relation(left, "assoc", 0)
        assert coefficient == -1
        assert term.is_isomorphic(right)
        assert term.sequence() == left.sequence()

    def test_genus_kills_double_edge(self):
        assert apply_relation(GraphTerm.parse(DOUBLE_EDGE), GENUS, 1) == []

    def test_wrong_relation(self, left):
        with pytest.raises(RewriteError, match="does not match"):
            apply_relation(left, "nu_omega", 0)

    def test_genus_needs_parallel_edge(self, left):
        with pytest.raises(RewriteError, match="no parallel edge"):
            apply_relation(left, GENUS, 0)

    def test_unknown_relation(self, left):
        with pytest.raises(RewriteError, match="Unknown relation"):
            apply_relation(left, "commute", 0)

    def test_choice_out_of_range(self, left):
        with pytest.raises(RewriteError, match="out of range"):
            apply_relation(left, "assoc", 0, choice=5)

    def test_sign_follows_n(self):
        t = GraphTerm.parse(OMEGA_NU)
        assert apply_relation(t, "nu_omega", 0, n=2)[0].coefficient == 1
        assert apply_relation(t, "nu_omega", 0, n=3)[0].coefficient == -1


# ============================================================================
# NORMAL FORM TESTS
# ============================================================================


class TestNormalForm:
    """Canonical representatives of trees."""

    def test_single_vertex_is_normal(self):
        t = GraphTerm.parse("v0=[i1,i2,o1]")
        nf = normal_form(t)
        assert nf.representative == t.canonical()
        assert nf.coefficient == 1
        assert nf.component_size == 1

    def test_combs_share_a_representative(self, left, right):
        a, b = normal_form(left), normal_form(right)
        assert a.representative == b.representative
        assert a.coefficient * b.coefficient == -1
        assert a.component_size == 2

    def test_sequence_is_kept(self, left):
        assert normal_form(left).sequence == left.sequence()

    def test_component_of_two_adjacent_outputs(self):
        nf = normal_form(GraphTerm.parse(OMEGA_NU), ring=Ring.prime(2))
        assert nf.component_size == 3

    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
    def test_rewrite_order_does_not_matter(self, seed):
        f2 = Ring.prime(2)
        t = GraphTerm.parse("v0=[<e0,o1,i2] v1=[>e0,i1,o2]")
        reference = normal_form(t, ring=f2)
        shuffled = normal_form(t, ring=f2, seed=seed)
        assert shuffled.representative == reference.representative
        assert shuffled.coefficient == reference.coefficient

    def test_combs_are_coherent(self, left):
        nf = normal_form(left)
        assert nf.coherent
        assert nf.conflict is None

    def test_disagreeing_signs_give_zero(self):
        nf = normal_form(GraphTerm.parse(NU_OMEGA_NU))
        assert not nf.coherent
        assert nf.coefficient == 0
        payload = nf.to_dict()
        assert payload["coherent"] is False
        assert len(payload["conflict"]) == 2

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_zero_does_not_depend_on_order(self, seed):
        t = GraphTerm.parse(NU_OMEGA_NU)
        reference = normal_form(t)
        shuffled = normal_form(t, seed=seed)
        assert shuffled.representative == reference.representative
        assert shuffled.coefficient == 0
        assert not shuffled.coherent

    def test_characteristic_two_ignores_sign_conflicts(self):
        nf = normal_form(GraphTerm.parse(NU_OMEGA_NU), ring=Ring.prime(2))
        assert not nf.coherent
        assert nf.coefficient == 1

    def test_rejects_higher_genus(self):
        with pytest.raises(ValueError, match="defined on trees"):
            normal_form(GraphTerm.parse(DOUBLE_EDGE))

    def test_size_bound(self, left):
        with pytest.raises(RewriteError, match="the bound is 1"):
            normal_form(left, max_vertices=1)

    def test_to_dict(self, left):
        payload = normal_form(left).to_dict()
        assert payload["term"] == LEFT_COMB
        assert payload["coefficient"] in ("1", "-1")
        assert payload["sequence"] == {"outputs": [1], "groups": [[1, 2, 3]]}


# ============================================================================
# REDUCTION TESTS
# ============================================================================


class TestFindReduction:
    """Higher genus graphs rewrite to a killed graph."""

    def test_double_edge_is_killed_directly(self):
        steps = find_reduction(GraphTerm.parse(DOUBLE_EDGE))
        assert [s.relation for s in steps] == [GENUS]
        assert steps[0].to_text().startswith("genus@e")

    def test_triangle_needs_one_flip(self):
        steps = find_reduction(GraphTerm.parse(TRIANGLE))
        assert len(steps) == 2
        assert steps[0].relation in FLIP_RELATIONS
        assert steps[-1].relation == GENUS
        assert all(s.term.genus == 1 for s in steps)

    def test_trees_never_reduce(self, left):
        assert find_reduction(left) is None
        assert find_reduction(GraphTerm.parse(OMEGA_NU)) is None

    def test_trace_serializes(self):
        steps = find_reduction(GraphTerm.parse(TRIANGLE))
        payload = steps[0].to_dict()
        assert set(payload) == {"relation", "edge", "term"}
