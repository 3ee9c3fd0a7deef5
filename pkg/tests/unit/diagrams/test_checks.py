"""
Tests for the bounded dioperad checks: basis dimensions two ways and the
genus-vanishing sweep.
"""

import pytest

from src.diagrams import basis_dimension, dimension_table, genus_vanishing_check
from src.utils.exceptions import RewriteError


# ============================================================================
# DIMENSION TESTS
# ============================================================================


class TestBasisDimension:
    """Sequences against trees modulo flips."""

    def test_nu_component(self):
        report = basis_dimension(1, 2)
        assert report.sequences == 2
        assert report.trees == 2
        assert report.rank == 0
        assert report.dimension == 2

    def test_empty_component(self):
        report = basis_dimension(2, 0)
        assert report.trees == 0
        assert report.dimension == 0
        assert report.agree

    def test_associativity_component(self):
        report = basis_dimension(1, 3)
        assert report.trees == 12
        assert report.relations == 6
        assert report.rank == 6
        assert report.dimension == 6

    def test_two_outputs_two_inputs(self):
        report = basis_dimension(2, 2)
        assert report.trees == 20
        assert report.dimension == report.sequences == 6

    @pytest.mark.parametrize(
        "arity", [(1, 2), (2, 1), (3, 0), (1, 3), (2, 2), (3, 1), (4, 0), (1, 4), (2, 3)]
    )
    def test_routes_agree(self, arity):
        assert basis_dimension(*arity).agree

    def test_to_dict(self):
        payload = basis_dimension(1, 3).to_dict()
        assert payload["arity"] == [1, 3]
        assert payload["agree"] is True
        assert payload["dimension"] == 6

    def test_bound(self):
        with pytest.raises(RewriteError, match="exceeds the bound of 4 legs"):
            basis_dimension(2, 3, max_legs=4)

    def test_rejects_negative(self):
        with pytest.raises(ValueError, match="non-negative"):
            basis_dimension(-1, 3)


def test_dimension_table_small():
    table = dimension_table(4)
    arities = [(r.ell, r.n_inputs) for r in table]
    assert (1, 3) in arities and (4, 0) in arities
    assert all(r.agree for r in table)


@pytest.mark.slow
def test_dimension_table_six_legs():
    assert all(r.agree for r in dimension_table(6))


# ============================================================================
# GENUS TESTS
# ============================================================================


class TestGenusVanishing:
    """Every graph of positive genus reduces to zero."""

    def test_generators(self):
        report = genus_vanishing_check(2)
        assert report.checked == 4
        assert report.longest_trace == 1
        assert report.by_vertices == {2: 4}

    def test_one_vertex_has_nothing(self):
        report = genus_vanishing_check(1)
        assert report.checked == 0
        assert report.longest_trace == 0

    def test_three_vertices(self):
        report = genus_vanishing_check(3)
        assert report.checked > 4
        assert all(steps[-1].relation == "genus" for _, steps in report.traces)

    def test_to_dict(self):
        payload = genus_vanishing_check(2).to_dict()
        assert payload["checked"] == 4
        assert payload["by_vertices"] == {"2": 4}
        assert all(t["steps"][-1].startswith("genus@") for t in payload["traces"])

    def test_bound(self):
        with pytest.raises(RewriteError, match="exceeds 6"):
            genus_vanishing_check(7)

    def test_rejects_genus_zero(self):
        with pytest.raises(ValueError, match="Genus must be >= 1"):
            genus_vanishing_check(2, genus=0)


@pytest.mark.slow
def test_genus_vanishing_five_vertices():
    report = genus_vanishing_check(5)
    assert report.checked == sum(report.by_vertices.values())
