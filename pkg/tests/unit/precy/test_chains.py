"""
Tests for normalized Hochschild chains and the rational HH table.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.loop_algebra import LoopAlgebra
from src.precy import HochschildChain, boundary, cochain_degree, hh_class_table
from src.utils.exceptions import TruncationOverflow


# ============================================================================
# FIXTURES
# ============================================================================


@pytest.fixture
def H():
    return LoopAlgebra(n=2, D=10)


@pytest.fixture
def H3():
    return LoopAlgebra(n=3, D=10)


# ============================================================================
# CONSTRUCTION TESTS
# ============================================================================


def test_basis_and_degree(H, H3):
    assert HochschildChain.basis(H, 0, (1,)).degree() == 2
    assert HochschildChain.basis(H, 3).degree() == 3
    assert HochschildChain.basis(H3, 1, (1,)).degree() == 5
    assert HochschildChain.basis(H3, 0, (1, 2)).length() == 2


def test_rejects_unit_bar_letter(H):
    with pytest.raises(ValueError, match="normalized"):
        HochschildChain(H, {(1, (0,)): 1})


def test_rejects_overflow(H):
    with pytest.raises(TruncationOverflow):
        HochschildChain.basis(H, 11)


def test_mixed_degree_is_rejected(H):
    x = HochschildChain.basis(H, 1) + HochschildChain.basis(H, 2)
    with pytest.raises(ValueError, match="not homogeneous"):
        x.degree()


def test_linear_structure(H):
    x = HochschildChain.basis(H, 1, (2,))
    assert (x + x.scale(-1)).is_zero()
    assert x.scale(3).terms == {(1, (2,)): 3}


def test_to_str_and_to_dict(H):
    x = HochschildChain.basis(H, 2, (1,)).scale(2) + HochschildChain.basis(H, 0, (3,))
    assert x.to_str() == "1[t^3] + 2*t^2[t]"
    assert x.to_dict()["terms"][0] == {"a0": 0, "bar": [3], "coeff": "1"}


# ============================================================================
# BOUNDARY TESTS
# ============================================================================


def test_zero_chains_are_cycles(H):
    assert boundary(HochschildChain.basis(H, 4)).is_zero()


def test_boundary_depends_on_parity(H, H3):
    # n = 2: t[t] -> t^2 + t^2, so t^2 is a boundary
    assert boundary(HochschildChain.basis(H, 1, (1,))).terms == {(2, ()): 2}
    # n = 3: every letter is even and t[t] is a cycle
    assert boundary(HochschildChain.basis(H3, 1, (1,))).is_zero()


def test_boundary_of_two_chain(H3):
    x = HochschildChain.basis(H3, 0, (1, 2))
    # 1[t|t^2] -> t[t^2] - 1[t^3] + t^2[t]
    assert boundary(x).terms == {(1, (2,)): 1, (0, (3,)): -1, (2, (1,)): 1}


@st.composite
def chains(draw):
    n = draw(st.sampled_from([2, 3, 4]))
    H = LoopAlgebra(n=n, D=12)
    x = HochschildChain(H)
    for _ in range(draw(st.integers(1, 3))):
        k = draw(st.integers(1, 3))
        bar = tuple(draw(st.lists(st.integers(1, 2), min_size=k, max_size=k)))
        x = x + HochschildChain.basis(H, draw(st.integers(0, 2)), bar).scale(
            draw(st.integers(-2, 2))
        )
    return x


@settings(max_examples=50, deadline=None)
@given(x=chains())
def test_boundary_squares_to_zero(x):
    assert boundary(boundary(x)).is_zero()


# ============================================================================
# HOCHSCHILD HOMOLOGY TABLE TESTS
# ============================================================================


def test_odd_table():
    table = hh_class_table(3, degree_max=5)
    assert [(c.degree, c.representative.to_str()) for c in table] == [
        (0, "1"),
        (2, "t"),
        (3, "1[t]"),
        (4, "t^2"),
        (5, "t[t]"),
    ]


def test_even_table():
    table = hh_class_table(2, degree_max=4)
    assert [(c.degree, c.representative.to_str()) for c in table] == [
        (0, "1"),
        (1, "t"),
        (2, "1[t]"),
        (3, "t^3"),
        (4, "t^2[t]"),
    ]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_representatives_are_cycles(n):
    table = hh_class_table(n, degree_max=3 * n)
    assert table
    assert all(c.is_cycle for c in table)


def test_even_table_contains_top_pair():
    degrees = {c.degree: c.representative.to_str() for c in hh_class_table(4, degree_max=12)}
    assert degrees[9] == "t^3"
    assert degrees[10] == "t^2[t]"


def test_cochain_degree_shift():
    assert cochain_degree(2, 3) == 1
    assert cochain_degree(3, 0) == -3


def test_table_entry_to_dict():
    entry = hh_class_table(2, degree_max=2)[-1]
    assert entry.to_dict() == {"degree": 2, "representative": "1[t]", "is_cycle": True}
