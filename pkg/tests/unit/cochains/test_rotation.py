"""
Tests for the cyclic action on higher cochains.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.cochains import (
    HigherCochain,
    isotypic_check,
    isotypic_coordinates,
    norm_map,
    orbit_sum,
    rotate,
    symmetrize,
    tau,
    tau_power,
)
from src.cochains.rotation import orbit, orbit_representative
from src.linalg import Ring
from src.loop_algebra import LoopAlgebra
from src.utils.exceptions import FieldRefusedError


# ============================================================================
# FIXTURES
# ============================================================================


@pytest.fixture
def H():
    return LoopAlgebra(n=2, D=10)


@pytest.fixture
def sector_one(H):
    """t (x) t on one input t^3 in sector 1."""
    return HigherCochain.basis(H, ((1, 1), ((3,), ())))


@st.composite
def cochains(draw):
    n = draw(st.sampled_from([2, 3, 4]))
    ell = draw(st.integers(1, 3))
    H = LoopAlgebra(n=n, D=10)
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        outs = tuple(draw(st.lists(st.integers(0, 3), min_size=ell, max_size=ell)))
        sectors = tuple(
            tuple(draw(st.lists(st.integers(1, 3), max_size=2))) for _ in range(ell)
        )
        terms[(outs, sectors)] = draw(st.integers(-3, 3))
    return HigherCochain(H, ell, terms)


# ============================================================================
# ROTATION TESTS
# ============================================================================


def test_rotation_moves_input_to_sector_two(H, sector_one):
    rotated = rotate(sector_one)
    # tau sign (-1)^1 and twist (-1)^{(n-1)(l-1)} = -1 cancel for n = 2
    assert rotated == HigherCochain.basis(H, ((1, 1), ((), (3,))))


def test_rotation_sign_n3():
    H = LoopAlgebra(n=3, D=10)
    c = HigherCochain.basis(H, ((1, 1), ((3,), ())))
    assert rotate(c) == HigherCochain.basis(H, ((1, 1), ((), (3,))))


def test_rotation_is_trivial_for_one_output(H):
    c = HigherCochain(H, 1, {((3,), ((1, 2),)): 1})
    assert rotate(c) == c
    assert isotypic_check(c)


@settings(max_examples=50, deadline=None)
@given(c=cochains())
def test_rotate_has_order_ell(c):
    current = c
    for _ in range(c.ell):
        current = rotate(current)
    assert current == c


@settings(max_examples=50, deadline=None)
@given(c=cochains())
def test_tau_power_wraps(c):
    assert tau_power(c, c.ell) == c
    assert tau_power(c, 1) == tau(c)


# ============================================================================
# SYMMETRIZATION TESTS
# ============================================================================


@settings(max_examples=50, deadline=None)
@given(c=cochains())
def test_symmetrize_is_idempotent_projection(c):
    s = symmetrize(c)
    assert isotypic_check(s)
    assert symmetrize(s) == s


def test_symmetrize_refused_over_f2():
    H = LoopAlgebra(n=2, D=10, ring=Ring.prime(2))
    c = HigherCochain.basis(H, ((1, 1), ((3,), ())))
    with pytest.raises(FieldRefusedError, match="not invertible"):
        symmetrize(c)


def test_symmetrize_allowed_over_f2_for_odd_ell():
    H = LoopAlgebra(n=2, D=10, ring=Ring.prime(2))
    c = HigherCochain.basis(H, ((1, 1, 0), ((1,), (), ())))
    assert isotypic_check(symmetrize(c))


def test_norm_map_lands_in_isotypic(sector_one):
    assert isotypic_check(norm_map(sector_one))
    assert not isotypic_check(sector_one)


# ============================================================================
# ORBIT TESTS
# ============================================================================


def test_orbit_of_symmetric_key(H):
    members, closing = orbit(((1, 1), ((), ())), H.n)
    assert len(members) == 1
    # t (x) t with t odd: the swap carries a sign
    assert closing == 1
    assert orbit_sum(H, ((1, 1), ((), ()))) is None


def test_orbit_sum_is_isotypic(H):
    c = orbit_sum(H, ((2, 0, 1), ((1,), (), (2,))))
    assert c is not None
    assert len(c) == 3
    assert isotypic_check(c)
    rep = orbit_representative(((2, 0, 1), ((1,), (), (2,))), H.n)
    assert c.coefficient(rep) == H.ring.one
    assert isotypic_coordinates(c) == {rep: H.ring.one}


def test_orbit_sum_over_f2():
    H = LoopAlgebra(n=2, D=10, ring=Ring.prime(2))
    c = orbit_sum(H, ((1, 1), ((3,), ())))
    assert c is not None
    assert isotypic_check(c)


def test_odd_closing_orbit_survives_in_characteristic_two():
    H = LoopAlgebra(n=2, D=10, ring=Ring.prime(2))
    c = orbit_sum(H, ((1, 1), ((), ())))
    assert c is not None
    assert len(c) == 1
    assert isotypic_check(c)
