"""
Tests for the maps g_(l) from Hochschild chains to l-output cochains.

Support and normalization follow from the shape of the circular diagram. The
closedness and bracket identities depend on every sign agreeing and are
marked slow.
"""

import pytest

from src.cochains import (
    SliceBasis,
    differential,
    differential_matrix,
    isotypic_check,
    rotate,
    symmetrize,
)
from src.cochains.koszul import map_degree, weight
from src.linalg import Solution, solve
from src.loop_algebra import LoopAlgebra
from src.necklace import ConvolutionElement, necklace_bracket
from src.precy import (
    HochschildChain,
    PreCYStructure,
    boundary,
    g_map,
    g_map_basis,
    one_input_per_sector,
)
from src.utils.exceptions import UnsafeTruncationError


# ============================================================================
# FIXTURES
# ============================================================================


@pytest.fixture(scope="module")
def psi():
    return PreCYStructure.sphere(LoopAlgebra(n=2, D=10), input_bound=4)


def chain(structure, a0, bar=()):
    return HochschildChain.basis(structure.algebra, a0, bar)


def is_exact(c, input_bound):
    """True iff the homogeneous cochain c is [mu, -]-exact in the window."""
    key = min(c.terms)
    n = c.algebra.n
    target = SliceBasis.build(c.algebra, c.ell, map_degree(key, n), weight(key), input_bound)
    source = SliceBasis.build(
        c.algebra, c.ell, map_degree(key, n) + 1, weight(key) - 1, input_bound
    )
    result = solve(differential_matrix(source, target), target.coordinates(c))
    return isinstance(result, Solution)


# ============================================================================
# SHAPE TESTS
# ============================================================================


def test_normalization_on_t_inputs(psi):
    g = g_map(psi, 2, chain(psi, 3), input_bound=2)
    one = psi.algebra.ring.one
    assert g.evaluate([[1], [1]]) == {(3, 0): one}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_t_cubed_on_n_inputs(n):
    structure = PreCYStructure.sphere(LoopAlgebra(n=n, D=10), input_bound=2)
    g = g_map(structure, n, chain(structure, 3), input_bound=n)
    assert g.evaluate([[1]] * n) == {(3,) + (0,) * (n - 1): structure.algebra.ring.one}


def test_zero_chain_has_one_input_per_sector(psi):
    g = g_map(psi, 3, chain(psi, 1), input_bound=4)
    assert not g.is_zero()
    assert one_input_per_sector(g)
    assert g.evaluate([[1, 1], [1], []]) == {}


def test_weights(psi):
    for ell in (1, 2, 3):
        assert g_map(psi, ell, chain(psi, 2), input_bound=3).weight() == 2 * ell - 2
    for ell in (2, 3):
        assert g_map(psi, ell, chain(psi, 0, (2,)), input_bound=3).weight() == 2 * ell - 3


def test_one_chain_has_exactly_one_empty_sector(psi):
    g = g_map(psi, 3, chain(psi, 0, (2,)), input_bound=3)
    assert not g.is_zero()
    for key in g.terms:
        assert sorted(len(s) for s in key[1]) == [0, 1, 1]


@pytest.mark.parametrize("a0", [0, 1, 2, 4])
def test_orientation_is_the_same_for_every_chain(psi, a0):
    g = g_map(psi, 3, chain(psi, a0), input_bound=3)
    assert g.evaluate([[1], [1], [1]]) == {(a0, 0, 0): psi.algebra.ring.one}


def test_linearity(psi):
    x = chain(psi, 1).scale(2) + chain(psi, 3)
    lhs = g_map(psi, 2, x, input_bound=3)
    rhs = g_map_basis(psi, 2, 1, (), 3).scale(2) + g_map_basis(psi, 2, 3, (), 3)
    assert lhs == rhs


# ============================================================================
# ERROR TESTS
# ============================================================================


def test_rejects_bad_arguments(psi):
    with pytest.raises(ValueError, match="must be >= 1"):
        g_map(psi, 0, chain(psi, 1), input_bound=2)
    with pytest.raises(ValueError, match="length <= 1"):
        g_map(psi, 2, chain(psi, 0, (1, 1)), input_bound=2)
    other = HochschildChain.basis(LoopAlgebra(n=3, D=10), 1)
    with pytest.raises(ValueError, match="different algebras"):
        g_map(psi, 2, other, input_bound=2)


def test_alpha_bound_is_checked():
    structure = PreCYStructure.sphere(LoopAlgebra(n=2, D=10), input_bound=2)
    with pytest.raises(UnsafeTruncationError, match="alpha was derived up to"):
        g_map(structure, 1, chain(structure, 1), input_bound=4)


# ============================================================================
# IDENTITY TESTS
# ============================================================================


@pytest.mark.slow
@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("a0", [1, 2, 3])
def test_zero_chains_map_to_cocycles(psi, ell, a0):
    g = g_map(psi, ell, chain(psi, a0), input_bound=3)
    assert differential(g, 3).is_zero()


@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 2])
def test_one_chain_image_is_isotypic(psi, k):
    assert isotypic_check(g_map(psi, 3, chain(psi, 0, (k + 1,)), input_bound=4))


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.parametrize("k", [1, 2])
def test_bracket_with_alpha_gives_one_chain_image(psi, k):
    E = 3
    lower = symmetrize(g_map(psi, 2, chain(psi, k + 1), input_bound=E))
    alpha = ConvolutionElement.from_cochain(psi.alpha)
    bracket = necklace_bracket(
        alpha, ConvolutionElement.from_cochain(lower), input_bound=E, levels=[2]
    ).part(3)
    image = g_map(psi, 3, chain(psi, 0, (k + 1,)), input_bound=E)
    assert not image.is_zero()
    assert bracket in (image, -image)


@pytest.mark.slow
@pytest.mark.parametrize("ell", [2, 3])
@pytest.mark.parametrize("bar", [(1, 1), (1, 2), (2, 1)])
def test_boundaries_map_to_exact_cochains(psi, ell, bar):
    E = 3
    x = boundary(chain(psi, 1, bar))
    assert not x.is_zero()
    image = g_map(psi, ell, x, input_bound=E)
    assert differential(image, E).is_zero()
    assert image.is_zero() or is_exact(image, E)


@pytest.mark.slow
@pytest.mark.parametrize(
    "ell,a0,bar,E",
    [(2, 3, (), 2), (3, 1, (), 3), (3, 2, (1,), 3)],
)
def test_rotation_is_cohomologous_to_signed_image(psi, ell, a0, bar, E):
    g = g_map(psi, ell, chain(psi, a0, bar), input_bound=E)
    twist = psi.algebra.ring.sign((psi.algebra.n - 1) * (ell - 1))
    difference = rotate(g) - g.scale(twist)
    assert difference.is_zero() or is_exact(difference, E)


@pytest.mark.slow
def test_rotation_moves_the_chain_letter(psi):
    g = g_map(psi, 3, chain(psi, 2, (1,)), input_bound=3)
    assert not isotypic_check(g)
