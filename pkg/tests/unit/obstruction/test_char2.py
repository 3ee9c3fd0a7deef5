"""
Tests for the characteristic-two deformation and its certificate.

The f-bookkeeping is checked on hand-written tensors; the long sphere runs are
marked slow.
"""

import pytest

from src.cochains import HigherCochain, differential, isotypic_check
from src.linalg import Infeasible, Ring, Solution
from src.loop_algebra import LoopAlgebra
from src.necklace import ConvolutionElement, mc_defect
from src.obstruction import (
    TwistedAlgebra,
    Window,
    char2_nonvanishing_certificate,
    char2_seed,
    displayed_equations,
    extend_char2_deformation,
    f_value,
    reduced_route,
)
from src.obstruction.char2 import f_matches
from src.precy import PreCYStructure
from src.utils.exceptions import InconclusiveWindowError


# ============================================================================
# FIXTURES
# ============================================================================


@pytest.fixture(scope="module")
def F2():
    return Ring.prime(2)


@pytest.fixture(scope="module")
def H2(F2):
    return LoopAlgebra(n=2, D=12, ring=F2)


@pytest.fixture(scope="module")
def sphere2(H2):
    return PreCYStructure.sphere(H2, input_bound=4)


@pytest.fixture(scope="module")
def twisted2(H2):
    return TwistedAlgebra.sphere(H2, Window(input_bound=3, weight_max=6, level_max=4))


# ============================================================================
# F-BOOKKEEPING TESTS
# ============================================================================


class TestFValues:
    """f_i(j) on hand-enumerated tensors."""

    def test_two_outputs(self):
        H = LoopAlgebra(n=2, D=10)
        gamma = HigherCochain(
            H,
            2,
            {
                ((1, 1), ((), (1,))): 1,
                ((0, 2), ((), (1,))): 1,
                ((2, 0), ((1,), ())): 3,
                ((1, 0), ((), (1, 1))): 5,
            },
        )
        assert f_value(gamma, 1, 1) == 1
        assert f_value(gamma, 1, 0) == 1
        assert f_value(gamma, 1, 2) == 0
        assert f_value(gamma, 2, 2) == 3
        assert f_value(gamma, 2, 0) == 0

    def test_sector_offset(self):
        H = LoopAlgebra(n=2, D=10)
        gamma = HigherCochain(H, 2, {((2, 0), ((1,), ())): 3})
        assert f_value(gamma, 1, 2, offset=1) == 3
        assert f_value(gamma, 2, 2, offset=1) == 0

    def test_first_half_of_four_outputs(self):
        H = LoopAlgebra(n=4, D=10)
        gamma = HigherCochain(
            H,
            4,
            {
                ((1, 1, 0, 0), ((), (1,), (1,), (1,))): 1,
                ((0, 0, 1, 1), ((), (1,), (1,), (1,))): 1,
                ((1, 0, 1, 0), ((1,), (1,), (), (1,))): 1,
            },
        )
        assert f_value(gamma, 1, 2) == 1
        assert f_value(gamma, 1, 0) == 1
        assert f_value(gamma, 3, 1) == 1
        assert f_value(gamma, 2, 1) == 0

    def test_sums_coefficients(self, H2):
        gamma = HigherCochain(
            H2, 2, {((1, 1), ((), (1,))): 1, ((1, 1), ((1,), ())): 1}
        )
        assert f_value(gamma, 1, 1) == 1
        assert f_value(gamma, 2, 1) == 1

    def test_two_empty_sectors_do_not_count(self):
        assert not f_matches(((2, 0, 0), ((), (), (1,))), 1, 2, 4)


def test_displayed_equations_for_n_two():
    first, second = displayed_equations(2)
    assert first.to_dict()["lhs"] == "f_1(0) + f_2(0) + f_1(2) + f_2(2)"
    assert first.value == 1
    assert second.value == 0
    assert {(i, j) for i, j, _ in second.terms} == {(1, 0), (2, 0), (1, 1), (2, 1), (1, 2), (2, 2)}


def test_equations_share_a_functional_in_characteristic_two(F2):
    keys = [((a, 2 - a), ((), (1,))) for a in range(3)] + [
        ((a, 2 - a), ((1,), ())) for a in range(3)
    ]
    first, second = displayed_equations(2)
    assert first.functional(keys, 2, F2) == second.functional(keys, 2, F2)
    assert first.functional(keys, 2, Ring()) != second.functional(keys, 2, Ring())


# ============================================================================
# VALIDATION TESTS
# ============================================================================


class TestValidation:
    """Argument checks that need no sphere structure."""

    def test_extension_needs_characteristic_two(self):
        h = TwistedAlgebra.associative(LoopAlgebra(n=2, D=10), Window(3, 6, 4))
        with pytest.raises(ValueError, match="needs characteristic 2"):
            extend_char2_deformation(h, ell_max=4)

    def test_extension_needs_even_n(self, F2):
        h = TwistedAlgebra.associative(LoopAlgebra(n=3, D=10, ring=F2), Window(3, 6, 4))
        with pytest.raises(ValueError, match="needs even n"):
            extend_char2_deformation(h, ell_max=5)

    def test_extension_needs_levels_above_seed(self, H2):
        h = TwistedAlgebra.associative(H2, Window(3, 6, 4))
        with pytest.raises(ValueError, match="ell_max must exceed"):
            extend_char2_deformation(h, ell_max=2)

    def test_extension_needs_seed_weight(self, H2):
        h = TwistedAlgebra.associative(H2, Window(3, 2, 4))
        with pytest.raises(InconclusiveWindowError, match="below the seed weight"):
            extend_char2_deformation(h, ell_max=4)

    def test_extension_needs_levels(self, H2):
        h = TwistedAlgebra.associative(H2, Window(3, 6, 3))
        with pytest.raises(InconclusiveWindowError, match="Level 4 is outside"):
            extend_char2_deformation(h, ell_max=5)

    def test_certificate_needs_even_n(self, F2):
        h = TwistedAlgebra.associative(LoopAlgebra(n=3, D=10, ring=F2), Window(3, 6, 4))
        with pytest.raises(ValueError, match="needs even n"):
            char2_nonvanishing_certificate(h, ConvolutionElement.zero(h.algebra))

    def test_certificate_needs_level_n(self, H2):
        h = TwistedAlgebra.associative(H2, Window(3, 6, 1))
        with pytest.raises(InconclusiveWindowError, match="Level 2 is outside"):
            char2_nonvanishing_certificate(h, ConvolutionElement.zero(H2))

    def test_certificate_needs_seed_part(self, H2):
        h = TwistedAlgebra.associative(H2, Window(3, 6, 4))
        with pytest.raises(ValueError, match="no weight-3 part"):
            char2_nonvanishing_certificate(h, ConvolutionElement.zero(H2))


# ============================================================================
# SEED AND REDUCED ROUTE TESTS
# ============================================================================


def test_seed_is_closed_of_weight_three(sphere2):
    seed = char2_seed(sphere2, input_bound=3)
    assert seed.ell == 3
    assert seed.weight() == 3
    assert seed.conv_degree() == -1
    assert differential(seed, 3).is_zero()
    assert isotypic_check(seed)


def test_seed_extends_through_level_three(H2):
    h = TwistedAlgebra.sphere(H2, Window(input_bound=3, weight_max=4, level_max=3))
    deformation = extend_char2_deformation(h, ell_max=4)
    assert deformation.components[0].level == 2
    assert deformation.components[0].weight == 3
    assert all(c.level <= 3 for c in deformation.components)
    defect = mc_defect(h.psi + deformation.phi, 3, weights=range(5), levels=range(4))
    assert defect.is_zero()


def test_reduced_route_is_contradictory_in_characteristic_two(sphere2):
    route = reduced_route(sphere2)
    assert route.infeasible
    assert route.gamma_columns == 6
    assert route.offset == 0
    assert all(eq.derivable and eq.implied for eq in route.equations)
    assert route.contradiction
    assert route.to_dict()["status"] == "infeasible"


# ============================================================================
# SPHERE TESTS
# ============================================================================


@pytest.mark.slow
@pytest.mark.integration
def test_extension_is_maurer_cartan(twisted2):
    deformation = extend_char2_deformation(twisted2, ell_max=5)
    phi = deformation.phi
    assert min(phi.weights()) == 3
    for component in deformation.components:
        ell = component.level + 1
        assert 3 <= component.weight <= 2 * ell - 3
    defect = mc_defect(twisted2.psi + phi, 3, weights=range(7), levels=range(5))
    assert defect.is_zero()


@pytest.mark.slow
@pytest.mark.integration
def test_certificate_in_characteristic_two(sphere2, twisted2):
    phi = ConvolutionElement.from_cochain(char2_seed(sphere2, input_bound=3))
    cert = char2_nonvanishing_certificate(twisted2, phi)
    assert cert.status == "nonzero"
    assert isinstance(cert.direct, Infeasible)
    assert cert.reduced.infeasible
    assert cert.reduced.contradiction
    assert "certificate" in cert.to_dict()


@pytest.mark.slow
@pytest.mark.integration
def test_non_homogeneous_gauges_agree(sphere2, twisted2):
    phi = ConvolutionElement.from_cochain(char2_seed(sphere2, input_bound=3))
    homogeneous = char2_nonvanishing_certificate(twisted2, phi)
    mixed = char2_nonvanishing_certificate(twisted2, phi, homogeneous=False)
    assert mixed.status == homogeneous.status
    assert mixed.unknowns >= homogeneous.unknowns


@pytest.mark.slow
@pytest.mark.integration
def test_same_class_vanishes_over_q():
    H = LoopAlgebra(n=2, D=12)
    h = TwistedAlgebra.sphere(H, Window(input_bound=3, weight_max=6, level_max=4))
    phi = ConvolutionElement.from_cochain(char2_seed(h.structure, input_bound=3))
    cert = char2_nonvanishing_certificate(h, phi)
    assert cert.status == "vanishes"
    assert isinstance(cert.direct, Solution)
    assert not cert.reduced.infeasible
    assert not cert.reduced.contradiction
