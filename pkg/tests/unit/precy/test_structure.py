"""
Tests for the sphere structure psi = mu + alpha.

alpha is derived from a linear system; these tests pin down the shape of the
solution and the Maurer-Cartan equation it is meant to satisfy.
"""

import pytest

from src.cochains import HigherCochain, isotypic_check
from src.linalg import Ring
from src.loop_algebra import LoopAlgebra
from src.precy import PreCYStructure, derive_alpha
from src.precy.structure import ALPHA_ANCHOR
from src.utils.exceptions import ConventionError


# ============================================================================
# FIXTURES
# ============================================================================


@pytest.fixture(scope="module")
def derivation():
    return derive_alpha(LoopAlgebra(n=2, D=10), input_bound=4)


@pytest.fixture(scope="module")
def sphere():
    return PreCYStructure.sphere(LoopAlgebra(n=2, D=10), input_bound=3)


# ============================================================================
# ALPHA DERIVATION TESTS
# ============================================================================


class TestDeriveAlpha:
    """Shape of the derived two-output part."""

    def test_anchor_is_normalized(self, derivation):
        alpha = derivation.alpha
        assert alpha.coefficient(ALPHA_ANCHOR) == alpha.ring.one

    def test_solution_is_unique(self, derivation):
        assert derivation.free_dimension == 0
        assert derivation.unknowns > 0

    def test_alpha_is_isotypic(self, derivation):
        assert isotypic_check(derivation.alpha)

    def test_alpha_has_degree_minus_n_and_weight_one(self, derivation):
        alpha = derivation.alpha
        assert alpha.map_degree() == -2
        assert alpha.weight() == 1

    def test_alpha_has_no_copairing(self, derivation):
        assert all(sum(len(s) for s in key[1]) == 1 for key in derivation.alpha.terms)

    def test_alpha_is_integral(self, derivation):
        ring = derivation.alpha.ring
        assert all(v in (ring.one, -ring.one) for _, v in derivation.alpha)

    def test_alpha_of_t_power_has_one_term_per_split(self, derivation):
        # alpha(t^k) = sum_{i+j=k-1} +- t^i (x) t^j in each sector
        for k in range(1, 5):
            sector_one = [key for key in derivation.alpha.terms if key[1] == ((k,), ())]
            assert sorted(key[0] for key in sector_one) == [(i, k - 1 - i) for i in range(k)]
        assert len(derivation.alpha) == 4 * 5

    def test_to_dict(self, derivation):
        payload = derivation.to_dict()
        assert payload["input_bound"] == 4
        assert payload["free_dimension"] == 0
        assert payload["alpha"]["ell"] == 2

    @pytest.mark.parametrize("n", [2, 3])
    def test_f2_alpha_exists(self, n):
        H = LoopAlgebra(n=n, D=10, ring=Ring.prime(2))
        assert derive_alpha(H, input_bound=3).alpha.coefficient(ALPHA_ANCHOR) == H.ring.one

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [3, 4])
    def test_higher_dimensions(self, n):
        derivation = derive_alpha(LoopAlgebra(n=n, D=12), input_bound=4)
        assert derivation.alpha.map_degree() == -n
        assert derivation.free_dimension == 0


# ============================================================================
# STRUCTURE TESTS
# ============================================================================


def test_sphere_is_maurer_cartan(sphere):
    assert sphere.check(input_bound=3)
    assert sphere.psi.weights() == {1}
    assert sphere.psi.levels() == {0, 1}


def test_associative_structure(sphere):
    mu_only = PreCYStructure.associative(sphere.algebra)
    assert mu_only.alpha.is_zero()
    assert mu_only.check(input_bound=4)


def test_with_ring_rederives_alpha(sphere):
    f2 = sphere.with_ring(Ring.prime(2))
    assert f2.algebra.ring == Ring.prime(2)
    assert f2.input_bound == sphere.input_bound
    assert f2.check(input_bound=3)


def test_check_rejects_unclosed_alpha(sphere):
    H = sphere.algebra
    bare = PreCYStructure(H, sphere.mu, HigherCochain(H, 2, {ALPHA_ANCHOR: 1}))
    with pytest.raises(ConventionError, match="does not vanish"):
        bare.check(input_bound=3)


def test_check_rejects_copairing(sphere):
    H = sphere.algebra
    bad = PreCYStructure(H, sphere.mu, HigherCochain(H, 2, {((0, 0), ((), ())): 1}))
    with pytest.raises(ConventionError, match="copairing"):
        bad.check(input_bound=3)


def test_check_rejects_higher_weight(sphere):
    H = sphere.algebra
    extra = HigherCochain(H, 1, {((2,), ((1, 1, 1),)): 1})
    bad = PreCYStructure(H, sphere.mu, sphere.alpha, higher=[extra])
    with pytest.raises(ConventionError, match="homogeneous weight one"):
        bad.check(input_bound=3)


def test_to_dict(sphere):
    payload = sphere.to_dict()
    assert payload["algebra"] == {"n": 2, "D": 10, "ring": "Q"}
    assert payload["input_bound"] == 3
    assert payload["higher"] == []


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3, 4])
def test_sphere_is_maurer_cartan_on_larger_window(n):
    psi = PreCYStructure.sphere(LoopAlgebra(n=n, D=12), input_bound=5)
    assert psi.check(input_bound=5)
