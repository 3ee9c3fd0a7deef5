"""
Tests for obstruction classes, intermediate sequences and gauge pushes.

The associative structure psi = mu keeps levels apart, so exact and
non-exact deformations can be built by hand from block bases.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.cochains import HigherCochain
from src.linalg import Infeasible
from src.loop_algebra import LoopAlgebra
from src.necklace import ConvolutionElement
from src.obstruction import (
    TwistedAlgebra,
    Window,
    intermediate_sequence,
    obstruction_class,
    push_gauge,
    theta_vanishes,
)
from src.obstruction.classes import THETA_K, THETA_K_I
from src.utils.exceptions import InconclusiveWindowError


# ============================================================================
# FIXTURES
# ============================================================================


K = 2


@pytest.fixture(scope="module")
def H():
    return LoopAlgebra(n=2, D=10)


@pytest.fixture(scope="module")
def hochschild(H):
    return TwistedAlgebra.associative(H, Window(input_bound=3, weight_max=3, level_max=3))


@pytest.fixture(scope="module")
def gauges(hochschild):
    return hochschild.basis(conv_degree=0, weight=K - 1, levels=range(K + 2))


@pytest.fixture(scope="module")
def targets(hochschild):
    return hochschild.basis(conv_degree=-1, weight=K, levels=range(K + 2))


@pytest.fixture(scope="module")
def exact(hochschild, gauges):
    """xi = d(upsilon) for a generic combination of the gauge basis."""
    upsilon = gauges.combine([j + 1 for j in range(len(gauges))])
    return hochschild.d(upsilon, weights=[K])


def _non_exact(hochschild, targets):
    """First target basis element that is not a d-image, if any."""
    source = hochschild.basis(conv_degree=0, weight=K - 1, levels=range(K + 2))
    for elem in targets.elements():
        if isinstance(hochschild.solve_d(source, targets, elem), Infeasible):
            return elem
    return None


# ============================================================================
# SINGLE CLASS TESTS
# ============================================================================


class TestObstructionClass:
    """theta_k and theta_k^i."""

    def test_exact_deformation_vanishes(self, hochschild, exact):
        cls = obstruction_class(hochschild, exact, K)
        assert cls.kind == THETA_K
        assert cls.vanishes
        assert cls.witness is not None
        assert hochschild.d(cls.witness.element, weights=[K]) == exact

    def test_zero_deformation_vanishes(self, H, hochschild):
        assert theta_vanishes(hochschild, ConvolutionElement.zero(H), K)

    def test_level_class(self, hochschild, exact):
        cls = obstruction_class(hochschild, exact, K, i=0)
        assert cls.kind == THETA_K_I
        assert cls.quotient == "L^1F^2 + F^3"
        assert cls.vanishes

    def test_quotient_of_total_class(self, hochschild, exact):
        assert obstruction_class(hochschild, exact, K).quotient == "F^3"

    def test_non_exact_class_has_certificate(self, hochschild, targets):
        elem = _non_exact(hochschild, targets)
        if elem is None:
            pytest.skip("every weight-2 element is exact in this window")
        cls = obstruction_class(hochschild, elem, K)
        assert not cls.vanishes
        assert cls.status == "nonzero"
        assert isinstance(cls.certificate, Infeasible)
        assert "certificate" in cls.to_dict()

    def test_to_dict(self, hochschild, exact):
        payload = obstruction_class(hochschild, exact, K).to_dict()
        assert payload["kind"] == THETA_K
        assert payload["indices"] == {"k": K, "i": None}
        assert payload["status"] == "vanishes"
        assert "witness" in payload

    def test_rejects_small_k(self, hochschild, exact):
        with pytest.raises(ValueError, match="need k >= 2"):
            obstruction_class(hochschild, exact, 1)

    def test_rejects_lower_weights(self, hochschild, exact):
        with pytest.raises(ValueError, match="is not in F\\^3"):
            intermediate_sequence(hochschild, exact, 3)

    def test_rejects_wrong_degree(self, H, hochschild):
        gauge_like = ConvolutionElement.from_cochain(HigherCochain(H, 1, {((5,), ((1, 1, 1),)): 1}))
        with pytest.raises(ValueError, match="Deformation has degree"):
            obstruction_class(hochschild, gauge_like, K)

    def test_rejects_other_algebra(self, hochschild, exact):
        other = TwistedAlgebra.associative(LoopAlgebra(n=2, D=9), hochschild.window)
        with pytest.raises(ValueError, match="different algebras"):
            obstruction_class(other, exact, K)

    def test_level_outside_window(self, hochschild, exact):
        with pytest.raises(InconclusiveWindowError, match="outside the window"):
            obstruction_class(hochschild, exact, K, i=7)

    def test_terms_outside_input_window(self, H, hochschild):
        far = ConvolutionElement.from_cochain(HigherCochain(H, 1, {((5,), ((2, 1, 1),)): 1}))
        with pytest.raises(InconclusiveWindowError, match="vanishes in the window"):
            obstruction_class(hochschild, far, K)


# ============================================================================
# SEQUENCE TESTS
# ============================================================================


class TestIntermediateSequence:
    """eta_k and its gauges."""

    def test_zero_deformation_is_trivial(self, H, hochschild):
        seq = intermediate_sequence(hochschild, ConvolutionElement.zero(H), K)
        assert seq.trivial
        assert seq.eta == math.inf
        assert seq.to_dict()["eta"] == "inf"

    def test_exact_deformation_is_trivial(self, hochschild, exact):
        seq = intermediate_sequence(hochschild, exact, K)
        assert seq.trivial
        assert len(seq.classes) == K + 2
        assert all(c.vanishes for c in seq.classes)

    def test_gauges_sum_to_a_primitive(self, hochschild, exact):
        seq = intermediate_sequence(hochschild, exact, K)
        total = seq.gauges[0]
        for g in seq.gauges[1:]:
            total = total + g
        assert hochschild.d(total.element, weights=[K]) == exact

    def test_non_exact_deformation_stops(self, hochschild, targets):
        elem = _non_exact(hochschild, targets)
        if elem is None:
            pytest.skip("every weight-2 element is exact in this window")
        seq = intermediate_sequence(hochschild, elem, K)
        assert not seq.trivial
        assert seq.eta <= max(elem.levels())
        assert not seq.classes[-1].vanishes

    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
    def test_eta_does_not_depend_on_solver_choice(self, hochschild, exact, targets, seed):
        elem = _non_exact(hochschild, targets)
        xi = exact if elem is None else exact + elem
        reference = intermediate_sequence(hochschild, xi, K)
        assert intermediate_sequence(hochschild, xi, K, seed=seed).eta == reference.eta

    def test_needs_levels_through_k_plus_one(self, H, exact):
        small = TwistedAlgebra.associative(H, Window(input_bound=3, weight_max=3, level_max=1))
        with pytest.raises(InconclusiveWindowError, match="outside the window"):
            intermediate_sequence(small, exact, K)


# ============================================================================
# EQUIVALENCE TESTS
# ============================================================================


@settings(max_examples=25, deadline=None)
@given(
    gauge_coeffs=st.lists(st.integers(-2, 2), min_size=12, max_size=12),
    noise=st.lists(st.integers(0, 1), min_size=12, max_size=12),
)
def test_three_conditions_agree(gauge_coeffs, noise):
    """eta_k = inf, theta_k = 0 and a successful push coincide."""
    H = LoopAlgebra(n=2, D=10)
    h = TwistedAlgebra.associative(H, Window(input_bound=3, weight_max=3, level_max=3))
    gauges = h.basis(conv_degree=0, weight=K - 1, levels=range(K + 2))
    targets = h.basis(conv_degree=-1, weight=K, levels=range(K + 2))
    upsilon = gauges.combine([gauge_coeffs[j % 12] for j in range(len(gauges))])
    xi = h.d(upsilon, weights=[K])
    xi = xi + targets.combine([noise[j % 12] for j in range(len(targets))])

    trivial = intermediate_sequence(h, xi, K).trivial
    assert trivial == theta_vanishes(h, xi, K)
    assert trivial == push_gauge(h, xi, K).succeeded


def test_push_of_exact_deformation(hochschild, exact):
    push = push_gauge(hochschild, exact, K)
    assert push.succeeded
    assert push.gauge is not None
    assert push.residual.is_zero()
    assert push.to_dict()["succeeded"] is True


def test_push_stops_on_nonzero_class(hochschild, targets):
    elem = _non_exact(hochschild, targets)
    if elem is None:
        pytest.skip("every weight-2 element is exact in this window")
    push = push_gauge(hochschild, elem, K)
    assert not push.succeeded
    assert push.gauge is None
