"""
The three acceptance commands.

Each command runs its checks in order and returns a Report. A check that
raises a convention error is a contradiction ("fail", with the error as its
certificate); a window error makes it "inconclusive". Later checks that need
an earlier result are skipped once it is missing.
"""

import time
from dataclasses import replace
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
import structlog

from src.cli.reports import FAIL, INCONCLUSIVE, PASS, CheckResult, Report, RunConfig
from src.cochains import product_cochain
from src.diagrams import basis_dimension, genus_vanishing_check
from src.diagrams.sequences import realizable
from src.loop_algebra import LoopAlgebra
from src.obstruction import (
    TwistedAlgebra,
    Window,
    char2_nonvanishing_certificate,
    extend_char2_deformation,
    intermediate_sequence,
    rigidity_criterion,
    seed_weight,
)
from src.precy import PreCYStructure, derive_alpha
from src.utils.exceptions import (
    ConventionError,
    FieldRefusedError,
    InconclusiveWindowError,
    UnsafeTruncationError,
)

logger = structlog.get_logger(__name__)

Outcome = Tuple[str, str, Dict[str, Any], Any]
"""(status, payload key, payload, value handed to later checks)"""


def _run(report: Report, check: str, body: Callable[[], Outcome]) -> Optional[Any]:
    start = time.perf_counter()
    value = None
    try:
        status, key, payload, value = body()
    except (InconclusiveWindowError, UnsafeTruncationError) as e:
        status, key, payload = INCONCLUSIVE, "detail", e.to_dict()
    except (ConventionError, FieldRefusedError) as e:
        logger.error("check_failed", check=check, error=e.message)
        status, key, payload = FAIL, "certificate", e.to_dict()
    elapsed = int((time.perf_counter() - start) * 1000) if report.config.timings else 0

    result = CheckResult(check=check, status=status, timing_ms=elapsed)
    setattr(result, key, payload)
    report.results.append(result)
    logger.info("check_done", check=check, status=status)
    return value if status == PASS else None


def _window(config: RunConfig) -> Window:
    return Window(
        input_bound=config.input_bound,
        weight_max=config.weight_max,
        level_max=config.outputs_max,
        input_margin=config.input_margin,
        persistence=config.persistence,
    )


# ============================================================================
# COFORMALITY
# ============================================================================


def cmd_coformality(config: RunConfig) -> Report:
    """
    Intrinsic coformality of the sphere over Q in the configured window.

    Checks, in order: derive_alpha, maurer_cartan, rigidity_criterion over
    levels 2..outputs_max, and one intermediate sequence per sampled exact
    deformation of weight 2 and 3.
    """
    config.validate()
    report = Report(config=config)
    algebra = LoopAlgebra(n=config.n, D=config.t_max, ring=config.ring)
    window = _window(config)
    bound = window.alpha_bound(config.n)

    def alpha_step() -> Outcome:
        derivation = derive_alpha(algebra, bound)
        return PASS, "witness", derivation.to_dict(), derivation

    derivation = _run(report, "derive_alpha", alpha_step)
    if derivation is None:
        return report

    structure = PreCYStructure(
        algebra, product_cochain(algebra), derivation.alpha, input_bound=bound
    )

    def mc_step() -> Outcome:
        structure.check(window.input_bound)
        witness = {"input_bound": window.input_bound, "alpha_terms": len(derivation.alpha)}
        return PASS, "witness", witness, structure

    if _run(report, "maurer_cartan", mc_step) is None:
        return report
    twisted = TwistedAlgebra(structure, window)

    def rigidity_step() -> Outcome:
        rigidity = rigidity_criterion(twisted, levels=range(2, config.outputs_max + 1))
        key = {PASS: "witness", FAIL: "certificate"}.get(rigidity.status, "detail")
        return rigidity.status, key, rigidity.to_dict(), rigidity

    _run(report, "rigidity_criterion", rigidity_step)

    rng = np.random.default_rng(config.seed)
    for k in (2, 3):
        if k > config.weight_max:
            continue
        for sample in range(config.samples):
            step_seed = int(rng.integers(2**31))
            _run(
                report,
                f"intermediate_sequence[k={k},sample={sample}]",
                lambda k=k, s=step_seed: _exact_sequence(twisted, k, s),
            )
    return report


def _exact_sequence(twisted: TwistedAlgebra, k: int, seed: int) -> Outcome:
    """A random exact deformation d(upsilon) in F^k must be gauge trivial."""
    rng = np.random.default_rng(seed)
    top = k + 1
    gauges = twisted.basis(conv_degree=0, weight=k - 1, levels=range(top + 1))
    if len(gauges) == 0:
        # no gauge of this weight, so every exact deformation in F^k is zero
        witness = {"weight": k - 1, "gauge_space": 0, "levels": top + 1}
        return PASS, "witness", witness, None
    upsilon = gauges.combine([int(c) for c in rng.integers(-3, 4, size=len(gauges))])
    xi = twisted.d(upsilon, weights=[k], levels=range(top + 1))
    sequence = intermediate_sequence(twisted, xi, k, seed=seed)
    if sequence.trivial:
        return PASS, "witness", sequence.to_dict(), sequence
    return FAIL, "certificate", sequence.to_dict(), sequence


# ============================================================================
# CHARACTERISTIC TWO
# ============================================================================


def cmd_char2(config: RunConfig) -> Report:
    """
    The sphere deformation over F2 and its non-vanishing certificate.

    The deformation is extended through outputs_max + 1 outputs; the
    certificate needs level n in the window. The weight window always reaches
    one past the seed weight 2n - 1.
    """
    config.validate()
    report = Report(config=config)
    algebra = LoopAlgebra(n=config.n, D=config.t_max, ring=config.ring)
    window = _window(config)
    floor = seed_weight(config.n) + 1
    if window.weight_max < floor:
        logger.info("char2_window_widened", weight_max=window.weight_max, to=floor)
        window = replace(window, weight_max=floor)

    if config.outputs_max < config.n:
        report.results.append(
            CheckResult(
                check="extend_char2_deformation",
                status=INCONCLUSIVE,
                detail={"message": f"outputs_max={config.outputs_max} is below n={config.n}"},
            )
        )
        return report

    twisted = TwistedAlgebra.sphere(algebra, window)

    def extend_step() -> Outcome:
        deformation = extend_char2_deformation(twisted, ell_max=config.outputs_max + 1)
        return PASS, "witness", deformation.to_dict(), deformation

    deformation = _run(report, "extend_char2_deformation", extend_step)
    if deformation is None:
        return report

    def certificate_step() -> Outcome:
        certificate = char2_nonvanishing_certificate(twisted, deformation.phi)
        return PASS, "certificate", certificate.to_dict(), certificate

    _run(report, "char2_nonvanishing_certificate", certificate_step)
    return report


# ============================================================================
# DIOPERAD
# ============================================================================


def cmd_dioperad(config: RunConfig) -> Report:
    """
    Dimension table for every realizable arity with l + N <= max_legs, then
    the genus-one sweep up to genus_bound vertices.
    """
    config.validate()
    report = Report(config=config)

    for total in range(config.max_legs + 1):
        for ell in range(1, total + 1):
            n_inputs = total - ell
            if not realizable(ell, n_inputs) and (ell, n_inputs) != (2, 0):
                continue

            def dimension_step(ell: int = ell, n_inputs: int = n_inputs) -> Outcome:
                dims = basis_dimension(ell, n_inputs, max_legs=config.max_legs)
                return PASS, "witness", dims.to_dict(), dims

            _run(report, f"basis_dimension({ell};{n_inputs})", dimension_step)

    if config.genus_bound >= 1:

        def genus_step() -> Outcome:
            genus = genus_vanishing_check(config.genus_bound)
            return PASS, "witness", genus.to_dict(), genus

        _run(report, f"genus_vanishing(vertices<={config.genus_bound})", genus_step)
    return report


COMMAND_TABLE: Dict[str, Callable[[RunConfig], Report]] = {
    "coformality": cmd_coformality,
    "char2": cmd_char2,
    "dioperad": cmd_dioperad,
}
