"""
Obstruction theory in the twisted convolution algebra.

Gauges, truncated BCH, obstruction classes and intermediate gauge
triviality sequences, the rigidity criterion, and the characteristic-two
deformation of the sphere with its non-vanishing certificate.
"""

from src.obstruction.char2 import (
    Char2Certificate,
    Char2Component,
    Char2Deformation,
    FEquation,
    ReducedRoute,
    char2_nonvanishing_certificate,
    char2_seed,
    direct_route,
    displayed_equations,
    extend_char2_deformation,
    f_value,
    reduced_route,
    seed_weight,
)
from src.obstruction.classes import (
    GaugePush,
    IntermediateSequence,
    ObstructionClass,
    intermediate_sequence,
    obstruction_class,
    push_gauge,
    theta_vanishes,
)
from src.obstruction.gauge import Gauge, bch, compose_gauges, dynkin_coefficients, gauge_action
from src.obstruction.rigidity import (
    ClassImage,
    RigidityReport,
    SliceCount,
    associative_rigidity_check,
    class_image,
    rigidity_criterion,
)
from src.obstruction.twisted import BlockBasis, TwistedAlgebra, Window, map_degree_for

__all__ = [
    "Window",
    "BlockBasis",
    "TwistedAlgebra",
    "map_degree_for",
    "Gauge",
    "gauge_action",
    "bch",
    "compose_gauges",
    "dynkin_coefficients",
    "ObstructionClass",
    "IntermediateSequence",
    "GaugePush",
    "obstruction_class",
    "theta_vanishes",
    "intermediate_sequence",
    "push_gauge",
    "ClassImage",
    "SliceCount",
    "RigidityReport",
    "associative_rigidity_check",
    "class_image",
    "rigidity_criterion",
    "Char2Component",
    "Char2Deformation",
    "Char2Certificate",
    "FEquation",
    "ReducedRoute",
    "char2_seed",
    "seed_weight",
    "extend_char2_deformation",
    "char2_nonvanishing_certificate",
    "direct_route",
    "reduced_route",
    "displayed_equations",
    "f_value",
]
