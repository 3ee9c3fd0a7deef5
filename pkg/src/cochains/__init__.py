"""
Higher Hochschild cochains of the loop algebra.

Sparse cochains, the differential [mu, -], the cyclic action, slice bases
and slice cohomology.
"""

from src.cochains.basis import SliceBasis, enumerate_keys
from src.cochains.cochain import CochainComponent, HigherCochain, InputProfile
from src.cochains.cohomology import SliceCohomology, cohomology_slice, differential_matrix
from src.cochains.differential import differential, product_cochain
from src.cochains.rotation import (
    isotypic_check,
    isotypic_coordinates,
    norm_map,
    orbit_sum,
    rotate,
    symmetrize,
    tau,
    tau_power,
)

__all__ = [
    "HigherCochain",
    "CochainComponent",
    "InputProfile",
    "SliceBasis",
    "SliceCohomology",
    "enumerate_keys",
    "differential",
    "differential_matrix",
    "product_cochain",
    "cohomology_slice",
    "rotate",
    "tau",
    "tau_power",
    "isotypic_check",
    "isotypic_coordinates",
    "symmetrize",
    "norm_map",
    "orbit_sum",
]
