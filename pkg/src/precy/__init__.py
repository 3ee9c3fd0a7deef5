"""
Sphere pre-Calabi-Yau structures, Hochschild chains and the maps g_(l).
"""

from src.precy.chains import (
    HochschildChain,
    HochschildClass,
    boundary,
    cochain_degree,
    hh_class_table,
)
from src.precy.cyclic import Witness, cyclic_representative_search
from src.precy.gmap import g_map, g_map_basis, one_input_per_sector
from src.precy.structure import AlphaDerivation, PreCYStructure, derive_alpha

__all__ = [
    "PreCYStructure",
    "AlphaDerivation",
    "derive_alpha",
    "HochschildChain",
    "HochschildClass",
    "boundary",
    "hh_class_table",
    "cochain_degree",
    "g_map",
    "g_map_basis",
    "one_input_per_sector",
    "Witness",
    "cyclic_representative_search",
]
