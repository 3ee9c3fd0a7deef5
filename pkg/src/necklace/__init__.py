"""
Necklace product and bracket on the convolution algebra g_H.
"""

from src.necklace.convolution import (
    Bidegree,
    ConvolutionElement,
    compose_parts,
    mc_defect,
    necklace_bracket,
    necklace_product,
    project,
)

__all__ = [
    "Bidegree",
    "ConvolutionElement",
    "compose_parts",
    "necklace_product",
    "necklace_bracket",
    "mc_defect",
    "project",
]
