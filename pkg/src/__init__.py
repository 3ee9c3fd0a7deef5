"""
precy-workbench - exact deformation theory of pre-Calabi-Yau algebras

An exact-arithmetic workbench for the higher Hochschild complexes of the
truncated loop-space algebra R[t], the necklace bracket, Maurer-Cartan
obstruction classes and the dioperad graph calculus.

Modules:
    - linalg: Exact scalars (Q, F_p) and sparse exact linear algebra
    - loop_algebra: The truncated graded algebra R[t]/(t^{D+1})
    - cochains: Higher Hochschild cochains, differential, rotation, cohomology
    - necklace: Convolution algebra, necklace product and bracket
    - precy: Sphere structure, Hochschild chains, g-maps, cyclic representatives
    - obstruction: Gauge action, BCH, obstruction sequences, rigidity, char 2
    - diagrams: Graph terms, relations, normal forms, genus vanishing
    - cli: Command-line experiments and JSON reports
    - utils: Exceptions and logging

Version: 0.1.0
License: MIT
"""

__version__ = "0.1.0"
__author__ = "Your Name"
__email__ = "your.email@example.com"

__all__ = [
    "__version__",
    "__author__",
    "__email__",
]
