"""The truncated graded algebra H = R[t]/(t^{D+1})."""

from src.loop_algebra.algebra import AlgebraElement, LoopAlgebra, Overflow

__all__ = ["LoopAlgebra", "AlgebraElement", "Overflow"]
