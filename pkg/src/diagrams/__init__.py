"""
Directed ribbon graphs of the dual dioperad: rewriting, basis counts and the
bounded genus-vanishing check.
"""

from src.diagrams.checks import (
    DimensionReport,
    GenusReport,
    basis_dimension,
    dimension_table,
    genus_vanishing_check,
)
from src.diagrams.enumeration import (
    enumerate_graphs,
    enumerate_trees,
    genus_generators,
    tree_shapes,
)
from src.diagrams.graph_term import GraphTerm
from src.diagrams.rewriting import (
    RELATIONS,
    Flip,
    NormalForm,
    SignedTerm,
    TraceStep,
    apply_relation,
    find_reduction,
    flips,
    normal_form,
    relation_sign,
)
from src.diagrams.sequences import SequenceS, enumerate_sequences, sequence_count

__all__ = [
    "GraphTerm",
    "SequenceS",
    "enumerate_sequences",
    "sequence_count",
    "RELATIONS",
    "Flip",
    "SignedTerm",
    "NormalForm",
    "TraceStep",
    "flips",
    "apply_relation",
    "relation_sign",
    "normal_form",
    "find_reduction",
    "tree_shapes",
    "enumerate_trees",
    "enumerate_graphs",
    "genus_generators",
    "DimensionReport",
    "GenusReport",
    "basis_dimension",
    "dimension_table",
    "genus_vanishing_check",
]
