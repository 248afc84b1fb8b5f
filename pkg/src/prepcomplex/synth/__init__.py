"""Synthesis: nets, recursive refinement, state preparation, lowering."""

from .compile import (
    compile_to_basis,
    copies_circuit,
    factor_product,
    product_words_circuit,
    separable_circuit,
    shortest_state_word,
    standard_generators,
)
from .continuous import (
    ContinuousCircuit,
    continuous_from_text,
    continuous_to_text,
    cphase_matrix,
    lower_cphase,
    run_continuous,
)
from .graphs import (
    Graph,
    graph_from_text,
    graph_state_circuit,
    graph_state_vector,
    graph_to_text,
    weighted_graph_state_circuit,
)
from .net import ApproxNet, NetEntry, build_net, get_net
from .sk import SKParams, SKResult, group_commutator_decompose, sk_approximate, sk_full
from .stateprep import prepare_state_exact
from .su2 import random_su2, rotation_matrix, rotation_taking

__all__ = [
    "ApproxNet",
    "NetEntry",
    "build_net",
    "get_net",
    "SKParams",
    "SKResult",
    "group_commutator_decompose",
    "sk_approximate",
    "sk_full",
    "ContinuousCircuit",
    "run_continuous",
    "lower_cphase",
    "cphase_matrix",
    "continuous_to_text",
    "continuous_from_text",
    "prepare_state_exact",
    "Graph",
    "graph_state_circuit",
    "weighted_graph_state_circuit",
    "graph_state_vector",
    "graph_to_text",
    "graph_from_text",
    "compile_to_basis",
    "copies_circuit",
    "separable_circuit",
    "shortest_state_word",
    "product_words_circuit",
    "factor_product",
    "standard_generators",
    "random_su2",
    "rotation_matrix",
    "rotation_taking",
]
