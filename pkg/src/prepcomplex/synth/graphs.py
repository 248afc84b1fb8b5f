"""Graph-described states and their preparation circuits.

A graph on N vertices names an N-qubit state: put every qubit in the
 |+> state, then apply one controlled phase per edge.  Unweighted edges
carry the full phase pi (a CZ); weighted edges carry an arbitrary phase
with the |11> amplitude picking up exp(-i*phase).

Builders emit exactly one op per vertex plus one per edge.  The discrete
builder uses the composite-CZ extension of the standard basis, whose CZ
fragment is exact, so no approximation enters anywhere.
"""

import math

import numpy as np

from ..circuit import Circuit, standard_cz_extension
from ..errors import ParseError
from ..statevec import StateVector
from .continuous import ContinuousCircuit

__all__ = ["Graph", "graph_state_circuit", "weighted_graph_state_circuit",
           "graph_state_vector", "graph_to_text", "graph_from_text"]


class Graph:
    """Simple undirected graph, optionally with per-edge phase weights."""

    __slots__ = ("num_vertices", "edges", "weights")

    def __init__(self, num_vertices, edges, weights=None):
        if num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        clean = []
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < num_vertices and 0 <= b < num_vertices):
                raise ValueError(f"edge ({a}, {b}) out of range")
            e = (min(a, b), max(a, b))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            clean.append(e)
        if weights is not None:
            w = {}
            for (a, b), phase in weights.items():
                e = (min(int(a), int(b)), max(int(a), int(b)))
                if e not in seen:
                    raise ValueError(f"weight for unknown edge {e}")
                w[e] = float(phase)
            if set(w) != seen:
                raise ValueError("weighted graph must weight every edge")
            weights = w
        object.__setattr__(self, "num_vertices", num_vertices)
        object.__setattr__(self, "edges", tuple(clean))
        object.__setattr__(self, "weights", weights)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def weighted(self):
        return self.weights is not None


def graph_state_circuit(graph, exact_cz=True):
    """Preparation circuit for an unweighted graph state.

    With exact_cz the result is a discrete circuit over the standard
    basis extended by the composite CZ; otherwise a continuous circuit
    using cphase(pi).  Either way the op count is N + |E|.
    """
    if graph.weighted:
        raise ValueError("weighted graph needs weighted_graph_state_circuit")
    if exact_cz:
        basis, _ = standard_cz_extension()
        ops = [("H", (v,)) for v in range(graph.num_vertices)]
        ops += [("CZ", e) for e in graph.edges]
        return Circuit(graph.num_vertices, ops, basis)
    return weighted_graph_state_circuit(graph)


def weighted_graph_state_circuit(graph):
    """Continuous preparation circuit; one ry(pi/2) per vertex (taking
    |0> to |+> exactly) and one cphase per edge."""
    weights = graph.weights or {e: math.pi for e in graph.edges}
    ops = [("ry", math.pi / 2, (v,)) for v in range(graph.num_vertices)]
    ops += [("cphase", weights[e], e) for e in graph.edges]
    return ContinuousCircuit(graph.num_vertices, ops)


def graph_state_vector(graph):
    """Direct matrix-free construction of the graph state, the oracle the
    circuit builders are tested against."""
    n = graph.num_vertices
    weights = graph.weights or {e: math.pi for e in graph.edges}
    amps = np.full(2 ** n, 2.0 ** (-n / 2), dtype=complex)
    for (a, b), phase in weights.items():
        factor = np.exp(-1j * phase)
        for i in range(2 ** n):
            if (i >> (n - 1 - a)) & 1 and (i >> (n - 1 - b)) & 1:
                amps[i] *= factor
    return StateVector(n, amps)


def graph_to_text(graph):
    lines = [f"vertices {graph.num_vertices}"]
    for e in graph.edges:
        if graph.weighted:
            lines.append(f"edge {e[0]} {e[1]} {graph.weights[e]:.17g}")
        else:
            lines.append(f"edge {e[0]} {e[1]}")
    return "\n".join(lines) + "\n"


def graph_from_text(text):
    """Parse 'vertices N' plus 'edge a b [phase]' lines.  Phases must be
    given for all edges or none."""
    num_vertices = None
    edges = []
    weights = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if num_vertices is None:
            if parts[0] != "vertices" or len(parts) != 2:
                raise ParseError("expected 'vertices N' header", lineno)
            try:
                num_vertices = int(parts[1])
            except ValueError:
                raise ParseError("vertex count is not an integer",
                                 lineno) from None
            continue
        if parts[0] != "edge" or len(parts) not in (3, 4):
            raise ParseError("expected 'edge a b [phase]'", lineno)
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError("non-integer vertex", lineno) from None
        edges.append((a, b))
        if len(parts) == 4:
            try:
                weights[(a, b)] = float(parts[3])
            except ValueError:
                raise ParseError("bad edge phase", lineno) from None
    if num_vertices is None:
        raise ParseError("missing 'vertices N' header", 0)
    if weights and len(weights) != len(edges):
        raise ParseError("either all edges carry a phase or none", 0)
    try:
        return Graph(num_vertices, edges, weights or None)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None
