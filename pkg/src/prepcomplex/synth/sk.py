"""Recursive net-refinement synthesis for single-qubit unitaries.

Each level writes the residual between the target and its coarser
approximation as a balanced group commutator V W V~ W~, recurses on V and
W, and prepends the coarser word.  Inverse words come from the net's
adjoint-closed core rather than from reversing and inverting gates, so
the emitted word length obeys len <= 5^depth * l0 exactly.

Words are tuples of gate names in application order (first gate applied
first); the composed matrix of a word (g1, ..., gk) is gk @ ... @ g1.
"""

import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from ..config import CONTRACTION_THRESHOLD, DEFAULT_MAX_DEPTH, DEFAULT_NET_L0
from ..errors import NetTooCoarseError
from ..statevec import phase_insensitive_distance, require_unitary
from .net import get_net
from .su2 import mat_of_quat, quat_of, rotation_taking, rx, ry, to_su2

__all__ = ["SKParams", "SKResult", "group_commutator_decompose",
           "sk_approximate", "sk_full"]


@dataclass
class SKParams:
    """Knobs for the synthesis recursion.

    c_observed is a slot for the empirically fitted error exponent; it is
    reported, never consumed by the algorithm.
    """
    l0: int = DEFAULT_NET_L0
    depth: int = DEFAULT_MAX_DEPTH
    c_observed: float | None = None

    def __post_init__(self):
        if self.l0 < 1:
            raise ValueError("l0 must be at least 1")
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")


SKResult = namedtuple("SKResult", ["word", "inverse_word", "matrix",
                                   "distance"])


def group_commutator_decompose(delta):
    """Split a near-identity SU(2) element into balanced commutator parts.

    Returns (V, W) with delta = V @ W @ V^dag @ W^dag up to rounding and
    global phase.  The rotation angle phi of both parts solves
    sin(theta/4) = sin(phi/2)^2 exactly, where theta is delta's rotation
    angle, so recomposition is exact rather than first-order.
    """
    d = to_su2(np.asarray(delta, dtype=complex))
    require_unitary(d)
    q = quat_of(d)
    w0 = min(1.0, abs(q[0]))
    theta = 2 * math.acos(w0)
    if theta < 1e-12:
        eye = np.eye(2, dtype=complex)
        return eye, eye
    if theta > math.pi / 2:
        raise ValueError("input too far from identity for a balanced "
                         "commutator split")
    a_axis = q[1:] / np.linalg.norm(q[1:])
    phi = 2 * math.asin(math.sqrt(math.sin(theta / 4)))
    v = rx(phi)
    w = ry(phi)
    comm = v @ w @ v.conj().T @ w.conj().T
    b = quat_of(comm)[1:]
    b_axis = b / np.linalg.norm(b)
    s = rotation_taking(b_axis, a_axis)
    sd = s.conj().T
    return s @ v @ sd, s @ w @ sd


def _recurse(net, u, depth):
    if depth == 0:
        entry = net.lookup(u)
        return entry.word, entry.inverse_word, entry.matrix
    w_u, iw_u, m_u = _recurse(net, u, depth - 1)
    delta = to_su2(u) @ m_u.conj().T
    v, w = group_commutator_decompose(delta)
    w_v, iw_v, m_v = _recurse(net, v, depth - 1)
    w_w, iw_w, m_w = _recurse(net, w, depth - 1)
    matrix = m_v @ m_w @ m_v.conj().T @ m_w.conj().T @ m_u
    word = w_u + iw_w + iw_v + w_w + w_v
    inverse = iw_v + iw_w + w_v + w_w + iw_u
    return word, inverse, matrix


def sk_full(target, basis=None, params=None, net=None):
    """Full synthesis record: word, exact inverse word, composed matrix,
    achieved phase-insensitive distance."""
    target = np.asarray(target, dtype=complex)
    require_unitary(target)
    if params is None:
        params = SKParams()
    if net is None:
        if basis is None:
            from ..circuit import standard_basis
            basis = standard_basis()
        net = get_net(basis, params.l0)
    if params.depth >= 1:
        base = net.lookup(target)
        if base.distance > CONTRACTION_THRESHOLD:
            raise NetTooCoarseError(
                f"base approximation error {base.distance:.4g} exceeds "
                f"contraction threshold {CONTRACTION_THRESHOLD}; "
                f"increase l0")
    word, inverse, matrix = _recurse(net, target, params.depth)
    achieved = phase_insensitive_distance(matrix, target)
    return SKResult(word, inverse, matrix, achieved)


def sk_approximate(target, basis=None, params=None, net=None):
    """Approximate a 2x2 unitary by a basis word; returns the word and
    the achieved phase-insensitive distance."""
    r = sk_full(target, basis=basis, params=params, net=net)
    return r.word, r.distance
