"""Epsilon-net over the single-qubit gates of a basis.

The net enumerates all distinct products of basis one-qubit gates up to a
length cutoff, deduplicating up to global phase through canonical
quaternions.  Lookups run through a KD-tree over the quaternion
representatives (both signs), whose Euclidean query distance coincides
with the phase-insensitive operator distance.

Only the adjoint-closed core of the net is searchable: an element enters
the core when its adjoint is also a net element, and the adjoint's word is
stored as an exact inverse word.  That keeps every word the recursion in
`sk` emits, forward or inverse, within the base-length bound.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from ..config import NET_SIZE_CAP
from ..errors import SizeError
from .su2 import canonical_quat, quat_key, quat_of, to_su2

__all__ = ["ApproxNet", "NetEntry", "build_net", "get_net"]


@dataclass(frozen=True)
class NetEntry:
    word: tuple
    inverse_word: tuple
    matrix: np.ndarray
    distance: float


class ApproxNet:
    """Built net plus its searchable core.

    entries: every distinct product of length <= l0, as (word, matrix)
    pairs in breadth-first order, so word lengths are nondecreasing.  The
    core arrays preserve that order.
    """

    def __init__(self, basis_id, l0, entries, core_quats, core_words,
                 core_inverse_words, core_matrices):
        self.basis_id = basis_id
        self.l0 = l0
        self.entries = entries
        self.core_words = core_words
        self.core_inverse_words = core_inverse_words
        self.core_matrices = core_matrices
        self._n = len(core_words)
        self._tree = cKDTree(np.vstack([core_quats, -core_quats]))

    @property
    def size(self):
        return len(self.entries)

    @property
    def core_size(self):
        return self._n

    def lookup(self, u):
        """Nearest searchable element to the 2x2 unitary u."""
        q = quat_of(to_su2(np.asarray(u, dtype=complex)))
        dist, idx = self._tree.query(q)
        idx %= self._n
        return NetEntry(self.core_words[idx], self.core_inverse_words[idx],
                        self.core_matrices[idx], float(dist))

    def state_columns(self):
        """Stacked first columns of the core matrices (each word applied
        to |0>), for vectorized state-fidelity scans."""
        return np.stack([m[:, 0] for m in self.core_matrices])


def build_net(basis, l0):
    if l0 < 1:
        raise ValueError("net length cutoff must be at least 1")
    gates = {g.name: g.matrix for g in basis.one_qubit_gates()}
    if not gates:
        raise ValueError(f"basis {basis.id!r} has no one-qubit gates")

    eye = np.eye(2, dtype=complex)
    net = {quat_key(quat_of(eye)): ((), eye)}
    frontier = [((), eye)]
    for _ in range(l0):
        grown = []
        for word, m in frontier:
            for name, gm in gates.items():
                m2 = gm @ m
                key = quat_key(quat_of(to_su2(m2)))
                if key not in net:
                    entry = (word + (name,), m2)
                    net[key] = entry
                    grown.append(entry)
        frontier = grown
        if len(net) > NET_SIZE_CAP:
            raise SizeError(
                f"net size exceeds cap {NET_SIZE_CAP} at length {l0}")

    quats, words, inv_words, mats = [], [], [], []
    for key, (word, m) in net.items():
        q = quat_of(to_su2(m))
        adjoint_key = quat_key(canonical_quat(q * np.array([1.0, -1, -1, -1])))
        if adjoint_key in net:
            quats.append(q)
            words.append(word)
            inv_words.append(net[adjoint_key][0])
            mats.append(m)
    return ApproxNet(basis.id, l0, tuple(net.values()), np.array(quats),
                     tuple(words), tuple(inv_words), tuple(mats))


_CACHE = {}


def get_net(basis, l0):
    """Memoized build; nets are immutable once constructed."""
    key = (basis.id, l0, basis.names())
    if key not in _CACHE:
        _CACHE[key] = build_net(basis, l0)
    return _CACHE[key]
