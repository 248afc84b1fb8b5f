"""SU(2) utilities shared by the synthesis code.

Unit quaternions double-cover SU(2); we keep one representative per
projective class by flipping the sign so the first nonzero component is
positive.  With that convention the Euclidean distance between quaternion
representatives (minimized over the sign) equals the phase-insensitive
spectral distance 2 sin(arc/4) exactly, which is what makes a KD-tree over
quaternions an exact nearest-neighbor structure for the net.
"""

import math

import numpy as np

__all__ = [
    "to_su2",
    "quat_of",
    "canonical_quat",
    "mat_of_quat",
    "quat_key",
    "rx",
    "ry",
    "rz",
    "rotation_matrix",
    "rotation_taking",
    "random_su2",
]


def to_su2(m):
    """Rescale a 2x2 unitary to determinant 1."""
    m = np.asarray(m, dtype=np.complex128)
    return m / np.sqrt(np.linalg.det(m))


def quat_of(m):
    """Quaternion (w, x, y, z) of an SU(2) matrix, canonical sign."""
    w = m[0, 0].real
    z = -m[0, 0].imag
    y = -m[0, 1].real
    x = -m[0, 1].imag
    return canonical_quat(np.array([w, x, y, z]))


def canonical_quat(q):
    # flip so the first component above noise is positive
    for v in q:
        if abs(v) > 1e-12:
            if v < 0:
                q = -q
            break
    return q


def mat_of_quat(q):
    w, x, y, z = q
    return np.array([[w - 1j * z, -y - 1j * x],
                     [y - 1j * x, w + 1j * z]])


def quat_key(q, decimals=9):
    """Dedup key; the rounding realizes the net's 1e-10-scale tolerance."""
    return tuple(np.round(q, decimals))


def rx(angle):
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def ry(angle):
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(angle):
    return np.array([[np.exp(-0.5j * angle), 0],
                     [0, np.exp(0.5j * angle)]])


_AXES = {"x": rx, "y": ry, "z": rz}


def rotation_matrix(axis, angle):
    return _AXES[axis](angle)


def rotation_taking(b, a):
    """SU(2) element whose SO(3) image maps unit vector b onto a.

    Closed form via the half-angle quaternion; no eigenframe is involved,
    so the result is stable even for nearly (anti)parallel inputs.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = float(np.dot(b, a))
    if c > 1 - 1e-14:
        return np.eye(2, dtype=complex)
    if c < -1 + 1e-14:
        perp = np.cross(a, [1.0, 0.0, 0.0])
        if np.linalg.norm(perp) < 1e-8:
            perp = np.cross(a, [0.0, 1.0, 0.0])
        axis = perp / np.linalg.norm(perp)
        chi = math.pi
    else:
        cross = np.cross(b, a)
        axis = cross / np.linalg.norm(cross)
        chi = math.acos(max(-1.0, min(1.0, c)))
    w = math.cos(chi / 2)
    xyz = math.sin(chi / 2) * axis
    return mat_of_quat(np.array([w, *xyz]))


def random_su2(rng):
    """Haar-uniform SU(2) element (normalized Gaussian quaternion)."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    return mat_of_quat(q)
