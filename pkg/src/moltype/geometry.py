"""Distances, bond geometry and rigid rotations acting on molecules."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .coordinate import Coordinate
from .molecule import Molecule

__all__ = [
    "EmptyMolecule",
    "DegenerateGeometry",
    "RigidRotation",
    "euclidean_distance",
    "hausdorff_distance",
    "bond_length",
    "bond_angle",
    "dihedral_angle",
    "rot_identity",
    "rot_mul",
    "rot_inv",
    "rotation_matrix",
    "rotate_point",
    "apply_rotation",
    "rotations_equivalent",
    "coordinates_array",
]

_AXIS_TOL = 1e-12
_DEGENERATE_TOL = 1e-12


class EmptyMolecule(ValueError):
    pass


class DegenerateGeometry(ValueError):
    pass


def euclidean_distance(a: Coordinate, b: Coordinate) -> float:
    return math.sqrt((a.x - b.x) ** 2 + (a.y - b.y) ** 2 + (a.z - b.z) ** 2)


def coordinates_array(m: Molecule) -> np.ndarray:
    return np.array([[a.coordinate.x, a.coordinate.y, a.coordinate.z] for a in m.atoms], dtype=float).reshape(-1, 3)


def hausdorff_distance(m1: Molecule, m2: Molecule) -> float:
    """Symmetric Hausdorff distance between the two atom point sets."""
    if not m1.atoms or not m2.atoms:
        raise EmptyMolecule("Hausdorff distance needs two non-empty molecules")
    c1 = [a.coordinate for a in m1.atoms]
    c2 = [a.coordinate for a in m2.atoms]
    d1 = max(min(euclidean_distance(p, q) for q in c2) for p in c1)
    d2 = max(min(euclidean_distance(q, p) for p in c1) for q in c2)
    return max(d1, d2)


def _position(m: Molecule, atom_id: int) -> np.ndarray:
    c = m.atom(atom_id).coordinate
    return np.array([c.x, c.y, c.z])


def bond_length(m: Molecule, i: int, j: int) -> float:
    return euclidean_distance(m.atom(i).coordinate, m.atom(j).coordinate)


def bond_angle(m: Molecule, i: int, j: int, k: int) -> float:
    """Angle at vertex ``j`` between arms to ``i`` and ``k``, in [0, pi]."""
    if len({i, j, k}) != 3:
        raise ValueError("bond angle needs three distinct atoms")
    a = _position(m, i) - _position(m, j)
    b = _position(m, k) - _position(m, j)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na <= _DEGENERATE_TOL or nb <= _DEGENERATE_TOL:
        raise DegenerateGeometry(f"zero-length arm in angle {i}-{j}-{k}")
    cos = float(np.dot(a, b) / (na * nb))
    return math.acos(min(1.0, max(-1.0, cos)))


def dihedral_angle(m: Molecule, i: int, j: int, k: int, l: int) -> float:
    """Signed torsion about the j->k axis, in (-pi, pi].

    IUPAC sign convention: looking along j->k, positive when the near
    bond j-i turns clockwise to eclipse the far bond k-l.
    """
    if len({i, j, k, l}) != 4:
        raise ValueError("dihedral needs four distinct atoms")
    p0, p1, p2, p3 = (_position(m, a) for a in (i, j, k, l))
    b1, b2, b3 = p1 - p0, p2 - p1, p3 - p2
    n1 = np.cross(b1, b2)
    n2 = np.cross(b2, b3)
    nb2 = np.linalg.norm(b2)
    if nb2 <= _DEGENERATE_TOL or np.linalg.norm(n1) <= _DEGENERATE_TOL or np.linalg.norm(n2) <= _DEGENERATE_TOL:
        raise DegenerateGeometry(f"collinear atoms in dihedral {i}-{j}-{k}-{l}")
    angle = math.atan2(float(nb2 * np.dot(b1, n2)), float(np.dot(n1, n2)))
    return math.pi if angle == -math.pi else angle


@dataclass(frozen=True)
class RigidRotation:
    """Rotation about ``axis`` (unit vector) by ``angle`` radians.

    The canonical identity is the zero axis with angle 0.  Axis-angle is
    not unique, so compare rotations with :func:`rotations_equivalent`.
    """

    axis: Coordinate
    angle: float

    def __post_init__(self):
        if not isinstance(self.axis, Coordinate):
            object.__setattr__(self, "axis", Coordinate(*self.axis))
        angle = float(self.angle)
        if not math.isfinite(angle):
            raise ValueError(f"rotation angle {self.angle!r} is not finite")
        object.__setattr__(self, "angle", angle)
        norm = self.axis.norm()
        if norm == 0.0 and angle == 0.0:
            return
        if abs(norm - 1.0) > _AXIS_TOL:
            raise ValueError(f"rotation axis must be a unit vector, |axis| = {norm!r}")

    @classmethod
    def about(cls, axis: Iterable[float], angle: float) -> RigidRotation:
        """Build from any non-zero axis, normalizing it."""
        v = np.asarray(list(axis), dtype=float)
        n = np.linalg.norm(v)
        if n == 0.0:
            if angle == 0.0:
                return rot_identity()
            raise ValueError("zero axis with non-zero angle")
        v = v / n
        return cls(Coordinate(*v), angle)

    def quaternion(self) -> np.ndarray:
        """Unit quaternion ``(w, x, y, z)``."""
        half = 0.5 * self.angle
        s = math.sin(half)
        return np.array([math.cos(half), self.axis.x * s, self.axis.y * s, self.axis.z * s])

    def matrix(self) -> np.ndarray:
        return rotation_matrix(self)


def rot_identity() -> RigidRotation:
    return RigidRotation(Coordinate(0.0, 0.0, 0.0), 0.0)


def _quat_mul(q: np.ndarray, r: np.ndarray) -> np.ndarray:
    w1, x1, y1, z1 = q
    w2, x2, y2, z2 = r
    return np.array(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ]
    )


def _from_quaternion(q: np.ndarray) -> RigidRotation:
    q = q / np.linalg.norm(q)
    if q[0] < 0.0:
        q = -q
    vec = q[1:]
    s = float(np.linalg.norm(vec))
    if s <= _AXIS_TOL:
        return rot_identity()
    angle = 2.0 * math.atan2(s, float(q[0]))
    axis = vec / s
    # renormalize so |axis| is 1 to within rounding
    axis = axis / np.linalg.norm(axis)
    return RigidRotation(Coordinate(*axis), angle)


def rot_mul(a: RigidRotation, b: RigidRotation) -> RigidRotation:
    """Composition ``a . b``: apply ``b`` first, then ``a``."""
    return _from_quaternion(_quat_mul(a.quaternion(), b.quaternion()))


def rot_inv(a: RigidRotation) -> RigidRotation:
    if a.axis.norm() == 0.0:
        return rot_identity()
    return RigidRotation(a.axis, -a.angle)


def rotation_matrix(r: RigidRotation) -> np.ndarray:
    """Rodrigues rotation matrix."""
    k = np.array([r.axis.x, r.axis.y, r.axis.z])
    kx = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return np.eye(3) + math.sin(r.angle) * kx + (1.0 - math.cos(r.angle)) * (kx @ kx)


def rotate_point(r: RigidRotation, c: Coordinate) -> Coordinate:
    return Coordinate(*(rotation_matrix(r) @ np.array([c.x, c.y, c.z])))


def apply_rotation(m: Molecule, r: RigidRotation) -> Molecule:
    """Rotate every atom about the origin; ids, systems and shells untouched."""
    if not m.atoms:
        return m
    rotated = coordinates_array(m) @ rotation_matrix(r).T
    atoms = tuple(replace(a, coordinate=Coordinate(*row)) for a, row in zip(m.atoms, rotated))
    return Molecule(atoms, m.systems)


def rotations_equivalent(
    a: RigidRotation, b: RigidRotation, probe: np.ndarray | None = None, tol: float = 1e-9
) -> bool:
    """True when ``a`` and ``b`` move every probe point to within ``tol``."""
    if probe is None:
        probe = np.vstack([np.eye(3), np.array([[1.0, 2.0, 3.0], [-0.5, 0.25, 2.0]])])
    pa = probe @ rotation_matrix(a).T
    pb = probe @ rotation_matrix(b).T
    return bool(np.max(np.abs(pa - pb)) <= tol)
