"""Rigid rotations, composition and what they preserve."""

import math

import numpy as np

from moltype import (
    RigidRotation,
    apply_rotation,
    bond_angle,
    bond_length,
    hausdorff_distance,
    rot_identity,
    rot_inv,
    rot_mul,
)
from moltype.fixtures import benzene, water
from moltype.geometry import rotations_equivalent

quarter = RigidRotation.about((0, 0, 1), math.pi / 2)
half = rot_mul(quarter, quarter)
print("quarter*quarter:", half)
print("same as a half turn:", rotations_equivalent(half, RigidRotation.about((0, 0, 1), math.pi)))
print("r * r^-1 is identity:", rotations_equivalent(rot_mul(quarter, rot_inv(quarter)), rot_identity()))

# composition does not commute
rx = RigidRotation.about((1, 0, 0), math.pi / 2)
print("rx*quarter == quarter*rx:", rotations_equivalent(rot_mul(rx, quarter), rot_mul(quarter, rx)))

m = water()
turned = apply_rotation(m, RigidRotation.about(np.array([1.0, 2.0, 3.0]), 0.7))
print(f"O-H     {bond_length(m, 1, 2):.6f} -> {bond_length(turned, 1, 2):.6f}")
print(f"H-O-H   {math.degrees(bond_angle(m, 2, 1, 3)):.4f} -> {math.degrees(bond_angle(turned, 2, 1, 3)):.4f} deg")
print(f"moved by {hausdorff_distance(m, turned):.4f} (Hausdorff)")

# a sixth of a turn maps the carbon ring onto itself; the listed hydrogens
# are not quite on one circle, which shows up as a small residue
b = benzene()
sixth = apply_rotation(b, RigidRotation.about((0, 0, 1), math.pi / 3))
print(f"benzene after pi/3: Hausdorff {hausdorff_distance(b, sixth):.2e}")
