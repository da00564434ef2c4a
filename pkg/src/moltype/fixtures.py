"""Small reference molecules used by the demos, the CLI and the tests."""

from __future__ import annotations

import math

from .elements import AtomicSymbol, valence_electrons
from .formats.rings import ring_systems
from .formats.sdf import shared_electron_share
from .molecule import BondingSystem, Molecule, make_atom
from .orbitals import molecular_shells

__all__ = ["hydrogen", "benzene", "oxygen", "water", "BENZENE_ATOMS", "WATER_OH", "WATER_ANGLE_DEG"]

# ring carbons 1-6, hydrogens 7-12 (hydrogen k+6 sits on carbon k)
BENZENE_ATOMS = (
    (1, "C", 0.0, 1.3948, 0.0),
    (2, "C", 1.2079, 0.6974, 0.0),
    (3, "C", 1.2079, -0.6974, 0.0),
    (4, "C", 0.0, -1.3948, 0.0),
    (5, "C", -1.2079, -0.6974, 0.0),
    (6, "C", -1.2079, 0.6974, 0.0),
    (7, "H", 0.0, 2.4732, 0.0),
    (8, "H", 2.1431, 1.2366, 0.0),
    (9, "H", 2.1431, -1.2366, 0.0),
    (10, "H", 0.0, -2.4732, 0.0),
    (11, "H", -2.1431, -1.2366, 0.0),
    (12, "H", -2.1431, 1.2366, 0.0),
)

WATER_OH = 0.9572
WATER_ANGLE_DEG = 104.52


def _with_shells(atoms: list[tuple], systems: list[BondingSystem]) -> Molecule:
    share = shared_electron_share(systems)
    built = []
    for atom_id, symbol, *xyz in atoms:
        symbol = AtomicSymbol.parse(symbol)
        unshared = valence_electrons(symbol) - share.get(atom_id, 0)
        built.append(make_atom(atom_id, symbol, xyz, molecular_shells(symbol, int(unshared))))
    return Molecule(tuple(built), tuple(systems))


def hydrogen() -> Molecule:
    """H2: two hydrogens 0.74 apart along z, one two-electron bond."""
    return _with_shells(
        [(1, "H", 0.0, 0.0, 0.0), (2, "H", 0.0, 0.0, 0.74)],
        [BondingSystem(2, ((1, 2),))],
    )


def benzene() -> Molecule:
    """Planar benzene in the xy plane, centred on the origin.

    Six ring sigma systems, six C-H systems and one six-electron system
    over the ring edges.
    """
    systems = ring_systems(range(1, 7), pi_electrons=6)
    systems += [BondingSystem(2, ((k, k + 6),)) for k in range(1, 7)]
    return _with_shells(list(BENZENE_ATOMS), systems)


def oxygen() -> Molecule:
    """O2 with a localized double bond (four shared electrons)."""
    return _with_shells(
        [(1, "O", 0.0, 0.0, 0.0), (2, "O", 0.0, 0.0, 1.208)],
        [BondingSystem(4, ((1, 2),))],
    )


def water() -> Molecule:
    theta = math.radians(WATER_ANGLE_DEG)
    return _with_shells(
        [
            (1, "O", 0.0, 0.0, 0.0),
            (2, "H", WATER_OH, 0.0, 0.0),
            (3, "H", WATER_OH * math.cos(theta), WATER_OH * math.sin(theta), 0.0),
        ],
        [BondingSystem(2, ((1, 2),)), BondingSystem(2, ((1, 3),))],
    )
