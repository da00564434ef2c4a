"""Random valid molecules and rotations for property and acceptance tests."""

from __future__ import annotations

import math
import warnings

import numpy as np
from hypothesis import strategies as st

from moltype.coordinate import Coordinate
from moltype.elements import AtomicSymbol, ElementAttributes, element_attributes, valence_electrons
from moltype.geometry import RigidRotation
from moltype.molecule import Atom, BondingSystem, Molecule
from moltype.orbitals import (
    LABELS_BY_KIND,
    MIN_N,
    SUBSHELL_KINDS,
    Orbital,
    Shell,
    SubShell,
    ground_state_config,
    molecular_shells,
)

SYMBOLS = list(AtomicSymbol)


def _quiet_molecule(atoms, systems) -> Molecule:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return Molecule(tuple(atoms), tuple(systems))


def _random_float(rng: np.random.Generator) -> float:
    kind = rng.integers(6)
    if kind == 0:
        return float(rng.normal(0, 3))
    if kind == 1:
        return float(rng.normal(0, 1) * 10.0 ** rng.integers(-30, 30))
    if kind == 2:
        return float(rng.choice([0.0, -0.0, 1.0, -1.5, 0.1, 1e-310, -5e-324, 1.7976931348623157e308]))
    if kind == 3:
        return round(float(rng.uniform(-10, 10)), int(rng.integers(0, 5)))
    # arbitrary finite bit patterns
    while True:
        v = float(np.frombuffer(rng.bytes(8), dtype=np.float64)[0])
        if math.isfinite(v):
            return v


def _random_shells(rng: np.random.Generator, symbol: AtomicSymbol):
    kind = rng.integers(4)
    if kind == 0:
        return ()
    z = element_attributes(symbol).atomic_number
    if kind == 1 and z <= 36:
        return ground_state_config(z)
    if kind == 2:
        return molecular_shells(symbol, int(rng.integers(0, valence_electrons(symbol) + 1)))
    # hand-built valid shells with explicit layouts, reorientations and hybrids
    shells = []
    for n in sorted(rng.choice(np.arange(1, 6), size=int(rng.integers(1, 4)), replace=False)):
        subs = {}
        for sub_kind in SUBSHELL_KINDS:
            if n < MIN_N[sub_kind] or rng.random() < 0.4:
                continue
            labels = list(LABELS_BY_KIND[sub_kind])
            picked = [labels[i] for i in sorted(rng.choice(len(labels), size=int(rng.integers(0, len(labels) + 1)), replace=False))]
            orbitals = []
            for label in picked:
                orientation = None
                if sub_kind != "s" and rng.random() < 0.5:
                    v = rng.normal(size=3)
                    v = v / np.linalg.norm(v)
                    orientation = Coordinate(*map(float, v))
                hybrid = None
                if rng.random() < 0.25:
                    w = rng.normal(size=int(rng.integers(1, 4)))
                    w = w / np.linalg.norm(w)
                    hybrid = tuple((float(x), labels[int(rng.integers(len(labels)))]) for x in w)
                orbitals.append(Orbital(label, int(rng.integers(0, 3)), orientation, hybrid))
            subs[sub_kind] = SubShell(sub_kind, tuple(orbitals))
        shells.append(Shell(int(n), **subs))
    return tuple(shells)


def _connected_edges(rng: np.random.Generator, ids: list[int]) -> tuple:
    a, b = (int(i) for i in rng.choice(ids, size=2, replace=False))
    edges = {(a, b)}
    touched = [a, b]
    for _ in range(int(rng.integers(0, 4))):
        a = touched[int(rng.integers(len(touched)))]
        b = int(rng.choice(ids))
        if a != b:
            edges.add((a, b) if rng.random() < 0.5 else (b, a))
            touched.append(b)
    return tuple(edges)


def random_molecule(rng: np.random.Generator, max_atoms: int = 8, max_systems: int = 8) -> Molecule:
    n = int(rng.integers(0, max_atoms + 1))
    ids = sorted(int(i) for i in rng.choice(np.arange(1, 60), size=n, replace=False))
    atoms = []
    for atom_id in ids:
        symbol = SYMBOLS[int(rng.integers(len(SYMBOLS)))]
        attrs = element_attributes(symbol)
        if rng.random() < 0.2:
            attrs = ElementAttributes(symbol, attrs.atomic_number, abs(_random_float(rng)) or 1.0)
        xyz = Coordinate(_random_float(rng), _random_float(rng), _random_float(rng))
        atoms.append(Atom(atom_id, attrs, xyz, _random_shells(rng, symbol)))
    order = rng.permutation(len(atoms))
    atoms = [atoms[k] for k in order]
    systems = []
    if n >= 2:
        for _ in range(int(rng.integers(0, max_systems + 1))):
            systems.append(BondingSystem(int(rng.integers(1, 9)), _connected_edges(rng, ids)))
    return _quiet_molecule(atoms, systems)


def random_rotation(rng: np.random.Generator) -> RigidRotation:
    while True:
        v = rng.normal(size=3)
        if np.linalg.norm(v) > 1e-3:
            break
    return RigidRotation.about(Coordinate(*map(float, v)), float(rng.uniform(-2 * math.pi, 2 * math.pi)))


def random_permutation(rng: np.random.Generator, m: Molecule, fresh: bool = False) -> dict[int, int]:
    ids = list(m.atom_ids)
    if fresh:
        targets = [int(t) for t in rng.choice(np.arange(1, 200), size=len(ids), replace=False)]
    else:
        targets = [ids[k] for k in rng.permutation(len(ids))]
    return dict(zip(ids, targets))


# hypothesis front-ends over the same generators

seeds = st.integers(min_value=0, max_value=2**63 - 1)


@st.composite
def molecules(draw, max_atoms: int = 8, max_systems: int = 8) -> Molecule:
    return random_molecule(np.random.default_rng(draw(seeds)), max_atoms, max_systems)


@st.composite
def rotations(draw) -> RigidRotation:
    return random_rotation(np.random.default_rng(draw(seeds)))


def geometric_molecule(rng: np.random.Generator, n: int = 6) -> Molecule:
    """Atoms at moderate random positions, chained by single bonds."""
    atoms = []
    for k in range(1, n + 1):
        xyz = Coordinate(*map(float, rng.uniform(-3, 3, size=3)))
        symbol = SYMBOLS[int(rng.integers(len(SYMBOLS)))]
        atoms.append(Atom(k, element_attributes(symbol), xyz))
    systems = [BondingSystem(2, ((k, k + 1),)) for k in range(1, n)]
    if rng.random() < 0.5 and n >= 3:
        systems.append(BondingSystem(int(rng.integers(1, 7)), tuple((k, k + 1) for k in range(1, n))))
    return Molecule(tuple(atoms), tuple(systems))
