import math
import warnings
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import molecules, random_molecule, random_permutation
from moltype.coordinate import Coordinate
from moltype.elements import AtomicSymbol, ElementAttributes, UnsupportedSymbol, element_attributes
from moltype.fixtures import benzene, hydrogen
from moltype.orbitals import ground_state_config
from moltype.molecule import (
    Atom,
    BondingSystem,
    DanglingEdge,
    DisconnectedSystemWarning,
    DomainMismatch,
    DuplicateAtomId,
    EmptySystem,
    InvalidAtomId,
    InvalidElectronCount,
    Molecule,
    NotABijection,
    SelfLoop,
    UnknownAtom,
    bond_order,
    bonded_pairs,
    build_molecule,
    constitution_signature,
    dietz_constitution,
    lint_molecule,
    make_atom,
    neighbors,
    net_charge,
    relabel_atoms,
    update_coordinate,
)

H = AtomicSymbol.H
C = AtomicSymbol.C


def brute_bond_order(m: Molecule, i: int, j: int) -> Fraction:
    """Walk every system and every edge, summing each edge's equal share."""
    total = Fraction(0)
    for system in m.systems:
        for a, b in system.edges:
            if {a, b} == {i, j}:
                total += Fraction(system.electrons, len(system.edges)) / 2
    return total


# -- elements --------------------------------------------------------------

# reviewed constants: (Z, standard atomic weight)
ELEMENT_TABLE = {
    "H": (1, 1.008), "B": (5, 10.81), "C": (6, 12.011), "N": (7, 14.007), "O": (8, 15.999),
    "F": (9, 18.998), "P": (15, 30.974), "S": (16, 32.06), "Cl": (17, 35.45),
    "Fe": (26, 55.845), "Br": (35, 79.904), "I": (53, 126.90),
}


@pytest.mark.parametrize("symbol", list(ELEMENT_TABLE))
def test_element_attributes_match_constants(symbol):
    attrs = element_attributes(symbol)
    assert (attrs.atomic_number, attrs.atomic_weight) == ELEMENT_TABLE[symbol]
    assert attrs.symbol.value == symbol


def test_symbol_enumeration_is_closed():
    assert {s.value for s in AtomicSymbol} == set(ELEMENT_TABLE)
    for bad in ["Xx", "CL", "c", "", "Na"]:
        with pytest.raises(UnsupportedSymbol):
            AtomicSymbol.parse(bad)


def test_element_attribute_invariants():
    with pytest.raises(ValueError):
        ElementAttributes(C, 7, 12.011)
    with pytest.raises(ValueError):
        ElementAttributes(C, 6, 0.0)


def test_coordinate_rejects_non_finite():
    for bad in (math.nan, math.inf, -math.inf):
        with pytest.raises(ValueError):
            Coordinate(0.0, bad, 0.0)


# -- construction ------------------------------------------------------------


def test_build_h2_and_empty():
    m = build_molecule([make_atom(1, H), make_atom(2, H, (0, 0, 0.74))], [(2, [(1, 2)])])
    assert len(m.atoms) == 2 and m.systems == (BondingSystem(2, ((1, 2),)),)
    empty = build_molecule([], [])
    assert empty.atoms == () and empty.systems == ()
    assert dietz_constitution(empty).vertices == () and dietz_constitution(empty).systems == ()


def test_build_errors():
    with pytest.raises(DanglingEdge) as exc:
        build_molecule([make_atom(1, H)], [(2, [(1, 2)])])
    assert exc.value.index == 0 and exc.value.edge == (1, 2)
    with pytest.raises(DuplicateAtomId):
        build_molecule([make_atom(1, H), make_atom(1, H)], [])
    with pytest.raises(SelfLoop):
        build_molecule([make_atom(1, H)], [(2, [(1, 1)])])
    with pytest.raises(EmptySystem) as exc:
        build_molecule([make_atom(1, H), make_atom(2, H)], [(2, [(1, 2)]), (2, [])])
    assert exc.value.index == 1
    with pytest.raises(InvalidElectronCount):
        BondingSystem(0, ((1, 2),))
    with pytest.raises(InvalidAtomId):
        make_atom(0, H)


def test_edges_are_normalized_and_deduplicated():
    s = BondingSystem(6, ((2, 1), (1, 2), (3, 2)))
    assert s.edges == ((1, 2), (2, 3))
    assert s.atom_ids == frozenset({1, 2, 3})


def test_disconnected_system_warns_but_builds():
    atoms = [make_atom(k, H) for k in range(1, 5)]
    with pytest.warns(DisconnectedSystemWarning):
        m = build_molecule(atoms, [(4, [(1, 2), (3, 4)])])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert lint_molecule(m)


def test_systems_form_a_multiset():
    atoms = [make_atom(1, H), make_atom(2, H)]
    once = build_molecule(atoms, [(2, [(1, 2)])])
    twice = build_molecule(atoms, [(2, [(1, 2)]), (2, [(1, 2)])])
    assert once != twice
    assert bond_order(twice, 1, 2) == 2


# -- Dietz view and bond orders ----------------------------------------------


def test_dietz_h2_matches_set_notation():
    d = dietz_constitution(hydrogen())
    assert d.vertices == ((0, 1, H), (0, 2, H))
    assert d.systems == ((2, ((1, 2),)),)
    assert d.render() == "V = {(0,1,H), (0,2,H)}\nB = {(2, {{1,2}})}"


def test_dietz_benzene_structure():
    d = dietz_constitution(benzene())
    assert len(d.vertices) == 12 and all(u == 0 for u, _, _ in d.vertices)
    single = [s for s in d.systems if s[0] == 2 and len(s[1]) == 1]
    deloc = [s for s in d.systems if len(s[1]) > 1]
    assert len(single) == 12 and len(d.systems) == 13
    assert deloc == [(6, ((1, 2), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6)))]


def test_benzene_bond_orders():
    m = benzene()
    for k in range(1, 7):
        assert bond_order(m, k, k % 6 + 1) == Fraction(3, 2)
        assert bond_order(m, k, k + 6) == 1
    assert bond_order(m, 1, 4) == 0
    assert bond_order(m, 7, 8) == 0
    for i, j in combinations(m.atom_ids, 2):
        assert bond_order(m, i, j) == brute_bond_order(m, i, j)
        assert bond_order(m, i, j) == bond_order(m, j, i)


def test_bond_order_errors():
    m = hydrogen()
    assert bond_order(m, 1, 2) == 1
    with pytest.raises(UnknownAtom):
        bond_order(m, 1, 3)
    with pytest.raises(SelfLoop):
        bond_order(m, 1, 1)


@settings(max_examples=150, deadline=None)
@given(molecules())
def test_bond_order_matches_brute_force(m):
    for i, j in combinations(m.atom_ids, 2):
        assert bond_order(m, i, j) == brute_bond_order(m, i, j)


@settings(max_examples=150, deadline=None)
@given(molecules())
def test_electron_conservation(m):
    # each system's electrons are fully distributed over its edges
    assert sum(bonded_pairs(m).values()) * 2 == sum(s.electrons for s in m.systems)


# -- neighbors, updates, relabeling ------------------------------------------


def test_neighbors():
    b = benzene()
    assert neighbors(b, 1) == {2, 6, 7}
    assert neighbors(hydrogen(), 1) == {2}
    lone = build_molecule([make_atom(1, C)], [])
    assert neighbors(lone, 1) == frozenset()
    with pytest.raises(UnknownAtom):
        neighbors(b, 99)


@settings(max_examples=100, deadline=None)
@given(molecules())
def test_neighbors_symmetric_and_irreflexive(m):
    for i in m.atom_ids:
        assert i not in neighbors(m, i)
        for j in neighbors(m, i):
            assert i in neighbors(m, j)


def test_update_coordinate():
    m = hydrogen()
    assert update_coordinate(m, 1, Coordinate(0.0, 0.0, 0.0)) == m
    c = Coordinate(1.5, -2.0, 0.25)
    moved = update_coordinate(m, 2, c)
    assert moved.atom(2).coordinate == c
    assert m.atom(2).coordinate == Coordinate(0.0, 0.0, 0.74)
    with pytest.raises(UnknownAtom):
        update_coordinate(m, 99, c)


def test_relabel_examples():
    m = hydrogen()
    assert relabel_atoms(m, {1: 1, 2: 2}) == m
    swapped = relabel_atoms(m, {1: 2, 2: 1})
    assert bond_order(swapped, 1, 2) == 1

    b = benzene()
    perm = {k: k % 6 + 1 for k in range(1, 7)} | {k: (k - 6) % 6 + 7 for k in range(7, 13)}
    rotated = relabel_atoms(b, perm)
    assert constitution_signature(rotated) == constitution_signature(b)
    # the ring relabeling is an automorphism of the bonding, though not of the coordinates
    assert dietz_constitution(rotated).systems == dietz_constitution(b).systems
    assert rotated != b


def test_relabel_errors():
    m = hydrogen()
    with pytest.raises(DomainMismatch):
        relabel_atoms(m, {1: 2})
    with pytest.raises(NotABijection):
        relabel_atoms(m, {1: 3, 2: 3})
    with pytest.raises(NotABijection):
        relabel_atoms(m, {1: 0, 2: 1})


@settings(max_examples=150, deadline=None)
@given(molecules(), st.integers(0, 2**32 - 1))
def test_relabel_preserves_bond_orders(m, seed):
    perm = random_permutation(np.random.default_rng(seed), m, fresh=bool(seed % 2))
    r = relabel_atoms(m, perm)
    assert constitution_signature(r) == constitution_signature(m)
    for i, j in combinations(m.atom_ids, 2):
        assert bond_order(r, perm[i], perm[j]) == bond_order(m, i, j)
    inverse = {v: k for k, v in perm.items()}
    assert relabel_atoms(r, inverse) == m


def test_rebuild_from_parts_is_identity():
    rng = np.random.default_rng(7)
    for _ in range(50):
        m = random_molecule(rng)
        assert build_molecule(list(m.atoms), list(m.systems)) == m


# -- charge --------------------------------------------------------------------


def test_net_charge_examples():
    assert net_charge(hydrogen()) == 0
    assert net_charge(benzene()) == 0
    lone_c = build_molecule([make_atom(1, C, shells=ground_state_config(6))], [])
    assert net_charge(lone_c) == 0
    deficient = build_molecule(list(hydrogen().atoms), [(1, [(1, 2)])])
    assert net_charge(deficient) == 1


def test_atom_without_shells_has_zero_unshared():
    a = Atom(3, element_attributes("O"), Coordinate(0, 0, 0))
    assert a.unshared_electrons == 0
