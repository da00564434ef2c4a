"""Atoms, bonding systems and the molecule value.

A molecule is a sequence of atoms plus a *multiset* of bonding systems.
Each bonding system is a number of shared electrons spread over one edge
(a localized bond) or several edges (delocalized bonding).  Two systems
may cover the same edge; benzene's ring bonds each carry a two-electron
sigma system and a share of the six-electron pi system.
"""

from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .coordinate import Coordinate
from .elements import AtomicSymbol, ElementAttributes, element_attributes
from .orbitals import Shell, Shells, total_electrons, unshared_electrons

__all__ = [
    "Edge",
    "Atom",
    "BondingSystem",
    "Molecule",
    "DietzConstitution",
    "MoleculeError",
    "DuplicateAtomId",
    "DanglingEdge",
    "SelfLoop",
    "EmptySystem",
    "InvalidElectronCount",
    "InvalidAtomId",
    "UnknownAtom",
    "NotABijection",
    "DomainMismatch",
    "DisconnectedSystemWarning",
    "make_atom",
    "build_molecule",
    "dietz_constitution",
    "constitution_signature",
    "bond_order",
    "bonded_pairs",
    "neighbors",
    "update_coordinate",
    "relabel_atoms",
    "net_charge",
    "lint_molecule",
]

Edge = tuple[int, int]


class MoleculeError(ValueError):
    """Base class for structural errors in molecules."""


class DuplicateAtomId(MoleculeError):
    def __init__(self, atom_id: int):
        self.atom_id = atom_id
        super().__init__(f"DuplicateAtomId: atom id {atom_id} appears more than once")


class DanglingEdge(MoleculeError):
    def __init__(self, index, edge: Edge):
        self.index = index
        self.edge = edge
        super().__init__(f"DanglingEdge: system {index} edge {edge} references a missing atom")


class SelfLoop(MoleculeError):
    def __init__(self, edge, index=None):
        self.edge = edge
        self.index = index
        where = f"system {index} " if index is not None else ""
        super().__init__(f"SelfLoop: {where}edge {edge} joins an atom to itself")


class EmptySystem(MoleculeError):
    def __init__(self, index=None):
        self.index = index
        where = f"system {index}" if index is not None else "bonding system"
        super().__init__(f"EmptySystem: {where} has no edges")


class InvalidElectronCount(MoleculeError):
    def __init__(self, electrons, index=None):
        self.electrons = electrons
        self.index = index
        where = f"system {index}" if index is not None else "bonding system"
        super().__init__(f"InvalidElectronCount: {where} has {electrons!r} shared electrons (need >= 1)")


class InvalidAtomId(MoleculeError):
    def __init__(self, atom_id):
        self.atom_id = atom_id
        super().__init__(f"InvalidAtomId: atom ids must be integers >= 1, got {atom_id!r}")


class UnknownAtom(MoleculeError):
    def __init__(self, atom_id):
        self.atom_id = atom_id
        super().__init__(f"UnknownAtom: no atom with id {atom_id}")


class NotABijection(MoleculeError):
    pass


class DomainMismatch(MoleculeError):
    pass


class DisconnectedSystemWarning(UserWarning):
    pass


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass(frozen=True)
class Atom:
    atom_id: int
    attributes: ElementAttributes
    coordinate: Coordinate
    shells: Shells = ()

    def __post_init__(self):
        if not _is_int(self.atom_id) or self.atom_id < 1:
            raise InvalidAtomId(self.atom_id)
        if not isinstance(self.shells, tuple):
            object.__setattr__(self, "shells", tuple(self.shells))

    @property
    def symbol(self) -> AtomicSymbol:
        return self.attributes.symbol

    @property
    def unshared_electrons(self) -> int:
        return unshared_electrons(self.symbol, self.shells)


def make_atom(
    atom_id: int,
    symbol: AtomicSymbol | str,
    xyz: Iterable[float] = (0.0, 0.0, 0.0),
    shells: Sequence[Shell] = (),
) -> Atom:
    """Shorthand: element attributes looked up from the symbol."""
    return Atom(atom_id, element_attributes(symbol), Coordinate(*xyz), tuple(shells))


def _normalize_edge(edge, index=None) -> Edge:
    i, j = edge
    if not (_is_int(i) and _is_int(j)):
        raise InvalidAtomId(edge)
    if i == j:
        raise SelfLoop((i, j), index)
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class BondingSystem:
    """``electrons`` shared valence electrons spread over ``edges``.

    Edges are stored normalized as ``(min, max)`` and sorted; duplicates
    collapse (the edges form a set).
    """

    electrons: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if not _is_int(self.electrons) or self.electrons < 1:
            raise InvalidElectronCount(self.electrons)
        edges = tuple(sorted({_normalize_edge(e) for e in self.edges}))
        if not edges:
            raise EmptySystem()
        object.__setattr__(self, "edges", edges)

    @property
    def is_localized(self) -> bool:
        return len(self.edges) == 1

    @property
    def atom_ids(self) -> frozenset[int]:
        """The delocalization span: every atom touched by an edge."""
        return frozenset(i for edge in self.edges for i in edge)

    def sort_key(self):
        return (self.electrons, self.edges)

    def is_connected(self) -> bool:
        adjacency = defaultdict(set)
        for i, j in self.edges:
            adjacency[i].add(j)
            adjacency[j].add(i)
        start = self.edges[0][0]
        seen = {start}
        stack = [start]
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(adjacency)


SystemLike = Union[BondingSystem, tuple]


def _coerce_system(system: SystemLike, index: int) -> BondingSystem:
    if isinstance(system, BondingSystem):
        return system
    electrons, edges = system
    edges = list(edges)
    if not _is_int(electrons) or electrons < 1:
        raise InvalidElectronCount(electrons, index)
    if not edges:
        raise EmptySystem(index)
    for edge in edges:
        _normalize_edge(edge, index)
    return BondingSystem(electrons, tuple(edges))


@dataclass(frozen=True, eq=False)
class Molecule:
    """Immutable molecule value.

    Equality is structural: atom order and system order do not matter,
    but the multiset of systems does.
    """

    atoms: tuple[Atom, ...] = ()
    systems: tuple[BondingSystem, ...] = ()
    _by_id: dict = field(init=False, repr=False, compare=False)
    _edge_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        atoms = tuple(self.atoms)
        systems = tuple(_coerce_system(s, k) for k, s in enumerate(self.systems))
        by_id = {}
        for atom in atoms:
            if atom.atom_id in by_id:
                raise DuplicateAtomId(atom.atom_id)
            by_id[atom.atom_id] = atom
        edge_index = defaultdict(list)
        for k, system in enumerate(systems):
            for edge in system.edges:
                if edge[0] not in by_id or edge[1] not in by_id:
                    raise DanglingEdge(k, edge)
                edge_index[edge].append(k)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "systems", systems)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_edge_index", dict(edge_index))
        for k, system in enumerate(systems):
            if not system.is_connected():
                warnings.warn(
                    f"bonding system {k} spans a disconnected edge set {system.edges}",
                    DisconnectedSystemWarning,
                    stacklevel=3,
                )

    def atom(self, atom_id: int) -> Atom:
        try:
            return self._by_id[atom_id]
        except (KeyError, TypeError):
            raise UnknownAtom(atom_id) from None

    def __contains__(self, atom_id) -> bool:
        return atom_id in self._by_id

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def atom_ids(self) -> tuple[int, ...]:
        return tuple(a.atom_id for a in self.atoms)

    def systems_on(self, i: int, j: int) -> list[BondingSystem]:
        edge = (i, j) if i < j else (j, i)
        return [self.systems[k] for k in self._edge_index.get(edge, ())]

    def edges(self) -> list[Edge]:
        """Every distinct edge covered by at least one system, sorted."""
        return sorted(self._edge_index)

    def canonical_key(self):
        atoms = tuple(sorted(self.atoms, key=lambda a: a.atom_id))
        systems = tuple(sorted(self.systems, key=BondingSystem.sort_key))
        return atoms, systems

    def __eq__(self, other):
        if not isinstance(other, Molecule):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return f"Molecule(atoms={len(self.atoms)}, systems={len(self.systems)})"


def build_molecule(atoms: Iterable[Atom], systems: Iterable[SystemLike]) -> Molecule:
    """Validate and assemble a molecule.

    ``systems`` may hold :class:`BondingSystem` values or plain
    ``(electrons, edges)`` tuples.  Raises a :class:`MoleculeError`
    subclass naming the first problem found.
    """
    return Molecule(tuple(atoms), tuple(systems))


@dataclass(frozen=True)
class DietzConstitution:
    """The ``(V, B)`` pair: atom triples and bonding systems.

    ``vertices`` holds ``(unshared electrons, atom id, symbol)`` sorted by
    id; ``systems`` holds ``(electrons, edges)`` sorted canonically.  The
    systems are kept as a sorted tuple rather than a set so that two equal
    systems on one edge are not merged.
    """

    vertices: tuple[tuple[int, int, AtomicSymbol], ...]
    systems: tuple[tuple[int, tuple[Edge, ...]], ...]

    def render(self) -> str:
        v = ", ".join(f"({u},{j},{a})" for u, j, a in self.vertices)
        b = ", ".join(
            f"({s}, {{{', '.join(f'{{{i},{k}}}' for i, k in edges)}}})" for s, edges in self.systems
        )
        return f"V = {{{v}}}\nB = {{{b}}}"


def dietz_constitution(m: Molecule) -> DietzConstitution:
    vertices = tuple(
        (atom.unshared_electrons, atom.atom_id, atom.symbol)
        for atom in sorted(m.atoms, key=lambda a: a.atom_id)
    )
    systems = tuple((s.electrons, s.edges) for s in sorted(m.systems, key=BondingSystem.sort_key))
    return DietzConstitution(vertices, systems)


def constitution_signature(m: Molecule) -> tuple[tuple[int, int], ...]:
    """Sorted multiset of ``(electrons, edge count)``; label-independent."""
    return tuple(sorted((s.electrons, len(s.edges)) for s in m.systems))


def bond_order(m: Molecule, i: int, j: int) -> Fraction:
    """Exact bond order between atoms ``i`` and ``j``.

    Each system covering the edge contributes
    ``electrons / (2 * number of edges in the system)``.
    """
    m.atom(i)
    m.atom(j)
    if i == j:
        raise SelfLoop((i, j))
    return sum(
        (Fraction(s.electrons, 2 * len(s.edges)) for s in m.systems_on(i, j)),
        Fraction(0),
    )


def bonded_pairs(m: Molecule) -> dict[Edge, Fraction]:
    return {edge: bond_order(m, *edge) for edge in m.edges()}


def neighbors(m: Molecule, i: int) -> frozenset[int]:
    m.atom(i)
    return frozenset(b if a == i else a for a, b in m.edges() if i in (a, b))


def update_coordinate(m: Molecule, i: int, c: Coordinate) -> Molecule:
    target = m.atom(i)
    atoms = tuple(replace(a, coordinate=c) if a is target else a for a in m.atoms)
    return Molecule(atoms, m.systems)


def relabel_atoms(m: Molecule, perm: Mapping[int, int]) -> Molecule:
    """Rewrite atom ids (and every edge endpoint) through ``perm``.

    ``perm`` must be defined on exactly the molecule's atom ids and be
    injective; the image may be a fresh id set (e.g. renumbering to 1..n).
    """
    ids = set(m.atom_ids)
    if set(perm) != ids:
        raise DomainMismatch(f"permutation domain {sorted(perm)} != atom ids {sorted(ids)}")
    images = list(perm.values())
    if len(set(images)) != len(images):
        raise NotABijection("permutation maps two atoms to the same id")
    if any(not _is_int(v) or v < 1 for v in images):
        raise NotABijection(f"invalid target ids {sorted(images, key=repr)}")
    atoms = tuple(replace(a, atom_id=perm[a.atom_id]) for a in m.atoms)
    systems = tuple(
        BondingSystem(s.electrons, tuple((perm[i], perm[j]) for i, j in s.edges)) for s in m.systems
    )
    return Molecule(atoms, systems)


def net_charge(m: Molecule) -> int:
    """Protons minus electrons, counting shared electrons once.

    In-molecule shells are taken to hold only core and unshared
    electrons; shared electrons are counted from the bonding systems.
    """
    protons = sum(a.attributes.atomic_number for a in m.atoms)
    electrons = sum(total_electrons(a.shells) for a in m.atoms) + sum(s.electrons for s in m.systems)
    return protons - electrons


def lint_molecule(m: Molecule) -> list[str]:
    """Non-fatal oddities worth reporting."""
    notes = []
    for k, system in enumerate(m.systems):
        if not system.is_connected():
            notes.append(f"system {k} spans a disconnected edge set {list(system.edges)}")
    return notes
