"""MDL molfile V2000 / SD file reading and writing.

Bond types 1-3 become localized systems with 2, 4 or 6 electrons.
Aromatic bonds (type 4) each get a two-electron sigma system, and every
connected component of aromatic bonds gets one delocalized system whose
electron count equals the number of atoms in the component.  That
reproduces the usual six-electron ring for benzene; other ring sizes are
flagged with a warning since the rule is a heuristic.

Atoms receive core shells plus their unshared valence electrons (valence
minus the electrons they contribute to bonding systems).  Charges,
isotopes and other property lines are ignored with a warning.
"""

from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from ..coordinate import Coordinate
from ..elements import AtomicSymbol, UnsupportedSymbol, element_attributes, valence_electrons
from ..molecule import Atom, BondingSystem, Molecule, MoleculeError
from ..orbitals import molecular_shells

__all__ = [
    "SdfError",
    "MalformedCountsLine",
    "MalformedAtomLine",
    "MalformedBondLine",
    "UnsupportedBondType",
    "UnrepresentableInSdf",
    "SdfWarning",
    "SdfRecord",
    "read_sdf",
    "parse_sdf",
    "write_sdf",
    "shared_electron_share",
]

RECORD_DELIMITER = "$$$$"


class SdfError(ValueError):
    pass


class MalformedCountsLine(SdfError):
    pass


class MalformedAtomLine(SdfError):
    pass


class MalformedBondLine(SdfError):
    pass


class UnsupportedBondType(SdfError):
    def __init__(self, code):
        self.code = code
        super().__init__(f"unsupported bond type {code!r} (only 1-4 are read)")


class UnrepresentableInSdf(SdfError):
    pass


class SdfWarning(UserWarning):
    pass


@dataclass
class SdfRecord:
    index: int
    title: str = ""
    molecule: Optional[Molecule] = None
    error: Optional[Exception] = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.error is None


def _split_records(text: str) -> list[list[str]]:
    lines = text.replace("\r\n", "\n").split("\n")
    records, current = [], []
    for line in lines:
        if line.strip() == RECORD_DELIMITER:
            records.append(current)
            current = []
        else:
            current.append(line)
    if any(line.strip() for line in current):
        records.append(current)
    return records


def _int_field(line: str, start: int, stop: int, exc: type, what: str) -> int:
    text = line[start:stop].strip()
    try:
        return int(text)
    except ValueError:
        raise exc(f"{what}: cannot read {text!r} from {line!r}") from None


def _float_field(line: str, start: int, stop: int, what: str) -> float:
    text = line[start:stop].strip()
    try:
        return float(text)
    except ValueError:
        raise MalformedAtomLine(f"{what}: cannot read {text!r} from {line!r}") from None


def shared_electron_share(systems: Iterable[BondingSystem]) -> dict[int, Fraction]:
    """Electrons each atom contributes to bonding: for each system,
    ``electrons * (edges at the atom) / (2 * edges)``."""
    share: dict[int, Fraction] = defaultdict(Fraction)
    for system in systems:
        per_edge_end = Fraction(system.electrons, 2 * len(system.edges))
        for i, j in system.edges:
            share[i] += per_edge_end
            share[j] += per_edge_end
    return share


def _components(edges: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in edges:
        parent[find(i)] = find(j)
    groups: dict[int, list] = defaultdict(list)
    for edge in edges:
        groups[find(edge[0])].append(edge)
    return sorted(groups.values(), key=lambda g: min(g))


def _is_simple_cycle(edges: list[tuple[int, int]], size: int) -> bool:
    degree: dict[int, int] = defaultdict(int)
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
    return len(edges) == size and len(degree) == size and all(d == 2 for d in degree.values())


def _parse_record(index: int, lines: list[str]) -> SdfRecord:
    record = SdfRecord(index, title=lines[0].strip() if lines else "")
    if len(lines) < 4:
        raise MalformedCountsLine(f"record {index}: missing header or counts line")
    counts = lines[3]
    if "V3000" in counts:
        raise MalformedCountsLine(f"record {index}: V3000 connection tables are not supported")
    n_atoms = _int_field(counts, 0, 3, MalformedCountsLine, "atom count")
    n_bonds = _int_field(counts, 3, 6, MalformedCountsLine, "bond count")
    if n_atoms < 0 or n_bonds < 0:
        raise MalformedCountsLine(f"record {index}: negative counts in {counts!r}")
    if len(lines) < 4 + n_atoms + n_bonds:
        raise MalformedCountsLine(f"record {index}: counts line promises more lines than present")

    symbols: list[AtomicSymbol] = []
    coords: list[Coordinate] = []
    for line in lines[4 : 4 + n_atoms]:
        if len(line) < 32:
            raise MalformedAtomLine(f"atom line too short: {line!r}")
        x = _float_field(line, 0, 10, "x")
        y = _float_field(line, 10, 20, "y")
        z = _float_field(line, 20, 30, "z")
        symbols.append(AtomicSymbol.parse(line[31:34].strip()))
        coords.append(Coordinate(x, y, z))
        charge = line[36:39].strip()
        if charge and charge != "0":
            record.notes.append(f"atom-block charge code {charge} ignored")

    systems: list[BondingSystem] = []
    aromatic: list[tuple[int, int]] = []
    for line in lines[4 + n_atoms : 4 + n_atoms + n_bonds]:
        a = _int_field(line, 0, 3, MalformedBondLine, "first atom")
        b = _int_field(line, 3, 6, MalformedBondLine, "second atom")
        code = _int_field(line, 6, 9, MalformedBondLine, "bond type")
        if not (1 <= a <= n_atoms and 1 <= b <= n_atoms):
            raise MalformedBondLine(f"bond {a}-{b} references a missing atom")
        if code in (1, 2, 3):
            systems.append(BondingSystem(2 * code, ((a, b),)))
        elif code == 4:
            systems.append(BondingSystem(2, ((a, b),)))
            aromatic.append((min(a, b), max(a, b)))
        else:
            raise UnsupportedBondType(code)
    for component in _components(aromatic):
        size = len({i for edge in component for i in edge})
        if not _is_simple_cycle(component, 6):
            record.notes.append(
                f"aromatic component over {size} atoms given {size} pi electrons (heuristic)"
            )
        systems.append(BondingSystem(size, tuple(component)))

    for line in lines[4 + n_atoms + n_bonds :]:
        if line.startswith("M  END"):
            break
        if line.startswith("M  "):
            record.notes.append(f"property line ignored: {line.strip()}")

    share = shared_electron_share(systems)
    atoms = []
    for atom_id, (symbol, coord) in enumerate(zip(symbols, coords), start=1):
        unshared = valence_electrons(symbol) - share.get(atom_id, Fraction(0))
        if unshared.denominator != 1 or unshared < 0:
            record.notes.append(f"atom {atom_id}: {unshared} unshared electrons rounded into range")
        unshared_int = max(0, int(unshared))
        atoms.append(Atom(atom_id, element_attributes(symbol), coord, molecular_shells(symbol, unshared_int)))
    record.molecule = Molecule(tuple(atoms), tuple(systems))
    return record


def read_sdf(data: Union[bytes, str]) -> list[SdfRecord]:
    """Parse every record; a failing record carries its error instead of a molecule."""
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
    out = []
    for index, lines in enumerate(_split_records(text)):
        try:
            out.append(_parse_record(index, lines))
        except (SdfError, UnsupportedSymbol, MoleculeError, ValueError) as exc:
            out.append(SdfRecord(index, title=lines[0].strip() if lines else "", error=exc))
    return out


def parse_sdf(data: Union[bytes, str]) -> list[Molecule]:
    """Molecules from every readable record.

    Bad records are skipped with an :class:`SdfWarning`; use
    :func:`read_sdf` to inspect errors directly.
    """
    molecules = []
    for record in read_sdf(data):
        for note in record.notes:
            warnings.warn(f"record {record.index}: {note}", SdfWarning, stacklevel=2)
        if record.error is not None:
            warnings.warn(f"record {record.index} skipped: {record.error}", SdfWarning, stacklevel=2)
        else:
            molecules.append(record.molecule)
    return molecules


def _bond_block(m: Molecule, index_of: dict[int, int]) -> list[tuple[int, int, int]]:
    localized: dict[tuple[int, int], list[BondingSystem]] = defaultdict(list)
    delocalized = []
    for system in m.systems:
        (localized[system.edges[0]] if system.is_localized else delocalized).append(system)
    aromatic_edges = set()
    for system in delocalized:
        size = len(system.atom_ids)
        if system.electrons != size:
            raise UnrepresentableInSdf(
                f"delocalized system with {system.electrons} electrons over {size} atoms has no molfile bond type"
            )
        aromatic_edges.update(system.edges)
    components = _components(sorted(aromatic_edges))
    if len(components) != len(delocalized):
        raise UnrepresentableInSdf("overlapping delocalized systems cannot be written as aromatic bonds")
    bonds = []
    for edge in sorted(set(localized) | aromatic_edges):
        here = localized.get(edge, [])
        if edge in aromatic_edges:
            if [s.electrons for s in here] != [2]:
                raise UnrepresentableInSdf(f"aromatic edge {edge} needs exactly one 2-electron sigma system")
            code = 4
        else:
            if len(here) != 1 or here[0].electrons not in (2, 4, 6):
                raise UnrepresentableInSdf(f"edge {edge} carries systems {[s.electrons for s in here]}")
            code = here[0].electrons // 2
        bonds.append((index_of[edge[0]], index_of[edge[1]], code))
    return bonds


def write_sdf(molecules: Iterable[Molecule], titles: Optional[Iterable[str]] = None) -> str:
    """Write V2000 records.

    Coordinates are rounded to 4 decimals and shells are not stored, so
    this is lossy; only bonding that maps onto molfile bond types is
    accepted (:class:`UnrepresentableInSdf` otherwise).
    """
    molecules = list(molecules)
    titles = list(titles) if titles is not None else [""] * len(molecules)
    chunks = []
    for m, title in zip(molecules, titles):
        atoms = sorted(m.atoms, key=lambda a: a.atom_id)
        index_of = {a.atom_id: k for k, a in enumerate(atoms, start=1)}
        bonds = _bond_block(m, index_of)
        if len(atoms) > 999 or len(bonds) > 999:
            raise UnrepresentableInSdf("V2000 holds at most 999 atoms and 999 bonds")
        lines = [title, "  moltype", ""]
        lines.append(f"{len(atoms):3d}{len(bonds):3d}  0  0  0  0  0  0  0  0999 V2000")
        for a in atoms:
            c = a.coordinate
            lines.append(
                f"{c.x:10.4f}{c.y:10.4f}{c.z:10.4f} {a.symbol.value:<3} 0  0  0  0  0  0  0  0  0  0  0  0"
            )
        for i, j, code in bonds:
            lines.append(f"{i:3d}{j:3d}{code:3d}  0  0  0  0")
        lines.append("M  END")
        lines.append(RECORD_DELIMITER)
        chunks.append("\n".join(lines))
    return "\n".join(chunks) + ("\n" if chunks else "")
