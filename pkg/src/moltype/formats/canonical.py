"""Canonical, line-oriented text format for molecules.

::

    MOLECULE v1
    ATOM <id> <symbol> <Z> <weight> <x> <y> <z>
    SHELLS <id> <config> [overrides...]
    SYSTEM <electrons> <i-j> [<i-j> ...]
    END

Atoms are written in ascending id, each followed by its ``SHELLS`` line
when it has any shells.  Systems are sorted by electron count, then by
their (normalized, sorted) edge list.  Floats use Python's shortest
round-trip ``repr`` so every coordinate survives a round trip bit-exactly.

Shell configurations use ``.``-separated subshell tokens.  ``2p2`` means
the default layout (Hund filling in label order, axis orientations for p,
empty orbitals omitted); anything else is spelled out as
``2p[Px:2,Py:1,Pz:1]``.  A shell with no subshells is a bare ``n``.
Override tokens follow the config: ``@2p.0=x,y,z`` sets the orientation
of orbital 0 in 2p (``@2p.0=-`` clears it) and ``~2p.0=w:Label,...``
gives hybrid components.
"""

from __future__ import annotations

import re
from typing import Optional

from ..coordinate import Coordinate
from ..elements import AtomicSymbol, ElementAttributes, UnsupportedSymbol
from ..molecule import Atom, BondingSystem, Molecule, MoleculeError
from ..orbitals import (
    LABELS_BY_KIND,
    SUBSHELL_KINDS,
    Orbital,
    OrbitalLabel,
    Shell,
    Shells,
    SubShell,
    default_orientation,
    subshell_from_count,
)

__all__ = [
    "HEADER",
    "MolSyntaxError",
    "SemanticError",
    "serialize_molecule",
    "parse_molecule",
    "serialize_shells",
    "parse_shells",
    "dumps_line",
    "loads_line",
    "format_float",
]

HEADER = "MOLECULE v1"

_INT = re.compile(r"-?\d+\Z")
_POS_INT = re.compile(r"[1-9]\d*\Z")
_FLOAT = re.compile(r"-?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?\Z")
_EDGE = re.compile(r"([1-9]\d*)-([1-9]\d*)\Z")
_SUB_DEFAULT = re.compile(r"([1-9]\d*)([spdf])(\d+)\Z")
_SUB_EXPLICIT = re.compile(r"([1-9]\d*)([spdf])\[(.*)\]\Z")
_SHELL_BARE = re.compile(r"([1-9]\d*)\Z")
_OVERRIDE = re.compile(r"([@~])([1-9]\d*)([spdf])\.(\d+)=(.*)\Z")


class MolSyntaxError(ValueError):
    def __init__(self, line: int, column: int, expected: str, found: str = ""):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        got = f", found {found!r}" if found else ""
        super().__init__(f"line {line}, column {column}: expected {expected}{got}")


class SemanticError(ValueError):
    """The document is well-formed but describes an invalid molecule."""

    def __init__(self, cause: Exception, line: Optional[int] = None):
        self.cause = cause
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{cause}")


def format_float(value: float) -> str:
    return repr(float(value))


# -- shells ---------------------------------------------------------------


def _coord_text(c: Coordinate) -> str:
    return ",".join(format_float(v) for v in (c.x, c.y, c.z))


def _is_default_layout(kind: str, sub: SubShell) -> bool:
    counts = [o.electron_count for o in sub.orbitals]
    if not all(isinstance(c, int) and not isinstance(c, bool) for c in counts):
        return False
    total = sum(counts)
    if not 0 <= total <= 2 * len(LABELS_BY_KIND[kind]):
        return False
    expected = subshell_from_count(kind, total)
    return [(o.label, o.electron_count) for o in sub.orbitals] == [
        (o.label, o.electron_count) for o in expected.orbitals
    ]


def serialize_shells(shells: Shells) -> str:
    """Config string plus override tokens, space separated."""
    tokens = []
    overrides = []
    previous_n = 0
    for shell in shells:
        if shell.n <= previous_n:
            raise ValueError(f"shells must have strictly increasing n to serialize, got n={shell.n}")
        previous_n = shell.n
        subs = list(shell.subshells())
        if not subs:
            tokens.append(str(shell.n))
        for kind, sub in subs:
            if sub.kind != kind:
                raise ValueError(f"subshell of kind {sub.kind!r} stored in the {kind} slot")
            name = f"{shell.n}{kind}"
            if _is_default_layout(kind, sub):
                tokens.append(f"{name}{sub.electrons}")
            else:
                body = ",".join(f"{OrbitalLabel(o.label).value}:{int(o.electron_count)}" for o in sub.orbitals)
                tokens.append(f"{name}[{body}]")
            for index, orbital in enumerate(sub.orbitals):
                if orbital.orientation != default_orientation(orbital.label):
                    value = "-" if orbital.orientation is None else _coord_text(orbital.orientation)
                    overrides.append(f"@{name}.{index}={value}")
                if orbital.hybrid_components is not None:
                    value = ",".join(
                        f"{format_float(w)}:{OrbitalLabel(lab).value}" for w, lab in orbital.hybrid_components
                    )
                    overrides.append(f"~{name}.{index}={value}")
    return " ".join([".".join(tokens)] + overrides)


class _ShellSyntax(ValueError):
    def __init__(self, offset: int, expected: str, found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(expected)


def _parse_coordinate_text(text: str) -> Coordinate:
    parts = text.split(",")
    if len(parts) != 3 or not all(_FLOAT.match(p) for p in parts):
        raise ValueError(text)
    return Coordinate(*(float(p) for p in parts))


def _parse_config(config: str, offset: int) -> list[list]:
    """Return [[n, {kind: [[label, count, orientation, hybrid], ...]}, bare], ...]."""
    shells: list[list] = []
    position = offset
    for token in config.split("."):
        n: int
        kind: Optional[str] = None
        orbitals: list[list] = []
        m = _SUB_DEFAULT.match(token)
        if m:
            n, kind, total = int(m.group(1)), m.group(2), int(m.group(3))
            if total > 2 * len(LABELS_BY_KIND[kind]):
                raise _ShellSyntax(position, f"at most {2 * len(LABELS_BY_KIND[kind])} electrons for {kind}", token)
            orbitals = [[o.label, o.electron_count, o.orientation, None] for o in subshell_from_count(kind, total).orbitals]
        elif _SUB_EXPLICIT.match(token):
            m = _SUB_EXPLICIT.match(token)
            n, kind, body = int(m.group(1)), m.group(2), m.group(3)
            for item in body.split(",") if body else []:
                label_text, sep, count_text = item.partition(":")
                try:
                    label = OrbitalLabel(label_text)
                except ValueError:
                    raise _ShellSyntax(position, "orbital label", label_text) from None
                if not sep or not _INT.match(count_text):
                    raise _ShellSyntax(position, "orbital electron count", item)
                orbitals.append([label, int(count_text), default_orientation(label), None])
        elif _SHELL_BARE.match(token):
            n = int(token)
        else:
            raise _ShellSyntax(position, "subshell token like 2p2", token)
        # a token joins the previous shell only if it continues it in s, p, d, f order
        joins = (
            kind is not None
            and shells
            and not shells[-1][2]
            and shells[-1][0] == n
            and all(SUBSHELL_KINDS.index(k) < SUBSHELL_KINDS.index(kind) for k in shells[-1][1])
        )
        if not joins:
            if shells and n <= shells[-1][0]:
                raise _ShellSyntax(position, f"principal number greater than {shells[-1][0]}", token)
            shells.append([n, {}, kind is None])
        if kind is not None:
            shells[-1][1][kind] = orbitals
        position += len(token) + 1
    return shells


def parse_shells(text: str) -> Shells:
    """Inverse of :func:`serialize_shells`."""
    try:
        return _parse_shells(text, 0)
    except _ShellSyntax as exc:
        raise MolSyntaxError(1, exc.offset + 1, exc.expected, exc.found) from None


def _parse_shells(text: str, offset: int) -> Shells:
    tokens = text.split(" ")
    if not tokens or not tokens[0]:
        raise _ShellSyntax(offset, "shell configuration", text)
    shells = _parse_config(tokens[0], offset)
    by_name = {
        f"{n}{kind}": orbitals for n, subs, _ in shells for kind, orbitals in subs.items()
    }
    position = offset + len(tokens[0]) + 1
    for token in tokens[1:]:
        m = _OVERRIDE.match(token)
        if not m:
            raise _ShellSyntax(position, "override token like @2p.0=x,y,z", token)
        marker, name, index, value = m.group(1), m.group(2) + m.group(3), int(m.group(4)), m.group(5)
        if name not in by_name or index >= len(by_name[name]):
            raise _ShellSyntax(position, "reference to an existing orbital", token)
        orbital = by_name[name][index]
        try:
            if marker == "@":
                orbital[2] = None if value == "-" else _parse_coordinate_text(value)
            else:
                components = []
                for item in value.split(",") if value else []:
                    w, sep, lab = item.partition(":")
                    if not sep or not _FLOAT.match(w):
                        raise ValueError(item)
                    components.append((float(w), OrbitalLabel(lab)))
                orbital[3] = tuple(components)
        except ValueError:
            raise _ShellSyntax(position, "orientation x,y,z or hybrid w:Label list", token) from None
        position += len(token) + 1
    out = []
    for n, subs, _ in shells:
        fields = {
            kind: SubShell(kind, tuple(Orbital(lab, cnt, ori, hyb) for lab, cnt, ori, hyb in orbitals))
            for kind, orbitals in subs.items()
        }
        out.append(Shell(n, **fields))
    return tuple(out)


# -- molecules ------------------------------------------------------------


def serialize_molecule(m: Molecule) -> str:
    lines = [HEADER]
    for atom in sorted(m.atoms, key=lambda a: a.atom_id):
        attr = atom.attributes
        c = atom.coordinate
        lines.append(
            f"ATOM {atom.atom_id} {attr.symbol.value} {attr.atomic_number} {format_float(attr.atomic_weight)} "
            f"{format_float(c.x)} {format_float(c.y)} {format_float(c.z)}"
        )
        if atom.shells:
            lines.append(f"SHELLS {atom.atom_id} {serialize_shells(atom.shells)}")
    for system in sorted(m.systems, key=BondingSystem.sort_key):
        edges = " ".join(f"{i}-{j}" for i, j in system.edges)
        lines.append(f"SYSTEM {system.electrons} {edges}")
    lines.append("END")
    return "\n".join(lines) + "\n"


def dumps_line(m: Molecule) -> str:
    """Single-line form: the canonical lines joined by ``;``."""
    return serialize_molecule(m).rstrip("\n").replace("\n", ";")


def loads_line(text: str) -> Molecule:
    return parse_molecule(text.strip().replace(";", "\n"))


class _Cursor:
    def __init__(self, line_no: int, text: str):
        self.line_no = line_no
        self.text = text
        self.tokens = text.split(" ")
        self.columns = []
        col = 1
        for tok in self.tokens:
            self.columns.append(col)
            col += len(tok) + 1
        self.pos = 0

    def _column(self) -> int:
        if self.pos < len(self.tokens):
            return self.columns[self.pos]
        return len(self.text) + 1

    def take(self, pattern: re.Pattern, expected: str) -> str:
        if self.pos >= len(self.tokens):
            raise MolSyntaxError(self.line_no, self._column(), expected, "end of line")
        tok = self.tokens[self.pos]
        if not pattern.match(tok):
            raise MolSyntaxError(self.line_no, self._column(), expected, tok)
        self.pos += 1
        return tok

    def rest(self) -> tuple[int, str]:
        column = self._column()
        return column, " ".join(self.tokens[self.pos:])

    def done(self) -> None:
        if self.pos < len(self.tokens):
            raise MolSyntaxError(self.line_no, self._column(), "end of line", self.tokens[self.pos])


_SYMBOL = re.compile(r"[A-Z][a-z]?\Z")


def parse_molecule(doc: str) -> Molecule:
    """Inverse of :func:`serialize_molecule`.

    Raises :class:`MolSyntaxError` for malformed text and
    :class:`SemanticError` when the content violates molecule invariants.
    """
    text = doc.strip()
    lines = text.split("\n") if text else []
    if not lines or lines[0] != HEADER:
        found = lines[0] if lines else "end of document"
        raise MolSyntaxError(1, 1, repr(HEADER), found)
    atoms: list[Atom] = []
    atom_lines: dict[int, int] = {}
    shells_for: dict[int, Shells] = {}
    systems: list[tuple[int, tuple]] = []
    system_lines: list[int] = []
    last_atom: Optional[int] = None
    section = "atoms"
    ended = False
    for index in range(1, len(lines)):
        line_no = index + 1
        line = lines[index]
        if ended:
            raise MolSyntaxError(line_no, 1, "end of document", line)
        cur = _Cursor(line_no, line)
        keyword = cur.tokens[0]
        if keyword == "END" and line == "END":
            ended = True
            continue
        if keyword == "ATOM" and section == "atoms":
            cur.pos = 1
            atom_id = int(cur.take(_POS_INT, "atom id"))
            symbol_col = cur._column()
            symbol_text = cur.take(_SYMBOL, "atomic symbol")
            z = int(cur.take(_INT, "atomic number"))
            weight = float(cur.take(_FLOAT, "atomic weight"))
            xyz = [float(cur.take(_FLOAT, f"{axis} coordinate")) for axis in "xyz"]
            cur.done()
            if last_atom is not None and atom_id <= last_atom:
                raise MolSyntaxError(line_no, 6, f"atom id greater than {last_atom}", str(atom_id))
            try:
                symbol = AtomicSymbol.parse(symbol_text)
            except UnsupportedSymbol:
                raise MolSyntaxError(line_no, symbol_col, "supported atomic symbol", symbol_text) from None
            try:
                atoms.append(Atom(atom_id, ElementAttributes(symbol, z, weight), Coordinate(*xyz)))
            except ValueError as exc:
                raise SemanticError(exc, line_no) from exc
            atom_lines[atom_id] = line_no
            last_atom = atom_id
            continue
        if keyword == "SHELLS" and section == "atoms":
            cur.pos = 1
            id_col = cur._column()
            atom_id = int(cur.take(_POS_INT, "atom id"))
            if atom_id != last_atom or atom_id in shells_for:
                raise MolSyntaxError(line_no, id_col, f"id of the preceding ATOM ({last_atom})", str(atom_id))
            column, rest = cur.rest()
            try:
                shells_for[atom_id] = _parse_shells(rest, 0)
            except _ShellSyntax as exc:
                raise MolSyntaxError(line_no, column + exc.offset, exc.expected, exc.found) from None
            continue
        if keyword == "SYSTEM":
            section = "systems"
            cur.pos = 1
            electrons = int(cur.take(_INT, "shared electron count"))
            edges = []
            while True:
                edge_text = cur.take(_EDGE, "edge like 1-2")
                m = _EDGE.match(edge_text)
                edges.append((int(m.group(1)), int(m.group(2))))
                if cur.pos >= len(cur.tokens):
                    break
            systems.append((electrons, tuple(edges)))
            system_lines.append(line_no)
            continue
        expected = "SYSTEM or END" if section == "systems" else "ATOM, SHELLS, SYSTEM or END"
        raise MolSyntaxError(line_no, 1, expected, keyword)
    if not ended:
        raise MolSyntaxError(len(lines) + 1, 1, "END")
    atoms = [
        Atom(a.atom_id, a.attributes, a.coordinate, shells_for.get(a.atom_id, ())) for a in atoms
    ]
    try:
        return Molecule(tuple(atoms), tuple(systems))
    except MoleculeError as exc:
        index = getattr(exc, "index", None)
        line = system_lines[index] if isinstance(index, int) and index < len(system_lines) else None
        raise SemanticError(exc, line) from exc
