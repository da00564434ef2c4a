"""Shell / subshell / orbital structure and electron-configuration rules.

The structures here are deliberately permissive: any shape can be built,
and :func:`validate_shells` reports which occupancy rules a value breaks.
:func:`ground_state_config` only ever produces values that validate.

Two conventions coexist for the shells stored on an atom:

* isolated atoms carry their full ground state;
* atoms inside a molecule carry core plus *unshared* valence electrons,
  the shared ones living in the molecule's bonding systems
  (see :func:`molecular_shells`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .coordinate import Coordinate
from .elements import AtomicSymbol, _TABLE

__all__ = [
    "OrbitalLabel",
    "Orbital",
    "SubShell",
    "Shell",
    "Shells",
    "Violation",
    "UnsupportedZ",
    "SUBSHELL_KINDS",
    "ground_state_config",
    "validate_shells",
    "total_electrons",
    "compact_config",
    "subshell_from_count",
    "default_orientation",
    "core_electron_count",
    "molecular_shells",
    "unshared_electrons",
    "unpaired_electrons",
]


class OrbitalLabel(str, enum.Enum):
    S = "S"
    Px = "Px"
    Py = "Py"
    Pz = "Pz"
    Dxy = "Dxy"
    Dyz = "Dyz"
    Dxz = "Dxz"
    Dx2y2 = "Dx2y2"
    Dz2 = "Dz2"
    Fxxx = "Fxxx"
    Fxxy = "Fxxy"
    Fxxz = "Fxxz"
    Fxyy = "Fxyy"
    Fxyz = "Fxyz"
    Fxzz = "Fxzz"
    Fzzz = "Fzzz"

    def __str__(self) -> str:
        return self.value

    @property
    def kind(self) -> str:
        return self.value[0].lower()


SUBSHELL_KINDS = ("s", "p", "d", "f")

LABELS_BY_KIND: dict[str, tuple[OrbitalLabel, ...]] = {
    kind: tuple(label for label in OrbitalLabel if label.kind == kind) for kind in SUBSHELL_KINDS
}
ELECTRON_CAPACITY = {"s": 2, "p": 6, "d": 10, "f": 14}
MIN_N = {"s": 1, "p": 2, "d": 3, "f": 4}
_L = {"s": 0, "p": 1, "d": 2, "f": 3}

_P_AXES = {
    OrbitalLabel.Px: Coordinate(1.0, 0.0, 0.0),
    OrbitalLabel.Py: Coordinate(0.0, 1.0, 0.0),
    OrbitalLabel.Pz: Coordinate(0.0, 0.0, 1.0),
}


def default_orientation(label: OrbitalLabel) -> Optional[Coordinate]:
    """Axis unit vector for p orbitals; ``None`` for everything else."""
    return _P_AXES.get(label)


@dataclass(frozen=True)
class Orbital:
    label: OrbitalLabel
    electron_count: int
    orientation: Optional[Coordinate] = None
    # (weight, pure orbital) pairs; None for a pure orbital
    hybrid_components: Optional[tuple[tuple[float, OrbitalLabel], ...]] = None

    def __post_init__(self):
        # lists are frozen to tuples; anything else is left for validate_shells to report
        if isinstance(self.hybrid_components, list):
            object.__setattr__(self, "hybrid_components", tuple(self.hybrid_components))


@dataclass(frozen=True)
class SubShell:
    kind: str
    orbitals: tuple[Orbital, ...] = ()

    def __post_init__(self):
        if not isinstance(self.orbitals, tuple):
            object.__setattr__(self, "orbitals", tuple(self.orbitals))

    @property
    def electrons(self) -> int:
        return sum(o.electron_count for o in self.orbitals)


@dataclass(frozen=True)
class Shell:
    n: int
    s: Optional[SubShell] = None
    p: Optional[SubShell] = None
    d: Optional[SubShell] = None
    f: Optional[SubShell] = None

    def subshells(self) -> Iterator[tuple[str, SubShell]]:
        for kind in SUBSHELL_KINDS:
            sub = getattr(self, kind)
            if sub is not None:
                yield kind, sub


Shells = tuple[Shell, ...]


@dataclass(frozen=True)
class Violation:
    rule: str
    location: str
    detail: str = field(default="", compare=False)

    def __str__(self) -> str:
        return f"{self.rule} at {self.location}: {self.detail}" if self.detail else f"{self.rule} at {self.location}"


class UnsupportedZ(ValueError):
    def __init__(self, z):
        self.z = z
        super().__init__(f"ground-state configurations are generated for 1 <= Z <= 36, got {z!r}")


def _madelung_order(max_n: int = 7) -> list[tuple[int, str]]:
    pairs = [(n, kind) for n in range(1, max_n + 1) for kind in SUBSHELL_KINDS if _L[kind] < n]
    return sorted(pairs, key=lambda nk: (nk[0] + _L[nk[1]], nk[0]))


_MADELUNG = _madelung_order()


def subshell_from_count(kind: str, electrons: int) -> SubShell:
    """Hund-fill ``electrons`` into a subshell of ``kind``.

    Orbitals are singly occupied in declaration order before any is paired;
    empty orbitals are omitted.
    """
    labels = LABELS_BY_KIND[kind]
    m = len(labels)
    if not 0 <= electrons <= 2 * m:
        raise ValueError(f"{electrons} electrons do not fit a {kind} subshell")
    counts = [(1 if i < electrons else 0) + (1 if i < electrons - m else 0) for i in range(m)]
    return SubShell(
        kind,
        tuple(
            Orbital(label, c, default_orientation(label))
            for label, c in zip(labels, counts)
            if c > 0
        ),
    )


def _shells_from_occupancy(occupancy: dict[tuple[int, str], int]) -> Shells:
    shells = []
    for n in sorted({n for n, _ in occupancy}):
        subs = {
            kind: subshell_from_count(kind, occupancy[(n, kind)])
            for kind in SUBSHELL_KINDS
            if (n, kind) in occupancy
        }
        shells.append(Shell(n, **subs))
    return tuple(shells)


def _madelung_occupancy(electrons: int) -> dict[tuple[int, str], int]:
    occupancy = {}
    remaining = electrons
    for n, kind in _MADELUNG:
        if remaining <= 0:
            break
        take = min(remaining, ELECTRON_CAPACITY[kind])
        occupancy[(n, kind)] = take
        remaining -= take
    return occupancy


def ground_state_config(z: int) -> Shells:
    """Neutral ground-state configuration by pure Madelung filling.

    No exception table: chromium comes out as ``[Ar]3d4 4s2`` and copper
    as ``[Ar]3d9 4s2``.
    """
    if isinstance(z, bool) or not isinstance(z, int) or not 1 <= z <= 36:
        raise UnsupportedZ(z)
    return _shells_from_occupancy(_madelung_occupancy(z))


def total_electrons(shells: Sequence[Shell]) -> int:
    return sum(o.electron_count for shell in shells for _, sub in shell.subshells() for o in sub.orbitals)


def unpaired_electrons(shells: Sequence[Shell]) -> int:
    return sum(
        1 for shell in shells for _, sub in shell.subshells() for o in sub.orbitals if o.electron_count == 1
    )


def compact_config(shells: Sequence[Shell]) -> str:
    """Render e.g. ``1s2.2s2.2p2``; subshells ordered by n, then s, p, d, f."""
    return ".".join(f"{shell.n}{kind}{sub.electrons}" for shell in shells for kind, sub in shell.subshells())


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _validate_orbital(orbital, kind: str, where: str, out: list[Violation]) -> None:
    label = getattr(orbital, "label", None)
    count = getattr(orbital, "electron_count", None)
    if not isinstance(label, OrbitalLabel) or label.kind != kind:
        out.append(Violation("LabelKindMismatch", where, f"{label!r} in a {kind} subshell"))
    if not _is_int(count):
        out.append(Violation("BadElectronCount", where, f"electron count {count!r} is not an integer"))
    elif count < 0:
        out.append(Violation("BadElectronCount", where, f"negative electron count {count}"))
    elif count > 2:
        out.append(Violation("PauliExceeded", where, f"{count} electrons in one orbital"))
    if isinstance(label, OrbitalLabel) and label.kind == "s" and getattr(orbital, "orientation", None) is not None:
        out.append(Violation("OrientedSOrbital", where, "s orbitals are spherically symmetric"))
    components = getattr(orbital, "hybrid_components", None)
    if components is not None:
        try:
            if len(components) == 0:
                raise ValueError("empty")
            norm = math.fsum(float(w) * float(w) for w, _ in components)
            labels_ok = all(isinstance(lab, OrbitalLabel) for _, lab in components)
        except (TypeError, ValueError):
            norm, labels_ok = math.nan, False
        if not labels_ok or not abs(norm - 1.0) <= 1e-9:
            out.append(Violation("BadHybridNorm", where, f"sum of squared weights = {norm}"))


def validate_shells(shells) -> list[Violation]:
    """Check occupancy rules; return every violation found (empty when valid).

    Never raises: malformed values are reported, not rejected.
    """
    out: list[Violation] = []
    try:
        shell_list = list(shells)
    except TypeError:
        return [Violation("NotAShellSequence", "shells", repr(shells))]
    previous_n = 0
    for index, shell in enumerate(shell_list):
        n = getattr(shell, "n", None)
        where_shell = f"shell[{index}](n={n})"
        if not _is_int(n) or n < 1:
            out.append(Violation("BadPrincipalNumber", where_shell, f"n={n!r}"))
            n_value = None
        else:
            n_value = n
            if n <= previous_n:
                out.append(Violation("ShellOrder", where_shell, f"n={n} after n={previous_n}"))
            previous_n = max(previous_n, n)
        for kind in SUBSHELL_KINDS:
            sub = getattr(shell, kind, None)
            if sub is None:
                continue
            where_sub = f"{n}{kind}"
            if getattr(sub, "kind", kind) != kind:
                out.append(Violation("LabelKindMismatch", where_sub, f"subshell kind {sub.kind!r}"))
            if n_value is not None and n_value < MIN_N[kind]:
                out.append(Violation("SubshellBeforeAllowedN", where_sub, f"{kind} requires n >= {MIN_N[kind]}"))
            orbitals = list(getattr(sub, "orbitals", ()) or ())
            seen = set()
            total = 0
            for j, orbital in enumerate(orbitals):
                label = getattr(orbital, "label", None)
                where_orb = f"{where_sub}.{label}" if label is not None else f"{where_sub}[{j}]"
                _validate_orbital(orbital, kind, where_orb, out)
                try:
                    if label in seen:
                        out.append(Violation("DuplicateLabel", where_orb, f"{label} repeated"))
                    seen.add(label)
                except TypeError:
                    pass
                count = getattr(orbital, "electron_count", 0)
                if _is_int(count):
                    total += count
            if len(orbitals) > len(LABELS_BY_KIND[kind]):
                out.append(
                    Violation("CapacityExceeded", where_sub, f"{len(orbitals)} orbitals in a {kind} subshell")
                )
            if total > ELECTRON_CAPACITY[kind]:
                out.append(
                    Violation("CapacityExceeded", where_sub, f"{total} electrons > {ELECTRON_CAPACITY[kind]}")
                )
    return out


# In-molecule convention: valence subshells per element, filled in this order.
_VALENCE_SUBSHELLS: dict[AtomicSymbol, tuple[tuple[int, str], ...]] = {
    AtomicSymbol.H: ((1, "s"),),
    AtomicSymbol.B: ((2, "s"), (2, "p")),
    AtomicSymbol.C: ((2, "s"), (2, "p")),
    AtomicSymbol.N: ((2, "s"), (2, "p")),
    AtomicSymbol.O: ((2, "s"), (2, "p")),
    AtomicSymbol.F: ((2, "s"), (2, "p")),
    AtomicSymbol.P: ((3, "s"), (3, "p")),
    AtomicSymbol.S: ((3, "s"), (3, "p")),
    AtomicSymbol.Cl: ((3, "s"), (3, "p")),
    AtomicSymbol.Fe: ((4, "s"), (3, "d")),
    AtomicSymbol.Br: ((4, "s"), (4, "p")),
    AtomicSymbol.I: ((5, "s"), (5, "p")),
}


def core_electron_count(symbol: AtomicSymbol) -> int:
    z, _, valence = _TABLE[symbol]
    return z - valence


def molecular_shells(symbol: AtomicSymbol, unshared: int) -> Shells:
    """Core configuration plus ``unshared`` valence electrons.

    This is the shell content an atom carries inside a molecule, where
    the electrons it shares are accounted for by bonding systems.
    """
    z = _TABLE[symbol][0]
    valence = _VALENCE_SUBSHELLS[symbol]
    occupancy = {
        key: count for key, count in _madelung_occupancy(z).items() if key not in valence
    }
    if sum(occupancy.values()) != core_electron_count(symbol):
        raise AssertionError(f"core table inconsistent for {symbol}")
    room = sum(ELECTRON_CAPACITY[kind] for _, kind in valence)
    if not 0 <= unshared <= room:
        raise ValueError(f"{unshared} unshared electrons do not fit the valence subshells of {symbol}")
    remaining = unshared
    for n, kind in valence:
        if remaining == 0:
            break
        take = min(remaining, ELECTRON_CAPACITY[kind])
        occupancy[(n, kind)] = take
        remaining -= take
    return _shells_from_occupancy(occupancy)


def unshared_electrons(symbol: AtomicSymbol, shells: Sequence[Shell]) -> int:
    """Electrons in ``shells`` beyond the element's core, floored at 0."""
    return max(0, total_electrons(shells) - core_electron_count(symbol))
