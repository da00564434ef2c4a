"""Element symbols and per-element constants."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class AtomicSymbol(str, enum.Enum):
    O = "O"
    H = "H"
    N = "N"
    C = "C"
    B = "B"
    Fe = "Fe"
    F = "F"
    Cl = "Cl"
    S = "S"
    Br = "Br"
    P = "P"
    I = "I"  # noqa: E741

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, token: str) -> AtomicSymbol:
        """Look up a symbol by its exact spelling (``"Cl"``, not ``"CL"``)."""
        try:
            return cls(token)
        except ValueError:
            raise UnsupportedSymbol(token) from None


class UnsupportedSymbol(ValueError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"unsupported atomic symbol {token!r}")


# (atomic number, standard atomic weight in u, valence electrons)
_TABLE: dict[AtomicSymbol, tuple[int, float, int]] = {
    AtomicSymbol.H: (1, 1.008, 1),
    AtomicSymbol.B: (5, 10.81, 3),
    AtomicSymbol.C: (6, 12.011, 4),
    AtomicSymbol.N: (7, 14.007, 5),
    AtomicSymbol.O: (8, 15.999, 6),
    AtomicSymbol.F: (9, 18.998, 7),
    AtomicSymbol.P: (15, 30.974, 5),
    AtomicSymbol.S: (16, 32.06, 6),
    AtomicSymbol.Cl: (17, 35.45, 7),
    AtomicSymbol.Fe: (26, 55.845, 8),
    AtomicSymbol.Br: (35, 79.904, 7),
    AtomicSymbol.I: (53, 126.90, 7),
}


@dataclass(frozen=True)
class ElementAttributes:
    symbol: AtomicSymbol
    atomic_number: int
    atomic_weight: float

    def __post_init__(self):
        if not isinstance(self.symbol, AtomicSymbol):
            object.__setattr__(self, "symbol", AtomicSymbol.parse(self.symbol))
        expected = _TABLE[self.symbol][0]
        if self.atomic_number != expected:
            raise ValueError(
                f"atomic number {self.atomic_number} does not match {self.symbol} ({expected})"
            )
        if not (math.isfinite(self.atomic_weight) and self.atomic_weight > 0):
            raise ValueError(f"atomic weight must be positive, got {self.atomic_weight}")


def element_attributes(symbol: AtomicSymbol | str) -> ElementAttributes:
    if not isinstance(symbol, AtomicSymbol):
        symbol = AtomicSymbol.parse(symbol)
    z, weight, _ = _TABLE[symbol]
    return ElementAttributes(symbol, z, weight)


def valence_electrons(symbol: AtomicSymbol) -> int:
    return _TABLE[symbol][2]


def symbol_for_number(z: int) -> AtomicSymbol:
    for symbol, row in _TABLE.items():
        if row[0] == z:
            return symbol
    raise KeyError(z)
