"""Reactions between molecules, their conditions, and a stoichiometry check."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .elements import AtomicSymbol
from .formats.canonical import HEADER, MolSyntaxError, SemanticError, format_float, parse_molecule, serialize_molecule
from .molecule import Molecule

__all__ = [
    "ReactionError",
    "NonPositiveCoefficient",
    "NegativeRate",
    "EmptySide",
    "RationalCoefficients",
    "TempCondition",
    "PressureCondition",
    "Condition",
    "TimeWindow",
    "Reaction",
    "make_reaction",
    "balance_check",
    "is_balanced",
    "element_counts",
    "reverse_reaction",
    "scale_reaction",
    "serialize_reaction",
    "parse_reaction",
]

_INTEGER_TOL = 1e-9


class ReactionError(ValueError):
    pass


class NonPositiveCoefficient(ReactionError):
    pass


class NegativeRate(ReactionError):
    pass


class EmptySide(ReactionError):
    pass


class RationalCoefficients(ReactionError):
    pass


def _finite_nonnegative(value: float, what: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise ValueError(f"{what} must be finite and >= 0, got {value}")
    return value


@dataclass(frozen=True)
class TempCondition:
    temperature: float  # kelvin

    def __post_init__(self):
        object.__setattr__(self, "temperature", _finite_nonnegative(self.temperature, "temperature"))


@dataclass(frozen=True)
class PressureCondition:
    pressure: float  # atm

    def __post_init__(self):
        object.__setattr__(self, "pressure", _finite_nonnegative(self.pressure, "pressure"))


Condition = Union[TempCondition, PressureCondition]


@dataclass(frozen=True)
class TimeWindow:
    start_time: float  # seconds
    end_time: float

    def __post_init__(self):
        if not (math.isfinite(self.start_time) and math.isfinite(self.end_time)):
            raise ValueError("time window bounds must be finite")
        if self.start_time > self.end_time:
            raise ValueError(f"start_time {self.start_time} is after end_time {self.end_time}")


Side = tuple[tuple[float, Molecule], ...]


@dataclass(frozen=True)
class Reaction:
    reactants: Side
    products: Side
    conditions: tuple[Condition, ...]
    rate: float  # per second; stored, not interpreted
    time_window: Optional[TimeWindow] = None


def _side(terms: Iterable[tuple[float, Molecule]], name: str) -> Side:
    out = []
    for coefficient, molecule in terms:
        coefficient = float(coefficient)
        if not math.isfinite(coefficient) or coefficient <= 0:
            raise NonPositiveCoefficient(f"{name} coefficient must be > 0, got {coefficient}")
        if not isinstance(molecule, Molecule):
            raise TypeError(f"{name} entries must pair a coefficient with a Molecule")
        out.append((coefficient, molecule))
    if not out:
        raise EmptySide(f"{name} must not be empty")
    return tuple(out)


def make_reaction(
    reactants: Iterable[tuple[float, Molecule]],
    products: Iterable[tuple[float, Molecule]],
    conditions: Iterable[Condition] = (),
    rate: float = 0.0,
    time_window: Optional[TimeWindow] = None,
) -> Reaction:
    rate = float(rate)
    if not math.isfinite(rate) or rate < 0:
        raise NegativeRate(f"rate must be >= 0, got {rate}")
    conditions = tuple(conditions)
    for c in conditions:
        if not isinstance(c, (TempCondition, PressureCondition)):
            raise TypeError(f"not a condition: {c!r}")
    return Reaction(_side(reactants, "reactants"), _side(products, "products"), conditions, rate, time_window)


def element_counts(m: Molecule) -> Counter:
    return Counter(atom.symbol for atom in m.atoms)


def _integer(coefficient: float) -> int:
    nearest = round(coefficient)
    if abs(coefficient - nearest) > _INTEGER_TOL:
        raise RationalCoefficients(
            f"coefficient {coefficient} is not an integer; scale the reaction so all coefficients are whole"
        )
    return int(nearest)


def balance_check(r: Reaction) -> dict[AtomicSymbol, int]:
    """Per-element ``products - reactants`` atom count, weighted by coefficient.

    Every element present on either side appears in the result; the
    reaction is balanced exactly when all values are zero.
    """
    delta: Counter = Counter()
    for sign, side in ((-1, r.reactants), (1, r.products)):
        for coefficient, molecule in side:
            k = _integer(coefficient)
            for symbol, count in element_counts(molecule).items():
                delta[symbol] += sign * k * count
    symbols = {a.symbol for _, m in r.reactants + r.products for a in m.atoms}
    return {s: delta[s] for s in sorted(symbols, key=lambda s: s.value)}


def is_balanced(r: Reaction) -> bool:
    return not any(balance_check(r).values())


def reverse_reaction(r: Reaction) -> Reaction:
    return Reaction(r.products, r.reactants, r.conditions, r.rate, r.time_window)


def scale_reaction(r: Reaction, k: float) -> Reaction:
    return make_reaction(
        [(c * k, m) for c, m in r.reactants],
        [(c * k, m) for c, m in r.products],
        r.conditions,
        r.rate,
        r.time_window,
    )


# REACTION blocks embed complete molecule documents:
#
#   REACTION v1
#   RATE <rate>
#   TEMP <kelvin> | PRESSURE <atm>      (any number, in order)
#   WINDOW <start> <end>                (optional)
#   REACTANT <coefficient>
#   MOLECULE v1 ... END
#   PRODUCT <coefficient>
#   MOLECULE v1 ... END
#   ENDREACTION

REACTION_HEADER = "REACTION v1"


def serialize_reaction(r: Reaction) -> str:
    lines = [REACTION_HEADER, f"RATE {format_float(r.rate)}"]
    for c in r.conditions:
        if isinstance(c, TempCondition):
            lines.append(f"TEMP {format_float(c.temperature)}")
        else:
            lines.append(f"PRESSURE {format_float(c.pressure)}")
    if r.time_window is not None:
        lines.append(f"WINDOW {format_float(r.time_window.start_time)} {format_float(r.time_window.end_time)}")
    for keyword, side in (("REACTANT", r.reactants), ("PRODUCT", r.products)):
        for coefficient, molecule in side:
            lines.append(f"{keyword} {format_float(coefficient)}")
            lines.append(serialize_molecule(molecule).rstrip("\n"))
    lines.append("ENDREACTION")
    return "\n".join(lines) + "\n"


_NUMBER = re.compile(r"-?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?\Z")


def parse_reaction(doc: str) -> Reaction:
    lines = doc.strip().split("\n")
    if lines[0] != REACTION_HEADER:
        raise MolSyntaxError(1, 1, repr(REACTION_HEADER), lines[0])

    def number(token: str, line_no: int, column: int) -> float:
        if not _NUMBER.match(token):
            raise MolSyntaxError(line_no, column, "number", token)
        return float(token)

    rate: Optional[float] = None
    conditions: list[Condition] = []
    window = None
    sides: dict[str, list] = {"REACTANT": [], "PRODUCT": []}
    i = 1
    while i < len(lines):
        line_no = i + 1
        parts = lines[i].split(" ")
        keyword = parts[0]
        if keyword == "ENDREACTION" and len(parts) == 1:
            if i != len(lines) - 1:
                raise MolSyntaxError(line_no + 1, 1, "end of document", lines[i + 1])
            if rate is None:
                raise MolSyntaxError(line_no, 1, "RATE line before ENDREACTION", keyword)
            return make_reaction(sides["REACTANT"], sides["PRODUCT"], conditions, rate, window)
        if keyword in ("RATE", "TEMP", "PRESSURE") and len(parts) == 2:
            value = number(parts[1], line_no, len(keyword) + 2)
            if keyword == "RATE":
                rate = value
            elif keyword == "TEMP":
                conditions.append(TempCondition(value))
            else:
                conditions.append(PressureCondition(value))
            i += 1
            continue
        if keyword == "WINDOW" and len(parts) == 3:
            window = TimeWindow(number(parts[1], line_no, 8), number(parts[2], line_no, 9 + len(parts[1])))
            i += 1
            continue
        if keyword in sides and len(parts) == 2:
            coefficient = number(parts[1], line_no, len(keyword) + 2)
            start = i + 1
            if start >= len(lines) or lines[start] != HEADER:
                raise MolSyntaxError(start + 1, 1, repr(HEADER), lines[start] if start < len(lines) else "")
            end = start
            while end < len(lines) and lines[end] != "END":
                end += 1
            if end == len(lines):
                raise MolSyntaxError(len(lines) + 1, 1, "END")
            try:
                molecule = parse_molecule("\n".join(lines[start : end + 1]))
            except MolSyntaxError as exc:
                raise MolSyntaxError(exc.line + start, exc.column, exc.expected, exc.found) from None
            except SemanticError as exc:
                raise SemanticError(exc.cause, None if exc.line is None else exc.line + start) from None
            sides[keyword].append((coefficient, molecule))
            i = end + 1
            continue
        raise MolSyntaxError(line_no, 1, "RATE, TEMP, PRESSURE, WINDOW, REACTANT, PRODUCT or ENDREACTION", keyword)
    raise MolSyntaxError(len(lines) + 1, 1, "ENDREACTION")
