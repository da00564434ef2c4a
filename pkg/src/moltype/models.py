"""Generative models: the biased coin and the three-atom molecule."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .coordinate import Coordinate
from .elements import AtomicSymbol, element_attributes
from .geometry import hausdorff_distance
from .inference import Model, Tracer, normal_pdf
from .molecule import Atom, BondingSystem, Molecule
from .orbitals import Shells, ground_state_config

__all__ = [
    "MODEL_SYMBOLS",
    "BOND_ORDER_ELECTRONS",
    "NUM_ATOMS",
    "molecule_model",
    "coin_model",
    "parse_coin_observations",
]

MODEL_SYMBOLS = (AtomicSymbol.C, AtomicSymbol.N, AtomicSymbol.O, AtomicSymbol.H)
BOND_ORDER_ELECTRONS = {1: 2, 2: 4, 3: 6}
NUM_ATOMS = 3


@lru_cache(maxsize=None)
def _isolated_shells(symbol: AtomicSymbol) -> Shells:
    return ground_state_config(element_attributes(symbol).atomic_number)


def molecule_model(observed: Molecule) -> Model[Molecule]:
    """Three random atoms with random bonds, scored by closeness to ``observed``.

    Per atom: symbol uniform over C/N/O/H, each coordinate ~ N(0, 1).  Per
    unordered atom pair: a fair coin decides whether to bond, then a bond
    order uniform over 1/2/3 becomes a 2/4/6-electron localized system.
    The score is the standard normal density of the Hausdorff distance
    to ``observed``.
    """
    if not observed.atoms:
        raise ValueError("observed molecule must have atoms")

    def model(t: Tracer) -> Molecule:
        atoms = []
        for k in range(NUM_ATOMS):
            with t.scope(k):
                symbol = t.uniform_discrete(MODEL_SYMBOLS)
                xyz = Coordinate(t.normal(0.0, 1.0), t.normal(0.0, 1.0), t.normal(0.0, 1.0))
            atoms.append(Atom(k + 1, element_attributes(symbol), xyz, _isolated_shells(symbol)))
        systems = []
        pairs = combinations(range(1, NUM_ATOMS + 1), 2)
        for p, pair in enumerate(pairs):
            with t.scope(NUM_ATOMS + p):
                if t.uniform_discrete((True, False)):
                    order = t.uniform_discrete((1, 2, 3))
                    systems.append(BondingSystem(BOND_ORDER_ELECTRONS[order], (pair,)))
        molecule = Molecule(tuple(atoms), tuple(systems))
        t.score(normal_pdf(0.0, 1.0, hausdorff_distance(molecule, observed)))
        return molecule

    return model


def coin_model(observations: Sequence[bool], hard: bool = False) -> Model[float]:
    """Posterior over a coin's bias under a uniform prior.

    ``hard=False`` weights each flip by its Bernoulli likelihood.
    ``hard=True`` simulates the flips and conditions on an exact match,
    which suits rejection sampling.
    """
    observations = tuple(bool(o) for o in observations)
    if not observations:
        raise ValueError("need at least one observation")

    if hard:

        def model(t: Tracer) -> float:
            p = t.uniform()
            flips = tuple(t.bernoulli(p) for _ in observations)
            t.condition(flips == observations)
            return p

    else:

        def model(t: Tracer) -> float:
            p = t.uniform()
            for heads in observations:
                t.score(p if heads else 1.0 - p)
            return p

    return model


def parse_coin_observations(text: str) -> list[bool]:
    """``"HTHH"`` -> ``[True, False, True, True]``."""
    if not text:
        raise ValueError("no observations")
    out = []
    for ch in text:
        if ch not in "HT":
            raise ValueError(f"observation {ch!r} is not H or T")
        out.append(ch == "H")
    return out
