from __future__ import annotations

from typing import Sequence

from ..molecule import BondingSystem

__all__ = ["TooFewAtoms", "DuplicateIds", "ring_systems"]


class TooFewAtoms(ValueError):
    pass


class DuplicateIds(ValueError):
    pass


def ring_systems(ids: Sequence[int], sigma_electrons: int = 2, pi_electrons: int = 0) -> list[BondingSystem]:
    """Bonding systems for a ring closing ``ids[-1]`` back to ``ids[0]``.

    One ``sigma_electrons`` system per ring edge, then (when
    ``pi_electrons > 0``) one delocalized system over all ring edges.
    ``ring_systems(range(1, 7), pi_electrons=6)`` is benzene's ring block.
    """
    ids = list(ids)
    if len(ids) < 3:
        raise TooFewAtoms(f"a ring needs at least 3 atoms, got {len(ids)}")
    if len(set(ids)) != len(ids):
        raise DuplicateIds(f"ring ids repeat: {ids}")
    edges = [(a, ids[(k + 1) % len(ids)]) for k, a in enumerate(ids)]
    systems = [BondingSystem(sigma_electrons, (edge,)) for edge in edges]
    if pi_electrons > 0:
        systems.append(BondingSystem(pi_electrons, tuple(edges)))
    return systems
