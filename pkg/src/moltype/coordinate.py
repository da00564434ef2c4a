from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Coordinate:
    """A point (or direction) in Cartesian space, in ångström."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"coordinate component {name}={value!r} is not finite")
            object.__setattr__(self, name, float(value))

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def replace(self, **changes: float) -> Coordinate:
        return Coordinate(changes.get("x", self.x), changes.get("y", self.y), changes.get("z", self.z))

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)


ORIGIN = Coordinate(0.0, 0.0, 0.0)
