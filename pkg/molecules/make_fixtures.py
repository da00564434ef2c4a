"""Regenerate the SDF fixtures in this directory.

water.sdf: O at the origin, O-H 0.9572 A, H-O-H 104.52 degrees, two single bonds.
benzene.sdf: the benzene fixture with its six ring bonds written as aromatic (type 4).
"""

import math
from pathlib import Path

HERE = Path(__file__).resolve().parent

OH = 0.9572
ANGLE = math.radians(104.52)

BENZENE = [
    ("C", 0.0, 1.3948), ("C", 1.2079, 0.6974), ("C", 1.2079, -0.6974),
    ("C", 0.0, -1.3948), ("C", -1.2079, -0.6974), ("C", -1.2079, 0.6974),
    ("H", 0.0, 2.4732), ("H", 2.1431, 1.2366), ("H", 2.1431, -1.2366),
    ("H", 0.0, -2.4732), ("H", -2.1431, -1.2366), ("H", -2.1431, 1.2366),
]


def molfile(title, atoms, bonds):
    lines = [title, "  make_fixtures", ""]
    lines.append(f"{len(atoms):3d}{len(bonds):3d}  0  0  0  0  0  0  0  0999 V2000")
    for sym, x, y, z in atoms:
        lines.append(f"{x:10.4f}{y:10.4f}{z:10.4f} {sym:<3} 0  0  0  0  0  0  0  0  0  0  0  0")
    for a, b, t in bonds:
        lines.append(f"{a:3d}{b:3d}{t:3d}  0  0  0  0")
    lines += ["M  END", "$$$$"]
    return "\n".join(lines) + "\n"


def main():
    water = [("O", 0.0, 0.0, 0.0), ("H", OH, 0.0, 0.0), ("H", OH * math.cos(ANGLE), OH * math.sin(ANGLE), 0.0)]
    (HERE / "water.sdf").write_text(molfile("water", water, [(1, 2, 1), (1, 3, 1)]))

    ring = [(k, k % 6 + 1, 4) for k in range(1, 7)]
    ch = [(k, k + 6, 1) for k in range(1, 7)]
    atoms = [(s, x, y, 0.0) for s, x, y in BENZENE]
    (HERE / "benzene.sdf").write_text(molfile("benzene", atoms, ring + ch))


if __name__ == "__main__":
    main()
