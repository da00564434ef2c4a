"""Moving molecules between SDF and the canonical text format."""

from pathlib import Path

from moltype import parse_molecule, parse_sdf, read_sdf, serialize_molecule, write_sdf

here = Path(__file__).resolve().parent.parent / "molecules"

(water,) = parse_sdf((here / "water.sdf").read_text())
doc = serialize_molecule(water)
print(doc)
assert parse_molecule(doc) == water

# aromatic bonds become one delocalized system per ring
(record,) = read_sdf((here / "benzene.sdf").read_text())
print("notes:", record.notes or "none")
for s in record.molecule.systems:
    if not s.is_localized:
        print("delocalized:", s.electrons, "electrons over", len(s.edges), "edges")

# and back out again as a Kekule structure
print(write_sdf([record.molecule]).splitlines()[3])
