import math
import struct
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings

from generators import molecules, random_molecule
from moltype.coordinate import Coordinate
from moltype.fixtures import benzene, hydrogen, oxygen, water
from moltype.formats.canonical import (
    HEADER,
    MolSyntaxError,
    SemanticError,
    dumps_line,
    loads_line,
    parse_molecule,
    parse_shells,
    serialize_molecule,
    serialize_shells,
)
from moltype.molecule import DanglingEdge, build_molecule, make_atom, relabel_atoms
from moltype.orbitals import Orbital, OrbitalLabel, Shell, SubShell, ground_state_config

DATA = Path(__file__).parent / "data"


def bits(x: float) -> bytes:
    return struct.pack("<d", x)


def test_h2_golden():
    assert serialize_molecule(hydrogen()) == (DATA / "h2.mol.txt").read_text()


def test_empty_molecule():
    doc = serialize_molecule(build_molecule([], []))
    assert doc == f"{HEADER}\nEND\n"
    assert parse_molecule(doc).atoms == ()


@pytest.mark.parametrize("make", [hydrogen, benzene, oxygen, water])
def test_fixture_round_trip(make):
    m = make()
    doc = serialize_molecule(m)
    assert parse_molecule(doc) == m
    assert serialize_molecule(parse_molecule(doc)) == doc


def test_atoms_sorted_and_systems_ordered():
    atoms = [make_atom(3, "H", (0, 0, 1)), make_atom(1, "O"), make_atom(2, "H", (1, 0, 0))]
    m = build_molecule(atoms, [(4, [(3, 1)]), (2, [(2, 1)])])
    lines = serialize_molecule(m).splitlines()
    assert [line.split()[1] for line in lines if line.startswith("ATOM")] == ["1", "2", "3"]
    assert [line for line in lines if line.startswith("SYSTEM")] == ["SYSTEM 2 1-2", "SYSTEM 4 1-3"]


def test_serialization_ignores_input_order():
    m = benzene()
    shuffled = build_molecule(list(reversed(m.atoms)), list(reversed(m.systems)))
    assert serialize_molecule(shuffled) == serialize_molecule(m)


def test_order_preserving_renumbering_is_stable():
    rng = np.random.default_rng(21)
    for _ in range(50):
        m = random_molecule(rng)
        dense = {old: k + 1 for k, old in enumerate(sorted(m.atom_ids))}
        again = build_molecule(list(reversed(m.atoms)), list(m.systems)) if m.atoms else m
        assert serialize_molecule(relabel_atoms(m, dense)) == serialize_molecule(relabel_atoms(again, dense))


@settings(max_examples=300, deadline=None)
@given(molecules())
def test_round_trip_random(m):
    doc = serialize_molecule(m)
    back = parse_molecule(doc)
    assert back == m
    for a in m.atoms:
        b = back.atom(a.atom_id)
        for u, v in zip(a.coordinate, b.coordinate):
            assert bits(u) == bits(v)
        assert bits(a.attributes.atomic_weight) == bits(b.attributes.atomic_weight)
    assert serialize_molecule(back) == doc


@settings(max_examples=100, deadline=None)
@given(molecules())
def test_single_line_form(m):
    line = dumps_line(m)
    assert "\n" not in line
    assert loads_line(line) == m


def test_whitespace_around_document():
    doc = serialize_molecule(water())
    assert parse_molecule("\n\n  " + doc + "\n\n") == water()


def test_whitespace_inside_is_rejected():
    doc = serialize_molecule(hydrogen()).replace("ATOM 1 H", "ATOM  1 H")
    with pytest.raises(MolSyntaxError) as exc:
        parse_molecule(doc)
    assert exc.value.line == 2


def test_truncated_document_reports_line():
    lines = serialize_molecule(benzene()).splitlines()
    with pytest.raises(MolSyntaxError) as exc:
        parse_molecule("\n".join(lines[:-1]))
    assert exc.value.line == len(lines)
    with pytest.raises(MolSyntaxError) as exc:
        parse_molecule("\n".join(lines[:5]) + "\nATOM 9 C 6")
    assert exc.value.line == 6


@pytest.mark.parametrize(
    "doc,line",
    [
        ("MOLECULE v2\nEND", 1),
        (f"{HEADER}\nATOM 1 Xx 1 1.0 0.0 0.0 0.0\nEND", 2),
        (f"{HEADER}\nATOM 1 H 1 1.0 0.0 nan 0.0\nEND", 2),
        (f"{HEADER}\nATOM 1 H 1 1.0 0.0 0.0 0.0\nSYSTEM 2 1-\nEND", 3),
        (f"{HEADER}\nATOM 1 H 1 1.0 0.0 0.0 0.0\nSHELLS 1 1q2\nEND", 3),
        (f"{HEADER}\nBOND 1 2\nEND", 2),
        (f"{HEADER}\nEND\nEND", 3),
    ],
)
def test_syntax_errors(doc, line):
    with pytest.raises(MolSyntaxError) as exc:
        parse_molecule(doc)
    assert exc.value.line == line and exc.value.column >= 1


def test_semantic_errors():
    with pytest.raises(SemanticError) as exc:
        parse_molecule(f"{HEADER}\nATOM 1 H 1 1.008 0.0 0.0 0.0\nSYSTEM 2 1-2\nEND\n")
    assert isinstance(exc.value.cause, DanglingEdge)
    # canonical documents list atoms in ascending id order, so a repeat is a syntax error
    with pytest.raises(MolSyntaxError) as exc:
        parse_molecule(f"{HEADER}\nATOM 1 H 1 1.008 0.0 0.0 0.0\nATOM 1 H 1 1.008 0.0 0.0 0.0\nEND\n")
    assert exc.value.line == 3
    with pytest.raises(SemanticError):
        # atomic number that disagrees with the symbol
        parse_molecule(f"{HEADER}\nATOM 1 H 2 1.008 0.0 0.0 0.0\nEND\n")


def test_floats_use_shortest_round_trip_form():
    m = build_molecule([make_atom(1, "C", (0.1, -0.0, 1e-310))], [])
    line = serialize_molecule(m).splitlines()[1]
    assert line.endswith(" 0.1 -0.0 1e-310")
    back = parse_molecule(serialize_molecule(m)).atoms[0].coordinate
    assert math.copysign(1.0, back.y) == -1.0 and back.z == 1e-310


# -- shells ---------------------------------------------------------------


@pytest.mark.parametrize("z", range(1, 37))
def test_ground_state_shells_round_trip(z):
    shells = ground_state_config(z)
    assert parse_shells(serialize_shells(shells)) == shells


def test_shell_overrides_round_trip():
    px = Orbital(OrbitalLabel.Px, 1, Coordinate(0.6, 0.8, 0.0), ((0.6, OrbitalLabel.Px), (0.8, OrbitalLabel.Py)))
    py = Orbital(OrbitalLabel.Py, 2, None)
    shells = (Shell(1, s=SubShell("s", (Orbital(OrbitalLabel.S, 2),))), Shell(2, p=SubShell("p", (px, py))), Shell(3))
    text = serialize_shells(shells)
    assert parse_shells(text) == shells
    assert "@" in text and "~" in text


def test_carbon_shells_text():
    assert serialize_shells(ground_state_config(6)) == "1s2.2s2.2p2"
