"""Typed molecule representation: Dietz constitutions, electron shells,
geometry, trace-based inference and reactions."""

from .coordinate import Coordinate
from .elements import AtomicSymbol, ElementAttributes, UnsupportedSymbol, element_attributes
from .formats import parse_molecule, parse_sdf, read_sdf, ring_systems, serialize_molecule, write_sdf
from .geometry import (
    RigidRotation,
    apply_rotation,
    bond_angle,
    bond_length,
    dihedral_angle,
    hausdorff_distance,
    rot_identity,
    rot_inv,
    rot_mul,
)
from .inference import Tracer, metropolis_hastings, rejection_sample, sample_prior
from .models import coin_model, molecule_model
from .molecule import (
    Atom,
    BondingSystem,
    Molecule,
    bond_order,
    build_molecule,
    constitution_signature,
    dietz_constitution,
    make_atom,
    net_charge,
    relabel_atoms,
)
from .orbitals import Orbital, OrbitalLabel, Shell, SubShell, compact_config, ground_state_config, validate_shells
from .reactions import PressureCondition, Reaction, TempCondition, balance_check, make_reaction

__version__ = "0.1.0"
