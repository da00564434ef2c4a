from .canonical import (
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
from .rings import DuplicateIds, TooFewAtoms, ring_systems
from .sdf import (
    MalformedAtomLine,
    MalformedBondLine,
    MalformedCountsLine,
    SdfError,
    SdfRecord,
    SdfWarning,
    UnrepresentableInSdf,
    UnsupportedBondType,
    parse_sdf,
    read_sdf,
    write_sdf,
)
