"""Ground-state electron configurations from Madelung filling with Hund's rule."""

from moltype import compact_config, ground_state_config, validate_shells
from moltype.orbitals import Orbital, OrbitalLabel, Shell, SubShell, unpaired_electrons

for z in (1, 6, 7, 8, 19, 24, 26):
    shells = ground_state_config(z)
    print(f"Z={z:2d}  {compact_config(shells):<28} unpaired={unpaired_electrons(shells)}")

# carbon's 2p electrons spread over two orbitals instead of pairing up
carbon = ground_state_config(6)
print([(o.label.value, o.electron_count) for o in carbon[-1].p.orbitals])

# a hand-built shell that breaks Pauli
bad = [Shell(1, s=SubShell("s", (Orbital(OrbitalLabel.S, 3),)))]
for v in validate_shells(bad):
    print(v)
