"""Benzene as a Dietz constitution.

Kekule structures force a choice between alternating single and double
bonds. Here the six pi electrons sit in one delocalized system spanning
the whole ring, and bond orders fall out as fractions.
"""

from moltype import bond_order, constitution_signature, dietz_constitution
from moltype.fixtures import benzene
from moltype.molecule import bonded_pairs

m = benzene()
print(dietz_constitution(m).render())
print()

# every C-C edge carries 2 sigma electrons plus 6/6 of the pi system
for (i, j), order in sorted(bonded_pairs(m).items()):
    a, b = m.atom(i).symbol.value, m.atom(j).symbol.value
    print(f"{a}{i}-{b}{j}  order {order}")

print()
print("C1-C2:", bond_order(m, 1, 2))
print("C1-C4 (not bonded):", bond_order(m, 1, 4))
print("signature:", constitution_signature(m))
