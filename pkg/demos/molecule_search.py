"""Searching for three-atom molecules that look like water.

The generative model draws symbols, positions and bonds at random and
scores each draw by how far its atoms sit from the observed water
geometry. Metropolis-Hastings over the execution trace drifts toward
close matches. The score only looks at positions, so symbols and bonds
wander freely along the chain.
"""

from collections import Counter

from moltype import hausdorff_distance, metropolis_hastings, molecule_model
from moltype.fixtures import water
from moltype.formats.canonical import dumps_line

observed = water()
chain = metropolis_hastings(molecule_model(observed), jitter=0.1, n=2000, burn_in=2000, seed=42)

best, best_w = max(chain, key=lambda s: s[1])
print("best log-weight:", round(best_w, 3))
print("best Hausdorff distance:", round(hausdorff_distance(best, observed), 3))
print(dumps_line(best))

formulas = Counter("".join(sorted(a.symbol.value for a in m.atoms)) for m, _ in chain)
print("most visited formulas:", formulas.most_common(5))
