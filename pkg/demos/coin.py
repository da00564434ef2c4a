"""Inferring a coin's bias from HTHH.

A uniform prior and three heads in four flips give a Beta(4, 2)
posterior with mean 2/3. Rejection sampling simulates flips and keeps
exact matches; Metropolis-Hastings weights each run by its likelihood.
"""

import numpy as np

from moltype import coin_model, metropolis_hastings, rejection_sample
from moltype.models import parse_coin_observations

obs = parse_coin_observations("HTHH")

exact = rejection_sample(coin_model(obs, hard=True), 2000, seed=1)
chain = [p for p, _ in metropolis_hastings(coin_model(obs), jitter=1.0, n=5000, burn_in=500, seed=1)]

for name, xs in (("rejection", exact), ("mh", chain)):
    xs = np.asarray(xs)
    print(f"{name:<10} mean {xs.mean():.3f}  var {xs.var():.4f}")
print(f"{'beta(4,2)':<10} mean {4 / 6:.3f}  var {4 * 2 / (36 * 7):.4f}")

counts, edges = np.histogram(exact, bins=10, range=(0, 1))
for c, lo in zip(counts, edges):
    print(f"{lo:.1f} {'#' * (c // 10)}")
