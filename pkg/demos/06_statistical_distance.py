"""Statistical distance on the probability simplex.

The distinguishability line element ds^2 = sum d rho_j^2 / rho_j is four
times the round metric on the unit sphere of amplitude vectors sqrt(rho),
so the geodesic distance is 2*arccos of the amplitude overlap.
"""

import numpy as np

from fishermodes import statistical_distance

print("== basic values ==")
print(f"  d(rho, rho)            = {statistical_distance([0.5, 0.5], [0.5, 0.5])!r}")
print(f"  d((.5,.5), (.9,.1))    = {statistical_distance([0.5, 0.5], [0.9, 0.1]):.12f}")
eps = 1e-9
d = statistical_distance([1 - eps, eps], [eps, 1 - eps])
print(f"  nearly disjoint supports: {d:.9f} (max possible: pi = {np.pi:.9f})")

print("\n== metric axioms on random triples ==")
rng = np.random.default_rng(0)
worst_gap = np.inf
for _ in range(1000):
    rho = rng.uniform(0.02, 1.0, (3, 8))
    rho /= rho.sum(axis=1, keepdims=True)
    a, b, c = rho
    slack = statistical_distance(a, b) + statistical_distance(b, c) - statistical_distance(a, c)
    worst_gap = min(worst_gap, slack)
print(f"  smallest triangle slack over 1000 triples: {worst_gap:.6f} (>= 0)")

print("\n== distance grows as distributions separate ==")
base = np.full(8, 1 / 8)
for shift in (0.0, 0.02, 0.05, 0.1):
    other = base.copy()
    other[0] += shift
    other[1] -= shift
    print(f"  shift={shift:4.2f}: d = {statistical_distance(base, other):.6f}")
