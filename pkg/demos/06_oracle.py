"""
Checking against brute force
============================

For finite groups the classes can be counted straight from the definition
by orbit enumeration.  The layered algorithm should agree on every
automorphism, and its representatives should land in distinct orbits.
"""

# %%
import random

from twistconj import brute_force_reidemeister, heisenberg, reidemeister
from twistconj.pc import abelian
from twistconj.twisted import random_automorphism

rng = random.Random(1)
for G in (heisenberg(3), heisenberg(5), abelian([6, 6])):
    for _ in range(4):
        phi, _ = random_automorphism(G, rng)
        brute = brute_force_reidemeister(G, phi)
        res = reidemeister(G, phi)
        distinct = len({brute.orbit_of(r) for r in res.representatives})
        print(f"{G.name:8s} brute {brute.count:3d}  layered {res.count:3d}  distinct orbits {distinct}")

# %%
# Untwisted classes of the Heisenberg group mod p: p^2 + p - 1.

from twistconj.pc import identity_map

for p in (2, 3, 5, 7):
    G = heisenberg(p)
    print(p, reidemeister(G, identity_map(G)).count, p * p + p - 1)
