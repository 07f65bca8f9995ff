"""
Certificates for infinitely many classes
========================================

A nonzero fixed vector of phi on an upper central factor already forces
R(phi) to be infinite.  For free nilpotent groups of large class, the
Formanek classification and the rank/class inequality decide when every
automorphism has that property.
"""

# %%
import random

from twistconj import build_free_nilpotent, formanek_fixed, infinity_witness_uc, reidemeister, theorem2_rinf
from twistconj.twisted import random_automorphism

G = build_free_nilpotent(2, 3)
rng = random.Random(0)
for _ in range(8):
    phi, desc = random_automorphism(G, rng)
    w = infinity_witness_uc(G, phi)
    print(desc["matrix"], "->", w.describe() if w else "no certificate", "|", reidemeister(G, phi, use_shortcut=False))

# %%
print("   c:", " ".join(f"{c:2d}" for c in range(2, 25)))
for r in range(2, 6):
    row = " ".join(" F" if formanek_fixed(r, c) else (" R" if theorem2_rinf(r, c) else " .") for c in range(2, 25))
    print(f"r = {r}:", row)
print("F: elements fixed by all automorphisms; R: covered by the inequality only")
