"""
Sampling Reidemeister spectra
=============================

The spectrum of a group is the set of values R(phi).  Sampling random
automorphisms shows the parity pattern for N(2, 2) (only even finite values)
and for N(3, 2) (odd values or multiples of 4).
"""

# %%
from twistconj import INFINITE, build_free_nilpotent, free_abelian, spectrum_sample


def show(G, budget, seed):
    counts, _ = spectrum_sample(G, budget, seed)
    keys = sorted(counts, key=lambda v: (v == INFINITE, v))
    print(G.name, {("inf" if k == INFINITE else k): counts[k] for k in keys})
    return counts


# %%
show(free_abelian(2), 50, seed=1)

# %%
c22 = show(build_free_nilpotent(2, 2), 100, seed=3)
print("all finite values even:", all(k % 2 == 0 for k in c22 if k != INFINITE))

# %%
c32 = show(build_free_nilpotent(3, 2), 100, seed=4)
print("odd or divisible by 4:", all(k % 2 or k % 4 == 0 for k in c32 if k != INFINITE))
