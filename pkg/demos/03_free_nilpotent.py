"""
Free nilpotent groups from the Magnus embedding
===============================================

N(r, c) is built on a Hall basis of basic commutators.  Its structure
constants come from exact arithmetic in truncated noncommutative power
series, where a_i acts as 1 + x_i.
"""

# %%
from twistconj import build_free_nilpotent, hall_basis, magnus_model, witt_rank
from twistconj.pc import format_presentation, lower_central_series

B = hall_basis(2, 4)
for b in B.elements:
    parts = "" if b.left is None else f" = [{B.elements[b.left].name}, {B.elements[b.right].name}]"
    print(f"{b.name:>3}  weight {b.weight}{parts}")
print("layer sizes", B.weight_counts(), "Witt", [witt_rank(2, w) for w in range(1, 5)])

# %%
G = build_free_nilpotent(2, 3)
print(format_presentation(G))
print("lower central factor ranks:", lower_central_series(G).factor_ranks())

# %%
# The Magnus image of a word and the collected normal form agree.

m = magnus_model(2, 3)
word = [(1, 1), (0, 1), (1, -1), (0, 2)]
print(G.evaluate(word), m.coordinates(m.word_image(word)))

# %%
# The class-8 group on two generators has Hirsch length 71 and still builds
# in about a second.

import time

t = time.perf_counter()
N28 = build_free_nilpotent(2, 8)
print(N28.name, N28.n, "generators", f"{time.perf_counter() - t:.2f} s")
