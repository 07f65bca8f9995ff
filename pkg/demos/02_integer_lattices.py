"""
Integer lattices behind the abelian layers
==========================================

Every layer of the class computation reduces to a subgroup L of Z^n: the
number of classes it contributes is the index of L, and the classes
themselves are a transversal.
"""

# %%
from twistconj.intlat import IntMatrix, Lattice, hnf, lattice_index, snf, solve_in_span, transversal

M = IntMatrix.from_rows([[2, 4], [6, 8]])
dec = snf(M)
print("Smith diagonal:", dec.diagonal)
print("U M V == S:", dec.U @ M @ dec.V == dec.S)

# %%
H, T = hnf(IntMatrix.from_columns([(2, 0), (1, 1)]))
print("Hermite basis:", H.columns())

L = Lattice.span([(2, 0), (1, 1)], 2)
print("index", lattice_index(L), "transversal", transversal(L))

# %%
# For an automorphism of Z^n the twisted classes are the cosets of im(M - I),
# so R = |det(M - I)| whenever that is nonzero.

from twistconj import reidemeister_abelian

for m in ([[0, -1], [1, -1]], [[-1, 0], [0, -1]], [[2, 1], [1, 1]], [[1, 1], [0, 1]]):
    d = (IntMatrix.from_rows(m) - IntMatrix.identity(2)).det()
    print(m, "det(M - I) =", d, "->", reidemeister_abelian(m))

# %%
print(solve_in_span(IntMatrix.from_rows([[1, 1], [1, 0]]), (1, 1)))
print(solve_in_span(IntMatrix.diag([2]), (3,)))
