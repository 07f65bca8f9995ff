import itertools

import pytest
from hypothesis import given, strategies as st

from twistconj.errors import IndexInfinite
from twistconj.intlat import (INFINITE, AbelianGroup, IntMatrix, Lattice, hnf, kernel_basis, lattice_index,
                              snf, solve_in_span, transversal)

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def brute_index(cols, n, box=12):
    """Count residues of the box [0, box)^n modulo the lattice via a naive orbit check (index <= box^n)."""
    lat = Lattice.span(cols, n)
    return len({lat.reduce(v) for v in itertools.product(range(box), repeat=n)})


def test_hnf_identity():
    H, T = hnf(IntMatrix.identity(2))
    assert H == IntMatrix.identity(2) and T == IntMatrix.identity(2)


def test_hnf_small_example():
    H, T = hnf(IntMatrix.from_columns([(2, 0), (1, 1)]))
    assert H.columns() == [[1, 1], [0, 2]]
    assert lattice_index(Lattice.span([(2, 0), (1, 1)], 2)) == 2


def test_hnf_zero_matrix():
    H, _ = hnf(IntMatrix.zeros(2, 3))
    assert H.ncols == 0


@given(matrices())
def test_hnf_reconstructs(rows):
    M = IntMatrix.from_rows(rows)
    H, T = hnf(M)
    assert abs(T.det()) == 1
    MT = M @ T
    assert MT.columns()[:H.ncols] == H.columns()
    assert all(not any(c) for c in MT.columns()[H.ncols:])


@given(matrices())
def test_hnf_is_canonical(rows):
    M = IntMatrix.from_rows(rows)
    shuffled = IntMatrix.from_columns(list(reversed(M.columns())) + [[2 * x for x in M.column(0)]],
                                      nrows=M.nrows)
    assert hnf(M)[0] == hnf(shuffled)[0]


def test_snf_examples():
    assert snf(IntMatrix.identity(2)).diagonal == (1, 1)
    assert snf(IntMatrix.from_rows([[2, 4], [6, 8]])).diagonal == (2, 4)
    assert snf(IntMatrix.from_rows([[0]])).diagonal == (0,)


@given(matrices())
def test_snf_properties(rows):
    M = IntMatrix.from_rows(rows)
    dec = snf(M)
    assert dec.U @ M @ dec.V == dec.S
    assert abs(dec.U.det()) == 1 and abs(dec.V.det()) == 1
    d = dec.diagonal
    assert all(x >= 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 if d[i] else d[i + 1] == 0 for i in range(len(d) - 1))
    for i in range(M.nrows):
        for j in range(M.ncols):
            if i != j:
                assert dec.S[i, j] == 0


def test_lattice_index_examples():
    assert lattice_index(Lattice.span([(2,)], 1)) == 2
    assert lattice_index(Lattice.span([(1, 1)], 2)) == INFINITE
    assert lattice_index(Lattice.full(2)) == 1


def test_transversal_examples():
    assert transversal(Lattice.span([(2,)], 1)) == [(0,), (1,)]
    assert set(transversal(Lattice.span([(2, 0), (0, 2)], 2))) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert transversal(Lattice.full(1)) == [(0,)]


def test_transversal_infinite():
    with pytest.raises(IndexInfinite):
        transversal(Lattice.span([(1, 1)], 2))


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=2, max_size=4))
def test_transversal_matches_determinant(cols):
    lat = Lattice.span(cols, 2)
    idx = lattice_index(lat)
    if idx == INFINITE:
        return
    reps = transversal(lat)
    assert len(reps) == idx == abs(lat.basis_matrix().det())
    if idx <= 144:
        assert brute_index(cols, 2) == idx
    for s, t in itertools.combinations(reps[:12], 2):
        diff = [a - b for a, b in zip(s, t)]
        assert solve_in_span(lat.basis_matrix(), diff) is None


def test_solve_in_span_examples():
    assert solve_in_span(IntMatrix.diag([2]), (4,)) == (2,)
    assert solve_in_span(IntMatrix.diag([2]), (3,)) is None
    assert solve_in_span(IntMatrix.from_rows([[1, 1], [1, 0]]), (1, 1)) == (1, 0)


@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_in_span_witnesses(rows, x):
    M = IntMatrix.from_rows(rows)
    b = M @ x[:M.ncols]
    sol = solve_in_span(M, b)
    assert sol is not None and M @ sol == b


@given(matrices())
def test_kernel_basis(rows):
    M = IntMatrix.from_rows(rows)
    ker = kernel_basis(M)
    for v in ker:
        assert not any(M @ v)
    rank = M.ncols - len(ker)
    assert rank == hnf(M)[0].ncols


def test_abelian_group_structure():
    A = AbelianGroup(2, ((2, 0), (0, 3)))
    assert A.invariants == (1, 6) and A.torsion == (6,)
    assert A.order == 6 and A.free_rank == 0
    B = AbelianGroup(3, ((0, 0, 4),))
    assert B.free_rank == 2 and B.torsion == (4,)
    assert B.is_zero((0, 0, 8)) and not B.is_zero((1, 0, 0))
