"""Exact integer linear algebra.

Lattices are column spans.  Hermite forms are column-style and lower
triangular: pivot rows strictly increase from left to right, pivots are
positive, and the entries to the left of a pivot (in its row) lie in
``[0, pivot)``.  All arithmetic uses Python integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .errors import IndexInfinite

INFINITE = float("inf")


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    nrows: int
    ncols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int | None = None) -> "IntMatrix":
        cols = [list(c) for c in cols]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        if any(len(c) != nrows for c in cols):
            raise ValueError("ragged columns")
        return cls.from_rows([[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols, (0,) * (nrows * ncols))

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.ncols + j]

    def rows(self) -> list[list[int]]:
        n = self.ncols
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(self.nrows)]

    def columns(self) -> list[list[int]]:
        return [[self[i, j] for i in range(self.nrows)] for j in range(self.ncols)]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self[i, j] for i in range(self.nrows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_columns(self.rows(), nrows=self.ncols)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            a, b = self.rows(), other.columns()
            return IntMatrix.from_rows(
                [[sum(x * y for x, y in zip(r, c)) for c in b] for r in a], ncols=other.ncols)
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(sum(x * y for x, y in zip(r, vec)) for r in self.rows())

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.nrows, self.ncols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.nrows, self.ncols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.nrows, self.ncols, tuple(-a for a in self.entries))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return IntMatrix.from_columns(self.columns() + other.columns(), nrows=self.nrows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det(self.rows())

    def __repr__(self):
        return f"IntMatrix({self.rows()!r})"


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def as_matrix(m) -> IntMatrix:
    if isinstance(m, IntMatrix):
        return m
    return IntMatrix.from_rows(m)


# ---------------------------------------------------------------------------
# Hermite normal form


def _hnf_columns(cols: list[list[int]], nrows: int, track: list[list[int]] | None):
    """Column-reduce ``cols`` in place; returns the number of nonzero columns.

    ``track`` (columns of the transform) receives the same column operations.
    """
    ncols = len(cols)

    def swap(a, b):
        cols[a], cols[b] = cols[b], cols[a]
        if track is not None:
            track[a], track[b] = track[b], track[a]

    def addmul(dst, src, q):
        # col[dst] -= q * col[src]
        if q == 0:
            return
        cd, cs = cols[dst], cols[src]
        for i in range(nrows):
            if cs[i]:
                cd[i] -= q * cs[i]
        if track is not None:
            td, ts = track[dst], track[src]
            for i in range(len(td)):
                if ts[i]:
                    td[i] -= q * ts[i]

    def negate(a):
        cols[a] = [-x for x in cols[a]]
        if track is not None:
            track[a] = [-x for x in track[a]]

    p = 0
    for i in range(nrows):
        if p >= ncols:
            break
        while True:
            best = None
            for k in range(p, ncols):
                v = cols[k][i]
                if v and (best is None or abs(v) < abs(cols[best][i])):
                    best = k
            if best is None:
                break
            swap(p, best)
            piv = cols[p][i]
            done = True
            for k in range(p + 1, ncols):
                v = cols[k][i]
                if v:
                    addmul(k, p, v // piv)
                    if cols[k][i]:
                        done = False
            if done:
                break
        if best is None and cols[p][i] == 0:
            continue
        if cols[p][i] < 0:
            negate(p)
        piv = cols[p][i]
        for k in range(p):
            addmul(k, p, cols[k][i] // piv)
        p += 1
    return p


def hnf(m) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite form.

    Returns ``(H, T)`` with ``T`` unimodular and ``M @ T == [H | 0]``; the
    zero columns are dropped from ``H``.
    """
    m = as_matrix(m)
    cols = m.columns()
    n = m.ncols
    track = [[int(i == j) for i in range(n)] for j in range(n)]
    r = _hnf_columns(cols, m.nrows, track)
    h = IntMatrix.from_columns(cols[:r], nrows=m.nrows)
    t = IntMatrix.from_columns(track, nrows=n)
    return h, t


def hermite_basis(cols: Iterable[Sequence[int]], nrows: int) -> list[tuple[int, ...]]:
    """Canonical Hermite basis of the lattice spanned by ``cols``."""
    cols = [list(c) for c in cols]
    r = _hnf_columns(cols, nrows, None)
    return [tuple(c) for c in cols[:r]]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.shape)))


def snf(m) -> SmithDecomposition:
    m = as_matrix(m)
    nr, nc = m.shape
    a = m.rows()
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_addmul(dst, src, q):  # row dst -= q * row src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def col_addmul(dst, src, q):  # col dst -= q * col src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    def row_swap(x, y):
        a[x], a[y] = a[y], a[x]
        u[x], u[y] = u[y], u[x]

    def col_swap(x, y):
        for row in a:
            row[x], row[y] = row[y], row[x]
        for row in v:
            row[x], row[y] = row[y], row[x]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            row_swap(t, best[0])
            col_swap(t, best[1])
            piv = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    row_addmul(i, t, a[i][t] // piv)
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    col_addmul(j, t, a[t][j] // piv)
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % piv), None)
            if bad is None:
                break
            # fold the offending row into row t and reduce again
            row_addmul(t, bad[0], -1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return SmithDecomposition(
        IntMatrix.from_rows(a, ncols=nc), IntMatrix.from_rows(u, ncols=nr), IntMatrix.from_rows(v, ncols=nc))


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix, computed exactly."""
    n = m.nrows
    if m.ncols != n:
        raise ValueError("not square")
    h, t = hnf(m)
    # M T = H with H lower triangular, diagonal ±1 -> 1 after normalization, so H = I
    if h.shape != (n, n) or any(h[i, i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    # M T = H  =>  M^{-1} = T H^{-1}; H is unit lower triangular in canonical form -> identity
    return t


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^n given by its canonical column Hermite basis."""

    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, generators: Iterable[Sequence[int]], ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, tuple(hermite_basis(generators, ambient_rank)))

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls.span([[int(i == j) for i in range(n)] for j in range(n)], n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> IntMatrix:
        return IntMatrix.from_columns(self.basis, nrows=self.ambient_rank)

    def pivots(self) -> list[tuple[int, int]]:
        """(row, value) of each basis column's pivot."""
        out = []
        for col in self.basis:
            i = next(k for k, x in enumerate(col) if x)
            out.append((i, col[i]))
        return out

    def __contains__(self, vec) -> bool:
        return solve_in_span(self.basis_matrix(), vec) is not None

    def __add__(self, other: "Lattice") -> "Lattice":
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient rank mismatch")
        return Lattice.span(self.basis + other.basis, self.ambient_rank)

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of ``vec`` modulo the lattice.

        At every pivot row the coordinate is brought into ``[0, pivot)``.
        """
        x = list(vec)
        for col, (i, p) in zip(self.basis, self.pivots()):
            q = x[i] // p
            if q:
                x = [a - q * b for a, b in zip(x, col)]
        return tuple(x)


def lattice_index(lat: Lattice):
    """``[Z^n : L]`` as an int, or ``INFINITE`` when the lattice is not of full rank."""
    if lat.rank < lat.ambient_rank:
        return INFINITE
    return prod(p for _, p in lat.pivots())


def transversal(lat: Lattice) -> list[tuple[int, ...]]:
    """Coset representatives of Z^n modulo ``lat``.

    Representatives are enumerated over the Smith box and each is reduced to
    the canonical Hermite box; the result is sorted lexicographically.
    """
    if lattice_index(lat) == INFINITE:
        raise IndexInfinite("lattice has infinite index")
    n = lat.ambient_rank
    if n == 0:
        return [()]
    dec = snf(lat.basis_matrix())
    d = dec.diagonal
    uinv = unimodular_inverse(dec.U)
    reps = set()
    for y in itertools.product(*(range(k) for k in d)):
        reps.add(lat.reduce(uinv @ y))
    return sorted(reps)


class SpanSolver:
    """Repeated solves of ``M @ x == b`` over the integers with one Hermite reduction."""

    def __init__(self, m):
        self.matrix = as_matrix(m)
        h, t = hnf(self.matrix)
        self._cols = h.columns()
        self._pivots = [next(j for j, x in enumerate(col) if x) for col in self._cols]
        self._tcols = t.columns()[:len(self._cols)]

    def solve(self, b: Sequence[int]) -> tuple[int, ...] | None:
        m = self.matrix
        resid = list(b)
        if len(resid) != m.nrows:
            raise ValueError("length mismatch")
        x = [0] * m.ncols
        for col, i, tcol in zip(self._cols, self._pivots, self._tcols):
            if any(resid[j] for j in range(i)):
                return None
            q, r = divmod(resid[i], col[i])
            if r:
                return None
            if q:
                resid = [a - q * c for a, c in zip(resid, col)]
                x = [a + q * c for a, c in zip(x, tcol)]
        if any(resid):
            return None
        assert m @ x == tuple(b)
        return tuple(x)


def solve_in_span(m, b: Sequence[int]) -> tuple[int, ...] | None:
    """Integer ``x`` with ``M @ x == b``, or ``None`` if no integer solution exists."""
    return SpanSolver(m).solve(b)


def kernel_basis(m) -> list[tuple[int, ...]]:
    """A Z-basis of ``{x : M @ x == 0}``."""
    m = as_matrix(m)
    h, t = hnf(m)
    return [tuple(c) for c in t.columns()[h.ncols:]]


def cokernel_vector(m) -> tuple[int, ...] | None:
    """Nonzero ``y`` with ``y @ M == 0`` (certifies infinite index), or ``None``."""
    ker = kernel_basis(as_matrix(m).transpose())
    return ker[0] if ker else None


# ---------------------------------------------------------------------------
# Finitely generated abelian groups Z^n / R


@dataclass(frozen=True)
class AbelianGroup:
    """The group Z^n modulo the lattice spanned by ``relations``.

    Invariants are exposed as ``free_rank`` and ``torsion`` (factors > 1),
    and ``smith_coordinates`` maps raw vectors to the Smith coordinate
    system (torsion components reduced, trivial components dropped).
    """

    n: int
    relations: tuple[tuple[int, ...], ...] = ()

    @property
    def relation_lattice(self) -> Lattice:
        return Lattice.span(self.relations, self.n)

    def _smith(self):
        rel = IntMatrix.from_columns(self.relations, nrows=self.n) if self.relations else IntMatrix.zeros(self.n, 0)
        dec = snf(rel)
        diag = list(dec.diagonal) + [0] * (self.n - min(dec.S.shape))
        return dec, diag

    @property
    def invariants(self) -> tuple[int, ...]:
        """Smith diagonal padded to length n (1 = trivial, 0 = free)."""
        return tuple(self._smith()[1])

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariants if d == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariants if d > 1)

    @property
    def order(self):
        return INFINITE if self.free_rank else prod(self.torsion)

    def smith_coordinates(self, vec: Sequence[int]) -> tuple[int, ...]:
        dec, diag = self._smith()
        y = dec.U @ vec
        return tuple(yi % d if d else yi for yi, d in zip(y, diag) if d != 1)

    def smith_lift(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Raw vector whose Smith coordinates are ``coords``."""
        dec, diag = self._smith()
        full, it = [], iter(coords)
        for d in diag:
            full.append(0 if d == 1 else next(it))
        return unimodular_inverse(dec.U) @ full

    def is_zero(self, vec: Sequence[int]) -> bool:
        return tuple(vec) in self.relation_lattice if self.relations else not any(vec)

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z_{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "1"
