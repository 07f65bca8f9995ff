"""Free nilpotent groups N(r, c) through the Magnus embedding.

The generator ``a_i`` maps to ``1 + x_i`` in the free associative algebra
on ``x_1 .. x_r`` truncated above degree ``c``.  Basic commutators of the
Hall basis give the pc generating sequence; their structure constants are
read off from products in the algebra, never entered by hand.

Hall order: ``a1 < a2 < ... < ar``, then basic commutators of weight 2, 3,
... .  A commutator ``[u, v]`` is basic when ``u`` and ``v`` are basic,
``u > v``, and, if ``u = [x, y]``, also ``y <= v``.  Within one weight the
commutators are ordered by the positions of ``(u, v)``.  As a group element
``[u, v] = u^-1 v^-1 u v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NotAUnit, NotInGroup, RankClassMismatch, TooLarge
from .pc.presentation import PcPresentation

DEFAULT_MAX_LENGTH = 100


class TruncatedSeries:
    """Element of Z<x_1..x_r> modulo monomials of degree > c.

    ``coeffs`` maps words (tuples of letter indices ``0..r-1``) to nonzero
    integers; the empty word is the constant term.
    """

    __slots__ = ("rank", "cls", "coeffs")

    def __init__(self, rank: int, cls: int, coeffs: dict | None = None):
        self.rank = rank
        self.cls = cls
        self.coeffs = {w: v for w, v in (coeffs or {}).items() if v and len(w) <= cls}

    @classmethod
    def one(cls, rank: int, c: int) -> "TruncatedSeries":
        return cls(rank, c, {(): 1})

    @classmethod
    def generator(cls, rank: int, c: int, i: int, inverse: bool = False) -> "TruncatedSeries":
        if not inverse:
            return cls(rank, c, {(): 1, (i,): 1})
        return cls(rank, c, {(i,) * k: (-1) ** k for k in range(c + 1)})

    def _check(self, other: "TruncatedSeries") -> None:
        if (self.rank, self.cls) != (other.rank, other.cls):
            raise RankClassMismatch("series of different rank/class")

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        c = self.cls
        right = sorted(other.coeffs.items(), key=lambda kv: len(kv[0]))
        out: dict = {}
        for w1, c1 in self.coeffs.items():
            room = c - len(w1)
            for w2, c2 in right:
                if len(w2) > room:
                    break
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return TruncatedSeries(self.rank, c, out)

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries) and (self.rank, self.cls) == (other.rank, other.cls)
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.rank, self.cls, frozenset(self.coeffs.items())))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = dict(self.coeffs)
        for w, v in other.coeffs.items():
            out[w] = out.get(w, 0) - v
        return TruncatedSeries(self.rank, self.cls, out)

    @property
    def constant(self) -> int:
        return self.coeffs.get((), 0)

    def inverse(self) -> "TruncatedSeries":
        if self.constant != 1:
            raise NotAUnit("only series with constant term 1 are inverted")
        x = TruncatedSeries(self.rank, self.cls, {w: -v for w, v in self.coeffs.items() if w})
        # (1 - y)^-1 = 1 + y + y^2 + ... with y = -(u - 1)
        out = TruncatedSeries.one(self.rank, self.cls)
        term = TruncatedSeries.one(self.rank, self.cls)
        for _ in range(self.cls):
            term = term * x
            if not term.coeffs:
                break
            for w, v in term.coeffs.items():
                out.coeffs[w] = out.coeffs.get(w, 0) + v
        out.coeffs = {w: v for w, v in out.coeffs.items() if v}
        return out

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = TruncatedSeries.one(self.rank, self.cls), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def homogeneous(self, degree: int) -> dict:
        return {w: v for w, v in self.coeffs.items() if len(w) == degree}

    def __repr__(self):
        if not self.coeffs:
            return "0"
        letters = "xyzuvw" if self.rank <= 6 else None
        terms = []
        for w, v in sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0])):
            mono = "".join(letters[i] for i in w) if letters else "*".join(f"x{i + 1}" for i in w)
            terms.append(f"{v}" if not w else (mono if v == 1 else f"{v}*{mono}"))
        return " + ".join(terms)


def series_mul(u: TruncatedSeries, v: TruncatedSeries) -> TruncatedSeries:
    return u * v


def series_inv(u: TruncatedSeries) -> TruncatedSeries:
    return u.inverse()


# ---------------------------------------------------------------------------
# Hall basis


@dataclass(frozen=True)
class BasicCommutator:
    weight: int
    left: int | None
    right: int | None
    name: str


@dataclass(frozen=True)
class HallBasis:
    rank: int
    cls: int
    elements: tuple[BasicCommutator, ...]

    def __len__(self):
        return len(self.elements)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(b.weight for b in self.elements)

    def weight_counts(self) -> list[int]:
        return [sum(1 for b in self.elements if b.weight == w) for w in range(1, self.cls + 1)]

    def bracket(self, k: int) -> str:
        b = self.elements[k]
        if b.left is None:
            return b.name
        return f"[{self.bracket(b.left)},{self.bracket(b.right)}]"


def _mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def witt_rank(r: int, w: int) -> int:
    """Rank of the weight-``w`` component of the free Lie ring on ``r`` generators."""
    total = sum(_mobius(d) * r ** (w // d) for d in range(1, w + 1) if w % d == 0)
    return total // w


@lru_cache(maxsize=None)
def hall_basis(r: int, c: int) -> HallBasis:
    if r < 1 or c < 1:
        raise ValueError("rank and class must be positive")
    elems = [BasicCommutator(1, None, None, f"a{i + 1}") for i in range(r)]
    ncomm = 0
    for w in range(2, c + 1):
        new = []
        for u, bu in enumerate(elems):
            for v, bv in enumerate(elems):
                if bu.weight + bv.weight != w or u <= v:
                    continue
                if bu.left is not None and bu.right > v:
                    continue
                new.append((u, v))
        for u, v in sorted(new):
            ncomm += 1
            elems.append(BasicCommutator(w, u, v, f"c{ncomm}"))
    return HallBasis(r, c, tuple(elems))


# ---------------------------------------------------------------------------
# Magnus images and Mal'cev coordinates


class _WeightSolver:
    """Exact solver for ``part = sum e_b P(b)`` over one weight layer."""

    def __init__(self, polys: list[dict]):
        self.polys = polys
        monos = sorted({w for p in polys for w in p})
        rows = [[Fraction(p.get(m, 0)) for p in polys] for m in monos]
        # pick independent rows by elimination
        k = len(polys)
        chosen, basis = [], []
        for idx, row in enumerate(rows):
            vec = row[:]
            for piv, b in basis:
                if vec[piv]:
                    f = vec[piv] / b[piv]
                    vec = [x - f * y for x, y in zip(vec, b)]
            piv = next((j for j, x in enumerate(vec) if x), None)
            if piv is not None:
                basis.append((piv, vec))
                chosen.append(monos[idx])
                if len(chosen) == k:
                    break
        if len(chosen) != k:
            raise ValueError("Lie polynomials of the Hall basis are dependent")
        self.monos = chosen
        a = [[Fraction(p.get(m, 0)) for p in polys] for m in chosen]
        self.inv = _invert(a)

    def solve(self, part: dict) -> list[int]:
        rhs = [Fraction(part.get(m, 0)) for m in self.monos]
        sol = [sum(r * x for r, x in zip(row, rhs)) for row in self.inv]
        if any(s.denominator != 1 for s in sol):
            raise NotInGroup("non-integral Lie coordinates")
        out = [int(s) for s in sol]
        check: dict = {}
        for e, p in zip(out, self.polys):
            if e:
                for w, v in p.items():
                    check[w] = check.get(w, 0) + e * v
        if {w: v for w, v in check.items() if v} != {w: v for w, v in part.items() if v}:
            raise NotInGroup("lowest-degree term is not a Lie element")
        return out


def _invert(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col])
        m[col], m[piv] = m[piv], m[col]
        f = m[col][col]
        m[col] = [x / f for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                g = m[r][col]
                m[r] = [x - g * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


class MagnusModel:
    """Magnus images of the Hall basis of N(r, c) and coordinate extraction."""

    def __init__(self, r: int, c: int):
        self.rank, self.cls = r, c
        self.basis = hall_basis(r, c)
        images, inverses, polys = [], [], []
        for b in self.basis.elements:
            if b.left is None:
                i = len(images)
                images.append(TruncatedSeries.generator(r, c, i))
                inverses.append(TruncatedSeries.generator(r, c, i, inverse=True))
                polys.append({(i,): 1})
            else:
                u, v = images[b.left], images[b.right]
                ui, vi = inverses[b.left], inverses[b.right]
                img = ui * vi * u * v
                images.append(img)
                inverses.append(vi * ui * v * u)
                pu, pv = polys[b.left], polys[b.right]
                poly: dict = {}
                for w1, c1 in pu.items():
                    for w2, c2 in pv.items():
                        poly[w1 + w2] = poly.get(w1 + w2, 0) + c1 * c2
                        poly[w2 + w1] = poly.get(w2 + w1, 0) - c1 * c2
                polys.append({w: v for w, v in poly.items() if v})
        self.images, self.inverses, self.polys = images, inverses, polys
        self.layers = {}
        for w in range(1, c + 1):
            idx = [k for k, b in enumerate(self.basis.elements) if b.weight == w]
            if idx:
                self.layers[w] = (idx, _WeightSolver([polys[k] for k in idx]))

    def one(self) -> TruncatedSeries:
        return TruncatedSeries.one(self.rank, self.cls)

    def power(self, k: int, e: int) -> TruncatedSeries:
        if e >= 0:
            return self.images[k] ** e
        return self.inverses[k] ** (-e)

    def element(self, exps: Sequence[int]) -> TruncatedSeries:
        """Magnus image of ``prod b_k^e_k`` in Hall order."""
        out = self.one()
        for k, e in enumerate(exps):
            if e:
                out = out * self.power(k, e)
        return out

    def word_image(self, word: Iterable[tuple[int, int]]) -> TruncatedSeries:
        """Image of a word over the basis elements given as (index, exponent)."""
        out = self.one()
        for k, e in word:
            out = out * self.power(k, e)
        return out

    def coordinates(self, u: TruncatedSeries) -> tuple[int, ...]:
        if (u.rank, u.cls) != (self.rank, self.cls):
            raise RankClassMismatch("series does not match the model")
        if u.constant != 1:
            raise NotInGroup("group elements have constant term 1")
        coords = [0] * len(self.basis)
        cur = u
        for w in range(1, self.cls + 1):
            for d in range(1, w):
                if cur.homogeneous(d):
                    raise NotInGroup(f"residual term of degree {d}")
            if w not in self.layers:
                continue
            idx, solver = self.layers[w]
            exps = solver.solve(cur.homogeneous(w))
            prod = self.one()
            for k, e in zip(idx, exps):
                coords[k] = e
                if e:
                    prod = prod * self.power(k, e)
            cur = prod.inverse() * cur
        if cur != self.one():
            raise NotInGroup("series is not in the image of the free nilpotent group")
        return tuple(coords)


@lru_cache(maxsize=None)
def magnus_model(r: int, c: int) -> MagnusModel:
    return MagnusModel(r, c)


def malcev_coordinates(u: TruncatedSeries, basis: HallBasis) -> tuple[int, ...]:
    return magnus_model(basis.rank, basis.cls).coordinates(u)


def build_free_nilpotent(r: int, c: int, max_length: int = DEFAULT_MAX_LENGTH, check: bool = True) -> PcPresentation:
    """Weighted pc presentation of N(r, c) on its Hall basis."""
    if r < 1 or c < 1:
        raise ValueError("rank and class must be positive")
    size = sum(witt_rank(r, w) for w in range(1, c + 1))
    if size > max_length:
        raise TooLarge(f"N({r},{c}) has Hirsch length {size} > {max_length}")
    model = magnus_model(r, c)
    basis = model.basis
    n = len(basis)
    conj = {}
    for i in range(n):
        wi = basis.elements[i].weight
        for j in range(i + 1, n):
            if wi + basis.elements[j].weight > c:
                continue
            series = model.inverses[i] * model.images[j] * model.images[i]
            nf = model.coordinates(series)
            if any(nf[k] for k in range(n) if k != j):
                conj[(j, i)] = nf
    definitions = {k: ("comm", b.left, b.right, 1) for k, b in enumerate(basis.elements) if b.left is not None}
    return PcPresentation([b.name for b in basis.elements], [0] * n, conj, {},
                          name=f"N{r}_{c}", check=check, weights=basis.weights, definitions=definitions)
