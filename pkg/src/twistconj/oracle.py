"""Brute-force checks of twisted conjugacy straight from the definition.

Used as an independent reference for the layered algorithm: nothing here
touches central series, lattices or quotients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import TooLarge
from .pc.maps import GroupMap
from .pc.presentation import Element, PcPresentation

DEFAULT_BOUND = 10000


class FiniteGroupTable:
    """All elements of a finite pc group, indexed by normal form."""

    def __init__(self, G: PcPresentation, bound: int = DEFAULT_BOUND):
        if not G.is_finite:
            raise TooLarge(f"{G.name} is infinite")
        if G.order > bound:
            raise TooLarge(f"{G.name} has {G.order} elements, bound is {bound}")
        self.group = G
        self.elements: list[Element] = list(itertools.product(*(range(m) for m in G.orders)))
        self.index = {x: k for k, x in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            if b < a:
                a, b = b, a
            self.parent[b] = a


@dataclass
class BruteForceResult:
    count: int
    classes: list[list[Element]]
    table: FiniteGroupTable
    labels: list[int]

    def orbit_of(self, g: Element) -> int:
        """Position in ``classes`` of the class containing ``g``."""
        return self.labels[self.table.index[tuple(g)]]


def brute_force_reidemeister(G: PcPresentation, phi: GroupMap, bound: int = DEFAULT_BOUND) -> BruteForceResult:
    """Orbits of ``g -> phi(x)^-1 g x`` on a finite group.

    This is a right action of ``G``, so orbits under the generators already
    are the full orbits.
    """
    table = FiniteGroupTable(G, bound)
    uf = _UnionFind(len(table))
    for i in range(G.n):
        x = G.gen(i)
        left = G.inv(phi(x))
        for k, g in enumerate(table.elements):
            uf.union(k, table.index[G.mul(left, G.mul(g, x))])
    roots: dict[int, int] = {}
    labels = []
    classes: list[list[Element]] = []
    for k, g in enumerate(table.elements):
        r = uf.find(k)
        if r not in roots:
            roots[r] = len(classes)
            classes.append([])
        labels.append(roots[r])
        classes[roots[r]].append(g)
    return BruteForceResult(len(classes), classes, table, labels)


def _box(n: int, B: int) -> Iterator[tuple[int, ...]]:
    """Vectors in ``[-B, B]^n`` by max norm, then lexicographically."""
    yield (0,) * n
    for k in range(1, B + 1):
        for v in itertools.product(range(-k, k + 1), repeat=n):
            if max(map(abs, v)) == k:
                yield v


def bounded_witness_search(G: PcPresentation, phi: GroupMap, g: Element, f: Element, B: int) -> Element | None:
    """First ``x`` with exponents in ``[-B, B]`` and ``phi(x) g = f x``.

    A miss is only evidence, not a proof, that the two are not twisted conjugate.
    """
    g, f = tuple(g), tuple(f)
    for v in _box(G.n, B):
        x = G.normalize(v)
        if G.mul(phi(x), g) == G.mul(f, x):
            return x
    return None
