"""Subgroups via canonical induced sequences and sifting."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from ..intlat import AbelianGroup
from .presentation import Element, PcPresentation


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class Subgroup:
    """A subgroup of a pc group held as a reduced induced sequence.

    The sequence elements have strictly increasing depths, positive leading
    exponents (dividing the relative order when that is finite), and every
    element is reduced against the later ones, which makes the sequence a
    canonical description of the subgroup.
    """

    def __init__(self, group: PcPresentation, sequence: Sequence[Element]):
        self.group = group
        self.gens: tuple[Element, ...] = tuple(sequence)
        self.depths = tuple(group.depth(s) for s in self.gens)
        self.leads = tuple(s[d] for s, d in zip(self.gens, self.depths))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.group is self.group and other.gens == self.gens

    def __hash__(self):
        return hash((id(self.group), self.gens))

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        words = ", ".join(self.group.word(s) for s in self.gens)
        return f"<Subgroup of {self.group.name}: [{words}]>"

    @property
    def is_trivial(self) -> bool:
        return not self.gens

    def relative_order(self, k: int) -> int:
        """Relative order of the ``k``-th sequence element (0 = infinite)."""
        m = self.group.orders[self.depths[k]]
        return m // self.leads[k] if m else 0

    @property
    def order(self):
        if any(self.relative_order(k) == 0 for k in range(len(self))):
            return float("inf")
        out = 1
        for k in range(len(self)):
            out *= self.relative_order(k)
        return out

    def element(self, exps: Sequence[int]) -> Element:
        """``s_1^e_1 ... s_t^e_t`` for arbitrary integer exponents."""
        G = self.group
        out = G.identity
        for s, e in zip(self.gens, exps):
            if e:
                out = G.mul(out, G.power(s, e))
        return out

    def decompose(self, x: Element) -> tuple[int, ...] | None:
        """Exponents ``q`` with ``element(q) == x``, or ``None`` if ``x`` is not a member."""
        G = self.group
        out = []
        for s, d, a in zip(self.gens, self.depths, self.leads):
            if G.depth(x) < d:
                return None
            q, r = divmod(x[d], a)
            if r:
                return None
            out.append(q)
            if q:
                x = G.mul(G.power(s, -q), x)
        if any(x):
            return None
        return tuple(out)

    def __contains__(self, x: Element) -> bool:
        return self.decompose(x) is not None

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return all(s in self for s in other.gens)

    def reduce(self, x: Element) -> Element:
        """Canonical representative of the coset ``x H`` (right multiplication by members)."""
        G = self.group
        for s, d, a in zip(self.gens, self.depths, self.leads):
            q = x[d] // a
            if q:
                x = G.mul(x, G.power(s, -q))
        return x

    def is_normal(self) -> bool:
        G = self.group
        return all(G.comm(s, G.gen(i)) in self for s in self.gens for i in range(G.n))

    def is_central(self) -> bool:
        G = self.group
        return all(G.comm(s, G.gen(i)) == G.identity for s in self.gens for i in range(G.n))

    def is_abelian(self) -> bool:
        G = self.group
        return all(G.comm(s, t) == G.identity for k, s in enumerate(self.gens) for t in self.gens[k + 1:])

    def relation_vectors(self) -> list[tuple[int, ...]]:
        """Relations of the induced presentation, abelianized, as vectors in Z^t."""
        G, t = self.group, len(self.gens)
        rels = []
        for k in range(t):
            r = self.relative_order(k)
            if r:
                v = list(self.decompose(G.power(self.gens[k], r)))
                v[k] -= r
                rels.append(tuple(v))
        for k in range(t):
            for l in range(k + 1, t):
                c = G.comm(self.gens[l], self.gens[k])
                if any(c):
                    rels.append(self.decompose(c))
        return [v for v in rels if any(v)]

    def abelian_structure(self) -> AbelianGroup:
        return AbelianGroup(len(self.gens), tuple(self.relation_vectors()))


def trivial_subgroup(G: PcPresentation) -> Subgroup:
    return Subgroup(G, ())


def whole_group(G: PcPresentation) -> Subgroup:
    return Subgroup(G, [G.gen(i) for i in range(G.n)])


class _Builder:
    def __init__(self, G: PcPresentation, table=None):
        self.G = G
        self.table: dict[int, Element] = dict(table or {})

    def _normalize_lead(self, x: Element) -> Element:
        G = self.G
        d = G.depth(x)
        m = G.orders[d]
        a = x[d]
        if m:
            g, s, _ = _xgcd(a, m)
            if g != a:
                x = G.power(x, s)
        elif a < 0:
            x = G.inv(x)
        return x

    def sift_insert(self, x: Element) -> bool:
        """Insert ``x``; returns whether the table changed."""
        G = self.G
        changed = False
        pending = [x]
        while pending:
            x = pending.pop()
            while any(x):
                d = G.depth(x)
                y = self.table.get(d)
                if y is None:
                    self.table[d] = self._normalize_lead(x)
                    changed = True
                    break
                a, b = x[d], y[d]
                if a % b == 0:
                    x = G.mul(G.power(y, -(a // b)), x)
                    continue
                g, s, t = _xgcd(b, a)
                z = self._normalize_lead(G.mul(G.power(y, s), G.power(x, t)))
                self.table[d] = z
                changed = True
                pending.append(y)
                # x still sifts against the improved entry
        return changed

    def close(self) -> None:
        G = self.G
        while True:
            changed = False
            seq = [self.table[d] for d in sorted(self.table)]
            for k, s in enumerate(seq):
                d = G.depth(s)
                m = G.orders[d]
                if m:
                    changed |= self.sift_insert(G.power(s, m // s[d]))
                for t in seq[k + 1:]:
                    changed |= self.sift_insert(G.comm(t, s))
            if not changed:
                return

    def canonical(self) -> list[Element]:
        G = self.G
        depths = sorted(self.table)
        seq = [self.table[d] for d in depths]
        # reduce each element against the later ones, bottom-up
        for k in reversed(range(len(seq))):
            x = seq[k]
            for l in range(k + 1, len(seq)):
                d, a = depths[l], seq[l][depths[l]]
                q = x[d] // a
                if q:
                    x = G.mul(x, G.power(seq[l], -q))
            seq[k] = x
        return seq


def subgroup_from_generators(G: PcPresentation, gens: Iterable[Element]) -> Subgroup:
    b = _Builder(G)
    for x in gens:
        b.sift_insert(tuple(x))
    b.close()
    return Subgroup(G, b.canonical())


def normal_closure(H: Subgroup, within: Subgroup | None = None) -> Subgroup:
    """Smallest subgroup containing ``H`` and normalized by ``within`` (default: the whole group)."""
    G = H.group
    conj_by = within.gens if within is not None else [G.gen(i) for i in range(G.n)]
    b = _Builder(G, {d: s for d, s in zip(H.depths, H.gens)})
    while True:
        changed = False
        for s in [b.table[d] for d in sorted(b.table)]:
            for g in conj_by:
                changed |= b.sift_insert(G.comm(s, g))
        b.close()
        if not changed:
            break
    return Subgroup(G, b.canonical())


def join(*subgroups: Subgroup) -> Subgroup:
    G = subgroups[0].group
    return subgroup_from_generators(G, [s for H in subgroups for s in H.gens])


def commutator_subgroup(H: Subgroup, K: Subgroup) -> Subgroup:
    """``[H, K]`` for subgroups normalized by each other's generators (e.g. normal ones)."""
    G = H.group
    gens = [G.comm(h, k) for h in H.gens for k in K.gens]
    return normal_closure(subgroup_from_generators(G, gens), join(H, K))


def member_decompose(H: Subgroup, x: Element) -> tuple[int, ...] | None:
    return H.decompose(x)
