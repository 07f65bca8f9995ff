"""Quotients, abelian sections and central series."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from ..errors import MuNotWellDefined, NotTailCompatible
from ..intlat import AbelianGroup, IntMatrix, kernel_basis
from .maps import Projection
from .presentation import Element, PcPresentation
from .subgroup import (Subgroup, commutator_subgroup, normal_closure, subgroup_from_generators,
                       trivial_subgroup, whole_group)


def quotient_mod(G: PcPresentation, N: Subgroup, name: str | None = None) -> tuple[PcPresentation, Projection]:
    """Presentation of ``G / N`` and the projection onto it.

    Coset representatives are the elements reduced against the canonical
    induced sequence of ``N``; the quotient generators are the pc
    generators not fully absorbed by ``N``.
    """
    if N.group is not G:
        raise ValueError("subgroup of a different group")
    if not N.is_normal():
        raise NotTailCompatible("quotient requires a normal subgroup")
    lead = dict(zip(N.depths, N.leads))
    kept = tuple(k for k in range(G.n) if lead.get(k, 0) != 1)
    orders = [lead[k] if k in lead else G.orders[k] for k in kept]
    pos = {k: t for t, k in enumerate(kept)}

    def project(x):
        r = N.reduce(x)
        return tuple(r[k] for k in kept)

    powers, conj = {}, {}
    for t, k in enumerate(kept):
        if orders[t]:
            powers[t] = project(G.power(G.gen(k), orders[t]))
    for t, k in enumerate(kept):
        for u in range(t):
            i = kept[u]
            rhs = project(G.conjugate(G.gen(k), G.gen(i)))
            if rhs != tuple(int(v == t) for v in range(len(kept))):
                conj[(t, u)] = rhs
    weights = None
    if G.weights is not None:
        weights = [G.weights[k] for k in kept]
    Q = PcPresentation([G.names[k] for k in kept], orders, conj, powers,
                       name=name or f"{G.name}/N", check=False, weights=weights)
    return Q, Projection(G, Q, N, kept)


def _is_tail(G: PcPresentation, H: Subgroup) -> bool:
    if not H.gens:
        return True
    start = H.depths[0]
    return H.depths == tuple(range(start, G.n)) and all(a == 1 for a in H.leads)


# ---------------------------------------------------------------------------


@dataclass
class AbelianSection:
    """Coordinates on an abelian section ``upper / lower`` of a pc group.

    Raw coordinates are decompositions over the induced sequence of
    ``upper``; ``structure`` is Z^t modulo the relations of ``upper`` and
    the images of ``lower``.
    """

    upper: Subgroup
    lower: Subgroup
    structure: AbelianGroup

    @property
    def free_rank(self) -> int:
        return self.structure.free_rank

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.structure.torsion

    def raw(self, x: Element) -> tuple[int, ...]:
        q = self.upper.decompose(x)
        if q is None:
            raise ValueError("element outside the section")
        return q

    def coordinates(self, x: Element) -> tuple[int, ...]:
        """Smith coordinates: reduced torsion components first, then the free ones."""
        return self.structure.smith_coordinates(self.raw(x))

    def lift(self, coords) -> Element:
        return self.upper.element(self.structure.smith_lift(coords))

    def describe(self) -> str:
        return self.structure.describe()


def abelian_section(upper: Subgroup, lower: Subgroup | None = None) -> AbelianSection:
    G = upper.group
    lower = lower or trivial_subgroup(G)
    rels = list(upper.relation_vectors())
    for s in lower.gens:
        q = upper.decompose(s)
        if q is None:
            raise ValueError("lower term is not contained in the upper term")
        rels.append(q)
    return AbelianSection(upper, lower, AbelianGroup(len(upper.gens), tuple(v for v in rels if any(v))))


def abelianization(H: Subgroup | PcPresentation) -> tuple[AbelianGroup, Callable[[Element], tuple[int, ...]]]:
    """``H / [H, H]`` as an abelian group description plus a projection in Smith coordinates."""
    if isinstance(H, PcPresentation):
        H = whole_group(H)
    sec = AbelianSection(H, trivial_subgroup(H.group), H.abelian_structure())
    return sec.structure, sec.coordinates


# ---------------------------------------------------------------------------


@dataclass
class CentralSeriesData:
    kind: str  # 'lower' or 'upper'
    terms: list[Subgroup]
    factors: list[AbelianSection]

    @property
    def length(self) -> int:
        return len(self.factors)

    def factor_ranks(self) -> list[int]:
        return [f.free_rank for f in self.factors]


def lower_central_series(G: PcPresentation) -> CentralSeriesData:
    return _lower_central_series(G)


@lru_cache(maxsize=256)
def _lower_central_series(G: PcPresentation) -> CentralSeriesData:
    whole = whole_group(G)
    terms = [whole]
    while not terms[-1].is_trivial:
        nxt = commutator_subgroup(terms[-1], whole)
        if nxt == terms[-1]:
            raise MuNotWellDefined("lower central series does not terminate")
        terms.append(nxt)
    factors = [abelian_section(terms[k], terms[k + 1]) for k in range(len(terms) - 1)]
    return CentralSeriesData("lower", terms, factors)


def nilpotency_class(G: PcPresentation) -> int:
    return lower_central_series(G).length


def inferred_weights(G: PcPresentation) -> tuple[int, ...]:
    """Largest ``w`` with a member of ``gamma_w`` of depth ``k``, per generator."""
    terms = lower_central_series(G).terms
    out = [1] * G.n
    for w, term in enumerate(terms, 1):
        for d in term.depths:
            out[d] = w
    return tuple(out)


def is_weighted(G: PcPresentation) -> bool:
    """Whether every lower central term is a tail segment of the pc sequence."""
    return all(_is_tail(G, t) for t in lower_central_series(G).terms)


@lru_cache(maxsize=256)
def top_layer(G: PcPresentation):
    """Last nontrivial lower central term ``C`` with ``G / C`` and its projection."""
    terms = lower_central_series(G).terms
    if len(terms) < 2:
        return None
    C = terms[-2]
    Q, proj = quotient_mod(G, C, name=f"{G.name}/gamma{len(terms) - 1}")
    return C, Q, proj


def kernel_of_central_hom(H: Subgroup, values: list[tuple[int, ...]], C: AbelianGroup) -> Subgroup:
    """Kernel of a homomorphism ``H -> C`` into an abelian group.

    ``values[k]`` is the image of the ``k``-th sequence element of ``H`` as a
    raw vector for ``C``.  The kernel is generated by lifts of the lattice
    kernel together with the derived subgroup of ``H`` (closed up to normality
    in ``H``).
    """
    G = H.group
    t = len(H.gens)
    rels = list(C.relations)
    cols = [list(v) for v in values] + [list(r) for r in rels]
    if C.n == 0 or not cols:
        lifts = [H.element([int(i == k) for i in range(t)]) for k in range(t)]
    else:
        m = IntMatrix.from_columns(cols, nrows=C.n)
        lifts = [H.element(b[:t]) for b in kernel_basis(m)]
    derived = [G.comm(H.gens[l], H.gens[k]) for k in range(t) for l in range(k + 1, t)]
    K = subgroup_from_generators(G, lifts + derived)
    return normal_closure(K, H)


def center(G: PcPresentation) -> Subgroup:
    """Center, computed layer by layer along the lower central series."""
    return _center(G)


@lru_cache(maxsize=256)
def _center(G: PcPresentation) -> Subgroup:
    layer = top_layer(G)
    if layer is None:
        return trivial_subgroup(G)
    C, Q, proj = layer
    ZQ = _center(Q)
    H = subgroup_from_generators(G, [proj.section(z) for z in ZQ.gens] + list(C.gens))
    csec = abelian_section(C)
    values = []
    for h in H.gens:
        v = []
        for i in range(G.n):
            c = G.comm(h, G.gen(i))
            q = C.decompose(c)
            if q is None:
                raise MuNotWellDefined("commutator escapes the central layer")
            v.extend(q)
        values.append(tuple(v))
    k = len(C.gens)
    big = AbelianGroup(k * G.n, tuple(
        tuple([0] * (k * i) + list(r) + [0] * (k * (G.n - i - 1)))
        for i in range(G.n) for r in csec.structure.relations))
    Z = kernel_of_central_hom(H, values, big)
    for z in Z.gens:
        assert all(G.comm(z, G.gen(i)) == G.identity for i in range(G.n))
    return Z


def upper_central_series(G: PcPresentation) -> CentralSeriesData:
    return _upper_central_series(G)


@lru_cache(maxsize=256)
def _upper_central_series(G: PcPresentation) -> CentralSeriesData:
    terms = [trivial_subgroup(G)]
    quotients = []
    while len(terms[-1]) < G.n or terms[-1] != whole_group(G):
        Q, proj = quotient_mod(G, terms[-1], name=f"{G.name}/zeta{len(terms) - 1}")
        ZQ = _center(Q)
        if ZQ.is_trivial:
            raise MuNotWellDefined("upper central series stalls; group is not nilpotent")
        nxt = subgroup_from_generators(G, [proj.section(z) for z in ZQ.gens] + list(terms[-1].gens))
        terms.append(nxt)
        quotients.append((Q, proj))
    factors = [abelian_section(terms[k + 1], terms[k]) for k in range(len(terms) - 1)]
    data = CentralSeriesData("upper", terms, factors)
    data.quotients = quotients
    return data
