"""Twisted conjugacy in finitely generated nilpotent groups.

``g ~ f`` (twisted by an automorphism ``phi``) when ``phi(x) g = f x`` for
some ``x``.  Reidemeister classes are computed layer by layer along the
lower central series: the classes of ``G / C`` for the last nontrivial term
``C`` are lifted to ``G``, each splitting into ``[C : L(C, phi_g)]``
classes where ``phi_g(x) = g^-1 phi(x) g`` and
``L(C, psi) = {c in C : psi(x) = c x for some x}``.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import (EmptyDownstairs, MapError, MuNotWellDefined, NotAdmissible, NotAutomorphism,
                     NotCentral, TorsionPresent)
from .intlat import (INFINITE, AbelianGroup, IntMatrix, Lattice, cokernel_vector, kernel_basis,
                     lattice_index, SpanSolver, transversal)
from .pc.maps import GroupMap, check_map, complete_images, induced_map
from .pc.presentation import Element, PcPresentation
from .pc.series import kernel_of_central_hom, lower_central_series, quotient_mod, top_layer, upper_central_series
from .pc.subgroup import Subgroup, subgroup_from_generators, trivial_subgroup, whole_group


@dataclass(frozen=True)
class InfinityWitness:
    """Certificate for an infinite Reidemeister number.

    ``DegenerateLattice``: ``vector`` is a nonzero functional on the layer
    coordinates vanishing on ``L`` (so the index is infinite); ``fixed`` is a
    nonzero fixed vector of the layer map when the layer is the whole group.
    ``FixedOnFactor``: ``vector`` is a nonzero fixed vector of the induced
    map on the upper central factor ``factor``, ``element`` a lift of it.
    """

    kind: str
    layer: int
    vector: tuple[int, ...]
    element: Element | None = None
    fixed: tuple[int, ...] | None = None

    def describe(self) -> str:
        if self.kind == "FixedOnFactor":
            return f"fixed vector {list(self.vector)} on upper central factor {self.layer}"
        return f"layer {self.layer}, kernel witness {list(self.vector)}"


@dataclass(frozen=True)
class TwistedClass:
    representative: Element
    layer_trace: tuple = ()


@dataclass
class ReidemeisterResult:
    count: int | float
    classes: list[TwistedClass] = field(default_factory=list)
    layer: int | None = None
    witness: InfinityWitness | None = None

    @property
    def is_finite(self) -> bool:
        return self.count != INFINITE

    @property
    def representatives(self) -> list[Element]:
        return [c.representative for c in self.classes]

    @classmethod
    def finite(cls, classes: list[TwistedClass]) -> "ReidemeisterResult":
        return cls(len(classes), list(classes))

    @classmethod
    def infinite(cls, witness: InfinityWitness) -> "ReidemeisterResult":
        return cls(INFINITE, [], witness.layer, witness)

    def __repr__(self):
        if self.is_finite:
            return f"Finite({self.count})"
        return f"Infinite({self.witness.describe()})"


# ---------------------------------------------------------------------------
# Abelian groups


def reidemeister_abelian(matrix, group: AbelianGroup | None = None) -> ReidemeisterResult:
    """Classes of ``phi`` on ``Z^n / R``; ``matrix`` acts on column vectors.

    The classes are the cosets of ``im(phi - id) + R``.
    """
    m = matrix if isinstance(matrix, IntMatrix) else IntMatrix.from_rows(matrix)
    n = m.nrows
    group = group or AbelianGroup(n)
    diff = m - IntMatrix.identity(n)
    lat = Lattice.span(diff.columns() + [list(r) for r in group.relations], n)
    if lattice_index(lat) == INFINITE:
        cols = diff.columns() + [list(r) for r in group.relations]
        vec = cokernel_vector(IntMatrix.from_columns(cols, nrows=n))
        ker = kernel_basis(diff) if not group.relations else []
        return ReidemeisterResult.infinite(
            InfinityWitness("DegenerateLattice", 1, vec, fixed=ker[0] if ker else None))
    return ReidemeisterResult.finite([TwistedClass(t, ((t, k),)) for k, t in enumerate(transversal(lat))])


# ---------------------------------------------------------------------------
# L(C, psi) and fixed subgroups


@dataclass
class LSubgroupResult:
    group: PcPresentation
    central: Subgroup
    psi: GroupMap
    preimage: Subgroup  # full preimage H of Fix on G / C
    generators: list[Element]  # c_j = psi(f_j) f_j^-1
    values: list[tuple[int, ...]]  # c_j in raw coordinates of C
    structure: AbelianGroup  # C as Z^t / R
    lattice: Lattice  # L + R in Z^t

    @cached_property
    def _solver(self) -> SpanSolver | None:
        cols = [list(v) for v in self.values] + [list(r) for r in self.structure.relations]
        if not cols:
            return None
        return SpanSolver(IntMatrix.from_columns(cols, nrows=len(self.central.gens)))

    @property
    def preimages(self) -> tuple[Element, ...]:
        return self.preimage.gens

    @property
    def index(self):
        return lattice_index(self.lattice)

    def transversal(self) -> list[Element]:
        return [self.central.element(t) for t in transversal(self.lattice)]

    def witness_for(self, c: Element) -> Element | None:
        """``x`` with ``psi(x) = c x``, or ``None`` when ``c`` is not in ``L``."""
        G, C = self.group, self.central
        q = C.decompose(c)
        if q is None:
            return None
        if self._solver is None:
            return G.identity if not any(q) else None
        z = self._solver.solve(q)
        if z is None:
            return None
        x = self.preimage.element(z[:len(self.values)])
        assert self.psi(x) == G.mul(c, x)
        return x


@lru_cache(maxsize=4096)
def _quotient(G: PcPresentation, C: Subgroup):
    layer = top_layer(G)
    if layer is not None and layer[0] == C:
        return layer[1], layer[2]
    return quotient_mod(G, C)


@lru_cache(maxsize=65536)
def _twist(phi: GroupMap, g: Element) -> GroupMap:
    return phi.twisted_by(g)


def _mu_values(G: PcPresentation, psi: GroupMap, H: Subgroup, C: Subgroup) -> list[tuple[int, ...]]:
    out = []
    for h in H.gens:
        c = G.mul(psi(h), G.inv(h))
        q = C.decompose(c)
        if q is None:
            raise MuNotWellDefined(f"psi(h) h^-1 for h = {G.word(h)} is not in the central subgroup")
        out.append(q)
    return out


def L_subgroup(G: PcPresentation, C: Subgroup, psi: GroupMap) -> LSubgroupResult:
    return _L_subgroup(G, C, psi)


@lru_cache(maxsize=16384)
def _L_subgroup(G: PcPresentation, C: Subgroup, psi: GroupMap) -> LSubgroupResult:
    if not C.is_central():
        raise NotCentral("subgroup is not central")
    if any(psi(c) not in C for c in C.gens):
        raise NotAdmissible("the map does not preserve the central subgroup")
    Q, proj = _quotient(G, C)
    fix_q = fix_subgroup(Q, induced_map(psi, proj))
    H = subgroup_from_generators(G, [proj.section(f) for f in fix_q.gens] + list(C.gens))
    values = _mu_values(G, psi, H, C)
    struct = C.abelian_structure()
    lat = Lattice.span(values + list(struct.relations), len(C.gens))
    gens = [G.mul(psi(h), G.inv(h)) for h in H.gens]
    return LSubgroupResult(G, C, psi, H, gens, values, struct, lat)


def fix_subgroup(G: PcPresentation, phi: GroupMap) -> Subgroup:
    """``{x : phi(x) = x}`` by induction along the lower central series."""
    return _fix_subgroup(G, phi)


@lru_cache(maxsize=16384)
def _fix_subgroup(G: PcPresentation, phi: GroupMap) -> Subgroup:
    layer = top_layer(G)
    if layer is None:
        return trivial_subgroup(G)
    C, Q, proj = layer
    fix_q = _fix_subgroup(Q, induced_map(phi, proj))
    H = subgroup_from_generators(G, [proj.section(f) for f in fix_q.gens] + list(C.gens))
    values = _mu_values(G, phi, H, C)
    K = kernel_of_central_hom(H, values, C.abelian_structure())
    for x in K.gens:
        if phi(x) != x:
            raise MuNotWellDefined("kernel generator is not fixed")
    return K


# ---------------------------------------------------------------------------
# Reidemeister classes


def _layer_number(G: PcPresentation) -> int:
    return lower_central_series(G).length


def lift_classes(G: PcPresentation, C: Subgroup, phi: GroupMap, downstairs: Sequence[TwistedClass],
                 layer: int | None = None) -> ReidemeisterResult:
    """Lift the classes of the induced map on ``G / C`` to ``G``."""
    if not downstairs:
        raise EmptyDownstairs("no downstairs classes; the identity class always exists")
    Q, proj = _quotient(G, C)
    layer = layer if layer is not None else _layer_number(G)
    out = []
    for cls in downstairs:
        g = proj.section(cls.representative)
        ld = _L_subgroup(G, C, _twist(phi, g))
        if ld.index == INFINITE:
            cols = [list(v) for v in ld.values] + [list(r) for r in ld.structure.relations]
            t = len(C.gens)
            vec = cokernel_vector(IntMatrix.from_columns(cols, nrows=t)) if cols else (1,) + (0,) * (t - 1)
            return ReidemeisterResult.infinite(InfinityWitness("DegenerateLattice", layer, tuple(vec)))
        for k, t in enumerate(transversal(ld.lattice)):
            rep = G.mul(g, C.element(t))
            out.append(TwistedClass(rep, cls.layer_trace + ((g, k),)))
    return ReidemeisterResult.finite(out)


def _require_auto(phi: GroupMap) -> None:
    if not phi.is_automorphism:
        raise NotAutomorphism("map has not been validated as an automorphism (use check_map)")


def is_torsion_free_presented(G: PcPresentation) -> bool:
    return all(m == 0 for m in G.orders)


def reidemeister(G: PcPresentation, phi: GroupMap, use_shortcut: bool = True) -> ReidemeisterResult:
    """Reidemeister number with class representatives, or an infinity witness.

    For torsion-free presentations the upper central certificate is tried
    first unless ``use_shortcut`` is false.
    """
    _require_auto(phi)
    if use_shortcut and is_torsion_free_presented(G):
        w = infinity_witness_uc(G, phi)
        if w is not None:
            return ReidemeisterResult.infinite(w)
    return _reidemeister_layers(G, phi)


@lru_cache(maxsize=4096)
def _reidemeister_layers(G: PcPresentation, phi: GroupMap) -> ReidemeisterResult:
    layer = top_layer(G)
    if layer is None:
        return ReidemeisterResult.finite([TwistedClass(G.identity)])
    C, Q, proj = layer
    down = _reidemeister_layers(Q, induced_map(phi, proj))
    if not down.is_finite:
        return down
    return lift_classes(G, C, phi, down.classes, layer=_layer_number(G))


def decide(G: PcPresentation, phi: GroupMap, g: Element, f: Element) -> Element | None:
    """Witness ``x`` with ``phi(x) g = f x``, or ``None`` when ``g`` and ``f`` are not twisted conjugate."""
    _require_auto(phi)
    x = _decide(G, phi, tuple(g), tuple(f))
    if x is not None:
        assert G.mul(phi(x), g) == G.mul(f, x)
    return x


def _decide(G: PcPresentation, phi: GroupMap, g: Element, f: Element) -> Element | None:
    layer = top_layer(G)
    if layer is None:
        return G.identity
    C, Q, proj = layer
    xb = _decide(Q, induced_map(phi, proj), proj(g), proj(f))
    if xb is None:
        return None
    x0 = proj.section(xb)
    c = G.mul(G.inv(G.mul(f, x0)), G.mul(phi(x0), g))
    if c not in C:
        raise MuNotWellDefined("lifted discrepancy is not central")
    y = _L_subgroup(G, C, _twist(phi, g)).witness_for(G.inv(c))
    if y is None:
        return None
    return G.mul(x0, y)


# ---------------------------------------------------------------------------
# Upper central certificate and predicates


def factor_map_matrix(G: PcPresentation, phi: GroupMap, factor) -> list[list[int]]:
    """Matrix (rows) of the map induced by ``phi`` on the free part of an abelian section."""
    r = factor.free_rank
    cols = []
    for k in range(r):
        e = [int(i == k) for i in range(r)]
        cols.append(list(factor.coordinates(phi(factor.lift(e)))))
    return [[cols[j][i] for j in range(r)] for i in range(r)]


def infinity_witness_uc(G: PcPresentation, phi: GroupMap) -> InfinityWitness | None:
    """A nonzero fixed vector of ``phi`` on some upper central factor, if any."""
    series = upper_central_series(G)
    for i, sec in enumerate(series.factors):
        if sec.torsion:
            raise TorsionPresent(f"upper central factor {i} has torsion {sec.torsion}")
        r = sec.free_rank
        m = IntMatrix.from_rows(factor_map_matrix(G, phi, sec), ncols=r) - IntMatrix.identity(r)
        ker = kernel_basis(m)
        if ker:
            v = ker[0]
            return InfinityWitness("FixedOnFactor", i, tuple(v), element=sec.lift(v))
    return None


def formanek_fixed(r: int, c: int) -> bool:
    """Whether N(r, c) has nontrivial elements fixed by every automorphism.

    Class 1 is answered too (free abelian, so never), which keeps the
    predicate total on ``r >= 2, c >= 1``.
    """
    if r < 2 or c < 1:
        raise ValueError("requires r >= 2 and c >= 1")
    if c % (2 * r):
        return False
    k = c // (2 * r)
    return k >= 2 if r in (2, 3) else k >= 1


def theorem2_rinf(r: int, c: int) -> bool:
    """Sufficient condition for every automorphism of N(r, c) to have infinitely many classes."""
    if r < 2 or c < 1:
        raise ValueError("requires r >= 2 and c >= 1")
    return c >= 4 * r if r in (2, 3) else c >= 2 * r


# ---------------------------------------------------------------------------
# Sampling automorphisms


def _free_generators(G: PcPresentation) -> list[int]:
    return [k for k in range(G.n) if k not in G.definitions]


def _random_unimodular(k: int, rng: random.Random, spread: int = 2) -> list[list[int]]:
    m = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(2 * k):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if i != j:
            q = rng.randint(-spread, spread)
            # lower/upper unitriangular elementary step
            for row in m:
                row[j] += q * row[i]
    perm = list(range(k))
    rng.shuffle(perm)
    m = [[m[i][perm[j]] for j in range(k)] for i in range(k)]
    for j in range(k):
        if rng.random() < 0.5:
            for row in m:
                row[j] = -row[j]
    return m


def random_automorphism(G: PcPresentation, rng: random.Random, attempts: int = 500):
    """Random validated automorphism and a short description of how it was built."""
    free = _free_generators(G)
    last_error = None
    for _ in range(attempts):
        if G.is_finite:
            partial = {k: tuple(rng.randrange(m) for m in G.orders) for k in free}
            desc = {"free": [G.names[k] for k in free]}
        else:
            mat = _random_unimodular(len(free), rng)
            partial = {}
            for col, k in enumerate(free):
                word = [(free[row], mat[row][col]) for row in range(len(free)) if mat[row][col]]
                corr = [(t, rng.randint(-1, 1)) for t in range(G.n) if t not in free]
                partial[k] = G.evaluate(word + corr)
            desc = {"matrix": mat}
        try:
            images = complete_images(G, partial)
            phi = check_map(G, images, "auto")
        except MapError as exc:
            last_error = exc
            continue
        return phi, desc
    raise MapError(f"could not sample an automorphism of {G.name}: {last_error}")


@dataclass
class SpectrumSample:
    images: tuple[Element, ...]
    description: dict
    result: ReidemeisterResult


def spectrum_sample(G: PcPresentation, budget: int, seed: int) -> tuple[Counter, list[SpectrumSample]]:
    """Reidemeister numbers of ``budget`` random automorphisms (deterministic in ``seed``)."""
    rng = random.Random(seed)
    samples = []
    for _ in range(budget):
        phi, desc = random_automorphism(G, rng)
        samples.append(SpectrumSample(phi.images, desc, reidemeister(G, phi)))
    return Counter(s.result.count for s in samples), samples
