"""Homomorphisms between pc groups given by generator images."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from ..errors import KernelNotPreserved, MapError, NotBijective, RelationViolated
from ..intlat import Lattice, lattice_index
from .presentation import Element, PcPresentation
from .subgroup import Subgroup, whole_group


@dataclass(frozen=True, eq=False)
class GroupMap:
    """Homomorphism ``source -> target`` determined by the images of the pc generators."""

    source: PcPresentation
    target: PcPresentation
    images: tuple[Element, ...]
    kind: str = "hom"  # 'hom', 'endo' or 'auto' once verified

    def __post_init__(self):
        if len(self.images) != self.source.n:
            raise MapError("one image per source generator required")

    def __eq__(self, other):
        return (isinstance(other, GroupMap) and other.source is self.source
                and other.target is self.target and other.images == self.images)

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.images))

    @property
    def is_automorphism(self) -> bool:
        return self.kind == "auto"

    def __call__(self, x: Element) -> Element:
        T = self.target
        out = T.identity
        for img, e in zip(self.images, x):
            if e:
                out = T.mul(out, T.power(img, e))
        return out

    def then(self, other: "GroupMap", kind: str = "hom") -> "GroupMap":
        """``x -> other(self(x))``."""
        return GroupMap(self.source, other.target, tuple(other(img) for img in self.images), kind)

    def twisted_by(self, g: Element) -> "GroupMap":
        """``x -> g^-1 self(x) g``: the map followed by the inner automorphism of ``g``."""
        T = self.target
        gi = T.inv(g)
        return GroupMap(self.source, T, tuple(T.mul(gi, T.mul(img, g)) for img in self.images), self.kind)

    def matrix_on_abelianization(self) -> list[list[int]]:
        """Columns: abelianized images of generators, in pc coordinates mod relations."""
        return [list(img) for img in self.images]


def identity_map(G: PcPresentation) -> GroupMap:
    return GroupMap(G, G, tuple(G.gen(i) for i in range(G.n)), "auto")


def inner_automorphism(G: PcPresentation, g: Element) -> GroupMap:
    return identity_map(G).twisted_by(g)


def complete_images(G: PcPresentation, partial: Mapping[int, Element]) -> list[Element]:
    """Fill in missing generator images from the generator definitions."""
    images: list[Element | None] = [None] * G.n
    defs = G.definitions
    for k in range(G.n):
        if k in partial:
            images[k] = tuple(partial[k])
        elif k in defs:
            images[k] = G.apply_definition(k, images)
        else:
            raise MapError(f"no image given for {G.names[k]} and it has no definition")
    return images


def automorphism(G: PcPresentation, **images: str) -> GroupMap:
    """Automorphism of ``G`` from words, e.g. ``automorphism(G, a="b", b="a b")``.

    Generators left out must be derivable from their definitions.
    """
    partial = {}
    for name, word in images.items():
        if name not in G.index:
            raise MapError(f"unknown generator {name}")
        partial[G.index[name]] = G.parse_word(word)
    return check_map(G, complete_images(G, partial), "auto")


def _relation_failure(G: PcPresentation, T: PcPresentation, images: Sequence[Element]):
    f = GroupMap(G, T, tuple(images))
    for kind, idx, rhs in G.relations():
        if kind == "pow":
            (i,) = idx
            lhs = T.power(images[i], G.orders[i])
        else:
            j, i = idx
            lhs = T.conjugate(images[j], images[i])
        if lhs != f(rhs):
            return kind, idx
    return None


def abelianization_lattice(G: PcPresentation) -> Lattice:
    """Relation lattice of ``G_ab`` in pc coordinates Z^n."""
    return Lattice.span(whole_group(G).relation_vectors(), G.n)


def check_map(G: PcPresentation, images: Sequence[Element], require: str = "auto",
              target: PcPresentation | None = None) -> GroupMap:
    """Validate a homomorphism given by generator images.

    ``require='endo'`` checks that all defining relations hold for the
    images; ``'auto'`` additionally checks that the induced map on the
    abelianization is onto, which for finitely generated nilpotent groups
    is equivalent to bijectivity of the map itself.
    """
    T = target or G
    images = tuple(tuple(x) for x in images)
    if len(images) != G.n:
        raise MapError("one image per generator required")
    if any(len(x) != T.n for x in images):
        raise MapError("image of wrong length")
    bad = _relation_failure(G, T, images)
    if bad is not None:
        kind, idx = bad
        names = ",".join(G.names[k] for k in idx)
        raise RelationViolated(f"{kind} relation ({names}) is not preserved", relation=bad)
    if require in ("hom", "endo"):
        return GroupMap(G, T, images, "endo" if T is G else "hom")
    if require != "auto":
        raise ValueError(f"unknown requirement {require!r}")
    if T is not G:
        raise MapError("automorphisms must map a group to itself")
    rel = whole_group(G).relation_vectors()
    lat = Lattice.span(list(images) + rel, G.n)
    if lattice_index(lat) != 1:
        raise NotBijective("induced map on the abelianization is not bijective")
    return GroupMap(G, G, images, "auto")


def induced_map(f: GroupMap, projection: "Projection") -> GroupMap:
    """Map induced by ``f`` on the quotient described by ``projection``."""
    return _induced_map(f, projection)


@lru_cache(maxsize=65536)
def _induced_map(f: GroupMap, projection: "Projection") -> GroupMap:
    if f.source is not projection.source or f.target is not projection.source:
        raise MapError("map and projection live on different groups")
    kernel = projection.kernel
    for s in kernel.gens:
        if f(s) not in kernel:
            raise KernelNotPreserved("the map does not preserve the kernel of the projection")
    Q = projection.target
    images = tuple(projection(f(projection.section(Q.gen(i)))) for i in range(Q.n))
    g = GroupMap(Q, Q, images, f.kind)
    for i in range(f.source.n):
        assert projection(f(f.source.gen(i))) == g(projection(f.source.gen(i)))
    return g


@dataclass(frozen=True, eq=False)
class Projection:
    """Quotient map ``source -> source / kernel`` with its canonical section."""

    source: PcPresentation
    target: PcPresentation
    kernel: Subgroup
    kept: tuple[int, ...]

    def __call__(self, x: Element) -> Element:
        r = self.kernel.reduce(x)
        return tuple(r[k] for k in self.kept)

    def section(self, y: Element) -> Element:
        """Preimage with zero exponents on the kernel coordinates."""
        out = [0] * self.source.n
        for k, e in zip(self.kept, y):
            out[k] = e
        return tuple(out)

    def as_map(self) -> GroupMap:
        P = self.source
        return GroupMap(P, self.target, tuple(self(P.gen(i)) for i in range(P.n)), "hom")
