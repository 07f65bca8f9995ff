import pytest
from hypothesis import given, strategies as st

from conftest import aut
from twistconj.errors import (InconsistentPresentation, KernelNotPreserved, MapError, NotBijective, NotNilpotent,
                              NotTailCompatible, ParseError, RelationViolated, UnknownGenerator)
from twistconj.freenil import build_free_nilpotent
from twistconj.pc import (abelian, abelianization, automorphism, center, check_map, complete_images, format_automorphism,
                          format_presentation, free_abelian, heisenberg, identity_map, induced_map,
                          load_automorphism_images, load_presentation, lower_central_series,
                          member_decompose, nilpotency_class, quotient_mod, subgroup_from_generators,
                          trivial_subgroup, upper_central_series, whole_group)
from twistconj.pc.series import is_weighted

HEIS_SRC = """
# [a, b] = c
pcgroup Heisenberg
gens a b c
orders 0 0 0
conj b a = b c^-1
"""

N23 = build_free_nilpotent(2, 3)
N32 = build_free_nilpotent(3, 2)
H3 = heisenberg(3)


def elements(G, lo=-3, hi=3):
    bounds = [(lo, hi) if m == 0 else (0, m - 1) for m in G.orders]
    return st.tuples(*(st.integers(a, b) for a, b in bounds)).map(G.normalize)


# -- loading -----------------------------------------------------------------


def test_load_heisenberg():
    G = load_presentation(HEIS_SRC)
    assert G.n == 3 and G.hirsch_length == 3
    a, b, c = (G.gen(i) for i in range(3))
    assert G.comm(a, b) == c and G.comm(c, a) == G.identity


def test_load_free_abelian():
    G = load_presentation("pcgroup Z2\ngens x y\norders 0 0\n")
    assert G.n == 2 and G.commutes(1, 0)
    assert G.mul((1, 0), (0, 1)) == G.mul((0, 1), (1, 0))


def test_load_not_nilpotent():
    with pytest.raises(NotNilpotent):
        load_presentation("pcgroup bad\ngens a b\norders 0 0\nconj b a = a\n")


def test_load_inconsistent_reports_triple():
    src = "pcgroup bad\ngens a b c\norders 2 0 0\nconj b a = b c\n"
    with pytest.raises(InconsistentPresentation) as exc:
        load_presentation(src)
    assert exc.value.triple is not None


@pytest.mark.parametrize("src", [
    "gens a\norders 0\npcgroup x\n",
    "pcgroup G\ngens a b\norders 0\n",
    "pcgroup G\ngens a b\norders 0 0\nconj a b = a\n",
    "pcgroup G\ngens a b\norders 0 0\nconj b a b\n",
    "pcgroup G\ngens a b\norders 0 x\n",
])
def test_load_parse_errors(src):
    with pytest.raises(ParseError):
        load_presentation(src)


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        load_presentation("pcgroup G\ngens a b\norders 0 0\nconj b a = b z\n")
    with pytest.raises(UnknownGenerator):
        heisenberg().parse_word("a d")


def test_format_round_trip():
    for G in (heisenberg(), H3, N23, N32, abelian([4, 6])):
        G2 = load_presentation(format_presentation(G))
        assert G2.orders == G.orders and G2.names == G.names
        assert all(G2.conj_relation(j, i) == G.conj_relation(j, i) for i in range(G.n) for j in range(i + 1, G.n))


def test_automorphism_file_round_trip(H, swap):
    text = format_automorphism("swap", H, swap.images)
    name, images = load_automorphism_images(text, H)
    assert name == "swap" and tuple(images[k] for k in range(3)) == swap.images


# -- arithmetic -----------------------------------------------------------------


def test_evaluate_examples(H):
    assert H.parse_word("b a") == (1, 1, -1)
    assert H.parse_word("a a^-1") == H.identity
    assert free_abelian(2).parse_word("g1 g2 g1") == (2, 1)


def test_commutator_examples(H):
    a, b, c = H.gen(0), H.gen(1), H.gen(2)
    assert H.comm(a, b) == c
    assert H.comm(a, a) == H.identity
    assert H.comm(H.power(a, 2), b) == H.power(c, 2)


@pytest.mark.parametrize("G", [N23, N32, H3, heisenberg()], ids=lambda G: G.name)
@given(data=st.data())
def test_collection_is_associative(G, data):
    x, y, z = (data.draw(elements(G)) for _ in range(3))
    assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
    assert G.mul(x, G.inv(x)) == G.identity == G.mul(G.inv(x), x)


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(-3, 3)), max_size=8))
def test_evaluate_is_homomorphism(word):
    G = N23
    left, right = word[:len(word) // 2], word[len(word) // 2:]
    assert G.evaluate(word) == G.mul(G.evaluate(left), G.evaluate(right))


def test_finite_normal_forms():
    x = H3.normalize((5, 7, -1))
    assert all(0 <= e < 3 for e in x)
    assert H3.power(H3.gen(0), 3) == H3.identity


# -- subgroups -------------------------------------------------------------------


def test_subgroup_examples(H):
    Z2 = free_abelian(2)
    assert subgroup_from_generators(Z2, [(2, 0), (3, 0)]).gens == ((1, 0),)
    K = subgroup_from_generators(H, [(2, 0, 0), (0, 1, 0)])
    assert K.gens == ((2, 0, 0), (0, 1, 0), (0, 0, 2))
    assert subgroup_from_generators(H, []).is_trivial


def test_member_decompose_examples(H):
    Z2 = free_abelian(2)
    K = subgroup_from_generators(Z2, [(1, 0)])
    assert member_decompose(K, (5, 0)) == (5,)
    assert member_decompose(K, (0, 1)) is None
    L = subgroup_from_generators(H, [(2, 0, 0), (0, 1, 0)])
    assert member_decompose(L, (0, 0, 1)) is None


@given(data=st.data())
def test_subgroup_canonical_under_permutation(data):
    G = N23
    gens = data.draw(st.lists(elements(G, -2, 2), min_size=1, max_size=3))
    perm = data.draw(st.permutations(gens + gens[:1]))
    assert subgroup_from_generators(G, gens) == subgroup_from_generators(G, perm)


@given(data=st.data())
def test_sifting_is_sound(data):
    G = N23
    K = subgroup_from_generators(G, data.draw(st.lists(elements(G, -2, 2), min_size=1, max_size=3)))
    x = data.draw(elements(G, -2, 2))
    q = K.decompose(x)
    if q is not None:
        assert K.element(q) == x
    for s in K.gens:
        assert s in K
    y = K.element(data.draw(st.lists(st.integers(-2, 2), min_size=len(K), max_size=len(K))))
    assert y in K


def test_abelianization_examples(H):
    A, proj = abelianization(H)
    assert A.free_rank == 2 and not A.torsion
    assert proj(H.gen(2)) == (0, 0)
    assert abelianization(free_abelian(2))[0].free_rank == 2
    K = subgroup_from_generators(H, [(2, 0, 0), (0, 1, 0)])
    AK, _ = abelianization(K)
    assert AK.free_rank == 2 and not AK.torsion


# -- series and quotients ------------------------------------------------------------


def test_lower_central_series_examples(H):
    lcs = lower_central_series(H)
    assert [t.gens for t in lcs.terms] == [whole_group(H).gens, ((0, 0, 1),), ()]
    assert nilpotency_class(H) == 2
    assert nilpotency_class(free_abelian(2)) == 1
    assert lower_central_series(N23).factor_ranks() == [2, 1, 2]
    assert is_weighted(N23)


def test_upper_central_series_examples(H):
    ucs = upper_central_series(H)
    assert [t.gens for t in ucs.terms] == [(), ((0, 0, 1),), whole_group(H).gens]
    assert len(upper_central_series(free_abelian(3)).terms) == 2
    zeta1 = upper_central_series(N23).terms[1]
    assert zeta1 == lower_central_series(N23).terms[2]
    assert len(zeta1) == 2


@pytest.mark.parametrize("G", [N23, N32, H3], ids=lambda G: G.name)
def test_upper_central_terms_are_central_mod_previous(G):
    terms = upper_central_series(G).terms
    for lower, upper in zip(terms, terms[1:]):
        for t in upper.gens:
            for i in range(G.n):
                assert G.comm(t, G.gen(i)) in lower


def test_center_of_finite_heisenberg():
    assert center(H3).gens == ((0, 0, 1),)
    A = abelian([2, 4])
    assert center(A) == whole_group(A)


def test_quotient_examples(H):
    Q, proj = quotient_mod(H, subgroup_from_generators(H, [H.gen(2)]))
    assert Q.n == 2 and Q.commutes(1, 0)
    Q2, _ = quotient_mod(H, trivial_subgroup(H))
    assert Q2.n == 3 and Q2.conj_relation(1, 0) == H.conj_relation(1, 0)
    Q3, _ = quotient_mod(N23, lower_central_series(N23).terms[2])
    N22 = build_free_nilpotent(2, 2)
    assert Q3.orders == N22.orders
    assert all(Q3.conj_relation(j, i) == N22.conj_relation(j, i) for i in range(3) for j in range(i + 1, 3))


@pytest.mark.parametrize("G", [N23, H3], ids=lambda G: G.name)
def test_quotient_kills_relations(G):
    for N in lower_central_series(G).terms[1:]:
        Q, proj = quotient_mod(G, N)
        Q.check_consistency()
        for kind, idx, rhs in G.relations():
            if kind == "conj":
                j, i = idx
                lhs = Q.conjugate(proj(G.gen(j)), proj(G.gen(i)))
            else:
                (i,) = idx
                lhs = Q.power(proj(G.gen(i)), G.orders[i])
            assert lhs == proj(rhs)


def test_quotient_needs_normal_subgroup(H):
    with pytest.raises(NotTailCompatible):
        quotient_mod(H, subgroup_from_generators(H, [H.gen(0)]))


def test_quotient_by_sublattice(H):
    Q, proj = quotient_mod(H, subgroup_from_generators(H, [(0, 0, 3)]))
    assert Q.orders == (0, 0, 3)
    Q.check_consistency()
    assert proj(H.parse_word("c^4")) == (0, 0, 1)


# -- maps ------------------------------------------------------------------------


def test_check_map_examples(H, swap):
    assert swap.is_automorphism
    assert swap.images[2] == (0, 0, -1)
    with pytest.raises(NotBijective):
        aut(H, a="a^2", b="b")
    Z2 = free_abelian(2)
    assert check_map(Z2, [(1, 1), (0, 1)]).is_automorphism


def test_check_map_relation_violation(H):
    with pytest.raises(RelationViolated):
        check_map(H, [(1, 0, 0), (0, 1, 0), (0, 0, 2)])
    endo = check_map(H, [(2, 0, 0), (0, 1, 0), (0, 0, 2)], "endo")
    assert endo.kind == "endo"


def test_check_map_finite_groups():
    G = abelian([4])
    assert check_map(G, [(3,)]).is_automorphism
    with pytest.raises(NotBijective):
        check_map(G, [(2,)])


@given(data=st.data())
def test_maps_are_homomorphisms(data):
    G = N32
    phi = aut(G, a1="a2 c1", a2="a1 a3^-1", a3="a3 a2")
    x, y = data.draw(elements(G)), data.draw(elements(G))
    assert phi(G.mul(x, y)) == G.mul(phi(x), phi(y))


def test_induced_map_examples(H, swap):
    Q, proj = quotient_mod(H, lower_central_series(H).terms[1])
    bar = induced_map(swap, proj)
    assert bar.images == ((0, 1), (1, 1))
    ident = induced_map(identity_map(H), proj)
    assert ident.images == ((1, 0), (0, 1))
    assert swap(H.gen(2)) == H.parse_word("c^-1")


def test_induced_map_requires_invariant_kernel(H, swap):
    K = subgroup_from_generators(H, [H.gen(1), H.gen(2)])
    _, proj = quotient_mod(H, K)
    with pytest.raises(KernelNotPreserved):
        induced_map(swap, proj)


def test_complete_images_uses_definitions():
    images = complete_images(N32, {0: N32.gen(1), 1: N32.gen(0), 2: N32.gen(2)})
    phi = check_map(N32, images)
    for k, d in N32.definitions.items():
        _, j, i, s = d
        assert phi(N32.gen(k)) == N32.power(N32.comm(phi(N32.gen(j)), phi(N32.gen(i))), s)


def test_automorphism_from_words_fills_in_derived_images():
    G = heisenberg()
    phi = automorphism(G, a="b", b="a b")
    assert phi(G.parse_word("c")) == G.parse_word("c^-1")
    with pytest.raises(MapError):
        automorphism(G, a="a", z="b")
