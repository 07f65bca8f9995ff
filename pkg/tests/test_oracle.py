import itertools

import pytest

from conftest import aut
from twistconj.errors import TooLarge
from twistconj.oracle import FiniteGroupTable, bounded_witness_search, brute_force_reidemeister
from twistconj.pc import PcPresentation, abelian, check_map, heisenberg, identity_map
from twistconj.twisted import decide


def classes_by_hand(G, phi):
    """Orbits of g -> phi(x)^-1 g x computed with the full action instead of generators."""
    elems = list(itertools.product(*(range(m) for m in G.orders)))
    seen, count = set(), 0
    for g in elems:
        if g in seen:
            continue
        count += 1
        seen |= {G.mul(G.inv(phi(x)), G.mul(g, x)) for x in elems}
    return count


def test_oracle_examples():
    Z2 = abelian([2])
    assert brute_force_reidemeister(Z2, identity_map(Z2)).count == 2
    Z3 = abelian([3])
    assert brute_force_reidemeister(Z3, check_map(Z3, [(2,)])).count == 1
    H3 = heisenberg(3)
    assert brute_force_reidemeister(H3, identity_map(H3)).count == 11


@pytest.mark.parametrize("G", [heisenberg(2), abelian([2, 4]), abelian([9])], ids=lambda G: G.name)
def test_oracle_matches_full_action(G):
    phi = check_map(G, [G.power(G.gen(i), 1) for i in range(G.n)])
    res = brute_force_reidemeister(G, phi)
    assert res.count == classes_by_hand(G, phi)
    assert sum(len(c) for c in res.classes) == len(res.table) == G.order


def test_oracle_table():
    G = heisenberg(5)
    t = FiniteGroupTable(G)
    assert len(t) == 125 and len(t.index) == 125
    for x in t.elements[:10]:
        for y in t.elements[::13]:
            assert G.mul(x, y) in t.index


def test_oracle_bounds():
    with pytest.raises(TooLarge):
        brute_force_reidemeister(heisenberg(5), identity_map(heisenberg(5)), bound=100)
    with pytest.raises(TooLarge):
        FiniteGroupTable(heisenberg())


def test_oracle_accepts_non_nilpotent_groups():
    # S3 as a pc group: a of order 2, b of order 3 with a^-1 b a = b^2
    S3 = PcPresentation(["a", "b"], [2, 3], {(1, 0): [(1, 2)]}, nilpotent=False)
    assert brute_force_reidemeister(S3, identity_map(S3)).count == 3
    # twisting by the inner automorphism of b does not change the count
    assert brute_force_reidemeister(S3, identity_map(S3).twisted_by(S3.gen(1))).count == 3
    # D4 of order 8 (a^2 = 1, b^4 = 1, b^a = b^-1), five conjugacy classes
    D4 = PcPresentation(["a", "b", "c"], [2, 2, 2], {(1, 0): [(1, 1), (2, 1)]}, {1: [(2, 1)]},
                        nilpotent=False)
    assert brute_force_reidemeister(D4, identity_map(D4)).count == 5


def test_bounded_search_examples(H, swap):
    x = bounded_witness_search(H, swap, H.identity, H.parse_word("c^2"), 2)
    assert x is not None and swap(x) == H.mul(H.parse_word("c^2"), x)
    assert decide(H, swap, H.identity, H.parse_word("c^2")) is not None
    assert bounded_witness_search(H, swap, (3, -1, 2), (3, -1, 2), 0) == H.identity
    assert bounded_witness_search(H, swap, H.identity, H.gen(2), 4) is None
