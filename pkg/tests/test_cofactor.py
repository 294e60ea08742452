from __future__ import annotations

from itertools import combinations, permutations

import pytest

from graphmatroids import cofactor
from graphmatroids.cofactor import PreconditionError
from graphmatroids.connectivity import vertex_connectivity
from graphmatroids.generators import complete, cofactor_packing, cycle, disjoint_union, parallel_pair, simple_graphs, wheel
from graphmatroids.matroid import ConsistencyError, OracleRefusal


def stars_of_k6() -> list[frozenset]:
    """Points are the 15 edges of K_6, one block per vertex star."""
    pts = list(combinations(range(6), 2))
    return [frozenset(i for i, p in enumerate(pts) if v in p) for v in range(6)]


def brute_force_shellable(cover) -> bool:
    sets = [frozenset(x) for x in cover]
    for order in permutations(range(len(sets))):
        seen: frozenset = frozenset()
        ok = True
        for pos, i in enumerate(order):
            if pos and len(sets[i] & seen) > 4:
                ok = False
                break
            seen |= sets[i]
        if ok:
            return True
    return False


def test_hinges_examples():
    assert cofactor.hinges([range(1, 6), range(4, 9)]) == [(frozenset({4, 5}), 2)]
    assert cofactor.hinges([range(5), range(5, 10)]) == []
    three = [{4, 5, 1, 2, 3}, {4, 5, 6, 7, 8}, {4, 5, 9, 10, 11}]
    assert cofactor.hinges(three) == [(frozenset({4, 5}), 3)]


def test_hinges_require_two_thin_cover():
    with pytest.raises(ValueError):
        cofactor.hinges([range(5), range(2, 7)])


def test_shelling_examples():
    assert cofactor.shelling_order([range(5)]) == [0]
    assert cofactor.shelling_order([range(5), range(3, 8)]) is not None


def test_shelling_none_agrees_with_brute_force():
    # in every order the last star is already covered by the others
    stars = stars_of_k6()
    assert all(len(a & b) == 1 for a, b in combinations(stars, 2))
    assert not brute_force_shellable(stars)
    assert cofactor.shelling_order(stars) is None
    assert not cofactor.is_admissible(stars)
    # dropping one star makes it shellable again
    assert brute_force_shellable(stars[:5])
    assert cofactor.shelling_order(stars[:5]) is not None


def test_cover_cost_counts_hinges():
    three = [{4, 5, 1, 2, 3}, {4, 5, 6, 7, 8}, {4, 5, 9, 10, 11}]
    assert cofactor.cover_cost(three) == 3 * 9 - 2


def test_admissible_family_counts():
    # frozen from the unpruned enumeration
    counts = [len(cofactor.admissible_families(m).sets) for m in range(5, 9)]
    assert counts == [2, 8, 30, 374]


def test_r1_of_small_complete_graphs():
    assert cofactor.r1(complete(4))[0] == 6
    assert cofactor.r1(complete(5))[0] == 9
    assert cofactor.r1(complete(6))[0] == 12
    assert cofactor.r1(complete(3))[0] == 3


def test_rt_examples():
    g = wheel(7)
    r1, _ = cofactor.r1(g)
    rt, cert = cofactor.rt(g, None, 1)
    assert r1 == rt
    k6 = complete(6)
    assert cofactor.rt(k6, [], 2)[0] == 0
    rest = set(k6.edge_ids) - k6.star(0)
    assert cofactor.rt(k6, [e for e in k6.edge_ids if e in rest], 1)[0] == 9
    assert cofactor.rt(complete(7), None, 2)[0] <= 3 * 2 * 7 - 12


def test_certificate_is_valid():
    g = complete(7)
    value, cert = cofactor.r1(g)
    assert value == 15
    assert cofactor.evaluate_certificate(g, g.edge_ids, cert) == []
    assert cert.shelling is not None
    doc = cert.to_json()
    assert doc["rank"] == 15


def test_bridges_in_certificate():
    # pendant edges of degree-one vertices lie in F and are bridges
    g = disjoint_union(complete(5), cycle(3))
    value, cert = cofactor.r1(g)
    assert value == 9 + 3
    cofactor.check_bridges(g, g.edge_ids, cert)


def test_check_bridges_flags_a_fake_bridge():
    g = complete(5)
    _, cert = cofactor.r1(g)
    fake = cofactor.CofactorCertificate(1, frozenset(g.edge_ids[:1]), cert.cover, cert.value)
    with pytest.raises(ConsistencyError):
        cofactor.check_bridges(g, g.edge_ids, fake)


def test_multigraphs_are_rejected():
    with pytest.raises(ValueError):
        cofactor.r1(parallel_pair(2))


def test_refusal_above_the_cap():
    with pytest.raises(OracleRefusal):
        cofactor.r1(complete(9))


def test_kn_rank():
    assert cofactor.kn_rank(6, 1) == 12
    assert cofactor.kn_rank(12, 2) == 60
    assert cofactor.kn_rank(7, 1) == 15
    with pytest.raises(PreconditionError):
        cofactor.kn_rank(5, 1)


def test_peel_lower_bounds():
    k5 = complete(5)
    assert cofactor.peel_lower_bound(k5, None, 1, [0]) == 9
    _, parts = cofactor_packing(12, 2)
    g1 = parts[0]
    outside = [v for v in g1.vertices if g1.degree(v) == 3]
    assert len(outside) == 6
    assert cofactor.peel_lower_bound(g1, None, 1, outside) == 30


def test_peel_rejects_repeated_vertices():
    with pytest.raises(ValueError):
        cofactor.peel_lower_bound(complete(5), None, 1, [0, 0])


def test_certified_rank_of_packing_parts():
    _, parts = cofactor_packing(12, 2)
    assert [cofactor.certified_rank(p, None, 1) for p in parts] == [30, 30]
    _, parts3 = cofactor_packing(18, 3)
    assert [cofactor.certified_rank(p, None, 1) for p in parts3] == [48, 48, 48]


def test_extract_three_connected_from_k12():
    parts = cofactor.extract_three_connected(complete(12), 2)
    assert [p.m for p in parts] == [33, 33]
    assert not set(parts[0].edge_ids) & set(parts[1].edge_ids)
    assert all(vertex_connectivity(p) >= 3 for p in parts)


def test_extract_three_connected_small():
    (k6,) = cofactor.extract_three_connected(complete(6), 1)
    assert k6.m == 12 and cofactor.r1(k6)[0] == 12 and vertex_connectivity(k6) >= 3
    (k8,) = cofactor.extract_three_connected(complete(8), 1)
    assert k8.m == 18


def test_extract_refuses_deficient_graphs():
    with pytest.raises(PreconditionError):
        cofactor.extract_three_connected(wheel(7), 1)


def test_essential_partition():
    k6 = complete(6)
    ids = list(k6.edge_ids)
    star = [e for e in ids if e in k6.star(0)]
    rest = [e for e in ids if e not in star]
    assert cofactor.is_essential_partition(k6, star, rest)
    with pytest.raises(ValueError):
        cofactor.is_essential_partition(k6, star, rest[:-1])


def test_kn_rank_matches_exhaustive_search():
    for n in (6, 7, 8):
        assert cofactor.r1(complete(n))[0] == cofactor.kn_rank(n, 1)


@pytest.mark.parametrize("n,t", [(12, 2), (18, 3)])
def test_packing_parts_are_disjoint_rigid_and_three_connected(n, t):
    kn, parts = cofactor_packing(n, t)
    seen: set = set()
    for p in parts:
        assert set(p.edge_ids) <= set(kn.edge_ids)
        assert all(kn.ends(e) == p.ends(e) for e in p.edge_ids)
        assert not seen & set(p.edge_ids)
        seen |= set(p.edge_ids)
        assert cofactor.certified_rank(p, None, 1) == 3 * n - 6
        assert vertex_connectivity(p) >= 3


def test_vertex_peel_inequality_on_all_small_graphs():
    # r1(G) >= r1(G - v) + min(3, deg v) for every vertex of every graph on 5..7 vertices
    for g in simple_graphs(7, 5):
        if not g.m:
            continue
        full = cofactor.r1(g)[0]
        for v in g.vertices:
            rest = [e for e in g.edge_ids if e not in g.star(v)]
            assert full >= cofactor.r1(g, rest)[0] + min(3, g.degree(v))
