from __future__ import annotations

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from graphmatroids import cofactor, count
from graphmatroids.connectivity import brute_force_vertex_connectivity, smooth_orientation, vertex_connectivity
from graphmatroids.count import CountParams
from graphmatroids.generators import complete
from graphmatroids.graph import MultiGraph, read_graph, write_graph
from graphmatroids.matroid import components, separator_components, union_rank

PAIRS = [(1, 1), (1, 0), (2, 3), (2, 2), (2, 1), (2, 0), (2, -1), (3, 4), (3, 5), (1, -2)]
SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def multigraphs(draw, max_n=6, max_m=12, simple=False):
    n = draw(st.integers(2, max_n))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    pairs = draw(st.lists(pair, min_size=1, max_size=max_m))
    if simple:
        pairs = list(dict.fromkeys(tuple(sorted(p)) for p in pairs))
    return MultiGraph(range(n), [(i, u, v) for i, (u, v) in enumerate(pairs)])


@st.composite
def graph_and_subsets(draw, **kw):
    g = draw(multigraphs(**kw))
    ids = list(g.edge_ids)
    a = draw(st.sets(st.sampled_from(ids)))
    b = draw(st.sets(st.sampled_from(ids)))
    return g, a, b


@SETTINGS
@given(graph_and_subsets(), st.sampled_from(PAIRS))
def test_count_rank_axioms(data, kl):
    g, a, b = data
    p = CountParams(*kl)
    r = lambda s: count.rank(g, p, s)
    assert 0 <= r(a) <= len(a)
    assert r(a) <= r(a | b)
    assert r(a | b) + r(a & b) <= r(a) + r(b)


@SETTINGS
@given(multigraphs(max_m=10), st.sampled_from(PAIRS))
def test_pebble_rank_matches_definition(g, kl):
    p = CountParams(*kl)
    assert count.rank(g, p) == count.brute_force_rank(g, p)


@SETTINGS
@given(graph_and_subsets(max_n=7, max_m=16), st.sampled_from(PAIRS))
def test_certificates_are_valid_and_tight(data, kl):
    g, a, _ = data
    if not a:
        return
    p = CountParams(*kl)
    cert = count.rank_certificate(g, p, a)
    assert cert.check(g, a) == []
    assert cert.value == count.rank(g, p, a)


@SETTINGS
@given(multigraphs(max_n=8, max_m=20))
def test_smooth_orientation(g):
    o = smooth_orientation(g)
    assert all(abs(o.indegree(v) - o.outdegree(v)) <= 1 for v in g.vertices)
    assert sum(o.indegree(v) for v in g.vertices) == g.m


@SETTINGS
@given(multigraphs(max_n=6, max_m=15))
def test_vertex_connectivity_matches_brute_force(g):
    assert vertex_connectivity(g) == brute_force_vertex_connectivity(g)


@SETTINGS
@given(multigraphs(max_n=5, max_m=9), st.sampled_from(PAIRS))
def test_link_graph_components_match_separators(g, kl):
    o = count.count_oracle(g, CountParams(*kl))
    assert sorted(map(sorted, components(o))) == sorted(map(sorted, separator_components(o)))


@SETTINGS
@given(multigraphs(max_n=5, max_m=10), st.sampled_from([(1, 1, 2), (1, 1, 3), (2, 3, 2), (1, 0, 2)]))
def test_union_identity(g, klt):
    k, l, t = klt
    o = count.count_oracle(g, CountParams(k, l))
    assert count.rank(g, CountParams(k * t, l * t)) == union_rank([o] * t, g.edge_ids, engine="both")


@SETTINGS
@given(graph_and_subsets(max_n=7, max_m=21, simple=True), st.integers(1, 3))
def test_cofactor_rank_bounds_and_axioms(data, t):
    g, a, b = data
    rt = lambda s: cofactor.rt(g, s, t)[0]
    r1 = lambda s: cofactor.r1(g, s)[0]
    assert rt(a) <= min(len(a), t * r1(a))
    assert rt(a) <= rt(a | b)
    assert rt(a | b) + rt(a & b) <= rt(a) + rt(b)
    verts = g.vertices_of(a)
    if len(verts) >= 5:
        assert rt(a) <= 3 * t * len(verts) - 6 * t


@SETTINGS
@given(multigraphs(max_n=7, max_m=21, simple=True))
def test_cofactor_certificates_and_bridges(g):
    value, cert = cofactor.r1(g)
    assert cofactor.evaluate_certificate(g, g.edge_ids, cert) == []
    cofactor.check_bridges(g, g.edge_ids, cert)


@SETTINGS
@given(multigraphs(max_n=8, max_m=28, simple=True), st.data())
def test_peel_bound_never_exceeds_rank(g, data):
    order = data.draw(st.permutations(list(g.vertices)))
    k = data.draw(st.integers(0, len(order)))
    assert cofactor.peel_lower_bound(g, None, 1, order[:k]) <= cofactor.r1(g)[0]


@SETTINGS
@given(st.permutations(list(range(21))), st.integers(0, 21), st.integers(0, 21))
def test_cofactor_rank_is_monotone_on_nested_k7_sets(perm, i, j):
    g = complete(7)
    ids = [g.edge_ids[x] for x in perm]
    i, j = sorted((i, j))
    assert cofactor.r1(g, ids[:i])[0] <= cofactor.r1(g, ids[:j])[0]


@SETTINGS
@given(multigraphs(max_n=6, max_m=10))
def test_json_roundtrip(g):
    data = write_graph(g)
    assert write_graph(read_graph(data)) == data


@settings(max_examples=1000, deadline=None)
@given(multigraphs(max_n=8, max_m=20))
def test_smooth_orientation_many(g):
    o = smooth_orientation(g)
    assert all(abs(o.indegree(v) - o.outdegree(v)) <= 1 for v in g.vertices)


@settings(max_examples=500, deadline=None)
@given(graph_and_subsets(max_n=6, max_m=14), st.sampled_from(PAIRS))
def test_count_rank_axioms_many(data, kl):
    g, a, b = data
    p = CountParams(*kl)
    r = lambda s: count.rank(g, p, s)
    assert r(set()) == 0
    assert r(a & b) <= r(a) <= r(a | b)
    assert r(a | b) + r(a & b) <= r(a) + r(b)


@st.composite
def growth_sequences(draw):
    k, l = draw(st.sampled_from([(1, 1), (2, 3), (2, 2), (3, 4), (3, 5), (2, 1)]))
    cap = 2 * k - l
    # seed: one tight parallel class on two vertices
    edges = [(0, 1)] * cap
    n = 2
    for _ in range(draw(st.integers(1, 4))):
        targets = draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k))
        if any(targets.count(x) > cap for x in targets):
            targets = [x % n for x in range(k)]
            if any(targets.count(x) > cap for x in targets):
                continue
        edges += [(n, x) for x in targets]
        n += 1
    g = MultiGraph(range(n), [(i, u, v) for i, (u, v) in enumerate(edges)])
    return g, CountParams(k, l)


@SETTINGS
@given(growth_sequences())
def test_adding_a_vertex_with_k_edges_preserves_tightness(data):
    g, p = data
    assert count.is_tight(g, p)


@SETTINGS
@given(multigraphs(max_n=6, max_m=14), st.sampled_from(PAIRS))
def test_circuits_span_two_or_enough_vertices(g, kl):
    from graphmatroids.matroid import fundamental_circuit

    k, l = kl
    o = count.count_oracle(g, CountParams(k, l))
    basis = o.greedy_basis()
    for e in set(o.ground) - set(basis):
        circuit = fundamental_circuit(o, basis, e)
        nv = len(g.vertices_of(circuit))
        assert nv == 2 or nv > k / (2 * k - l)


@SETTINGS
@given(multigraphs(max_n=6, max_m=12), st.sampled_from([(1, 1), (2, 3)]), st.integers(2, 3))
def test_union_engines_agree(g, kl, t):
    o = count.count_oracle(g, CountParams(*kl))
    union_rank([o] * t, g.edge_ids, engine="both")


@SETTINGS
@given(multigraphs(max_n=6, max_m=14), st.sampled_from(PAIRS))
def test_component_ranks_add_up(g, kl):
    o = count.count_oracle(g, CountParams(*kl))
    assert sum(o.rank(c) for c in components(o)) == o.full_rank()
