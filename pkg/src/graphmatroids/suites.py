"""Named verification suites with machine-readable reports.

Every suite also runs in a mutant mode that deliberately breaks its predicate
or its generator; a mutant run must report at least one violation.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import networkx as nx

from . import __version__
from . import cofactor, count
from .connectivity import edge_connectivity, vertex_connectivity
from .count import CountParams
from .generators import (
    cofactor_packing,
    complete,
    cycle,
    disjoint_union,
    lovasz_yemini,
    multigraph_classes,
    path,
    simple_graphs,
    wheel,
)
from .graph import MultiGraph, graph_document, isomorphic
from .matroid import (
    RankOracle,
    components,
    separator_components,
    union_partition,
    union_rank,
    vertical_connectivity,
)
from .reconstruct import LabeledMatroid, ReconstructionError, reconstruct

SCHEMA_VERSION = 1

COUNT_PAIRS = [(1, 1), (1, 0), (2, 3), (2, 2), (2, 1), (2, 0), (2, -1), (3, 4), (3, 5)]


@dataclass
class SuiteConfig:
    seed: int = 0
    samples: int | None = None
    max_n: int | None = None
    mutant: bool = False


@dataclass
class SuiteReport:
    suite: str
    seed: int
    mutant: bool
    cases: int = 0
    violations: list[dict] = field(default_factory=list)
    wall_time: float = 0.0  # kept out of the JSON so reports stay byte-reproducible

    @property
    def ok(self) -> bool:
        return not self.violations

    def violation(self, case: str, expected, actual, graph: MultiGraph | None = None, **params) -> None:
        item = {"case": case, "expected": expected, "actual": actual, "params": params}
        if graph is not None:
            item["graph"] = graph_document(graph)
        self.violations.append(item)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "tool_version": __version__,
            "suite": self.suite,
            "seed": self.seed,
            "mutant": self.mutant,
            "cases": self.cases,
            "violations": self.violations,
        }


# samplers (rejection sampling over G(n, p); not uniform over the target class)


def _gnp(rng: random.Random, n: int, p: float) -> MultiGraph:
    h = nx.gnp_random_graph(n, p, seed=rng.randrange(2**32))
    return MultiGraph(range(n), [(i, u, v) for i, (u, v) in enumerate(sorted(h.edges))])


def _sample(rng: random.Random, n_range: tuple[int, int], p_range: tuple[float, float], accept: Callable[[MultiGraph], bool], tries: int = 5000) -> MultiGraph:
    for _ in range(tries):
        n = rng.randint(*n_range)
        g = _gnp(rng, n, rng.uniform(*p_range))
        if g.n >= 2 and accept(g):
            return g
    raise RuntimeError("sampler gave up; the acceptance region is too thin")


def _regular(rng: random.Random, n: int, d: int, accept: Callable[[MultiGraph], bool]) -> MultiGraph:
    for _ in range(2000):
        h = nx.random_regular_graph(d, n, seed=rng.randrange(2**32))
        g = MultiGraph(range(n), [(i, u, v) for i, (u, v) in enumerate(sorted(tuple(sorted(e)) for e in h.edges))])
        if accept(g):
            return g
    raise RuntimeError(f"no suitable {d}-regular graph on {n} vertices found")


def _random_multigraph(rng: random.Random, n: int, m: int) -> MultiGraph:
    return MultiGraph(range(n), [(i, *rng.sample(range(n), 2)) for i in range(m)])


# suites


def suite_oracle_equivalence(cfg: SuiteConfig) -> SuiteReport:
    """Fast rank vs definitional greedy on every multigraph class with <= max_n vertices."""
    rep = SuiteReport("oracle-equivalence", cfg.seed, cfg.mutant)
    max_n = cfg.max_n or 5
    for k, l in COUNT_PAIRS:
        p = CountParams(k, l)
        fast_p = CountParams(k, l - 1) if cfg.mutant else p
        cap = max(1, 2 * k - l)
        for n in range(2, max_n + 1):
            mult = multigraph_classes(n, cap)
            fast = count.pebble_rank_batch(n, mult, fast_p)
            slow = count.definitional_rank_batch(n, mult, p)
            rep.cases += len(mult)
            for row in (fast != slow).nonzero()[0][:5]:
                pairs = [pr for pr, c in zip(combinations(range(n), 2), mult[row]) for _ in range(int(c))]
                g = MultiGraph(range(n), [(i, u, v) for i, (u, v) in enumerate(pairs)])
                rep.violation("rank mismatch", int(slow[row]), int(fast[row]), g, k=k, l=l)
    return rep


def suite_complete_redundancy(cfg: SuiteConfig) -> SuiteReport:
    """K_{2l+1} is (k, l)-redundant."""
    rep = SuiteReport("complete-redundancy", cfg.seed, cfg.mutant)
    for k, l in [(2, 3), (3, 4), (3, 5)]:
        n = l if cfg.mutant else 2 * l + 1
        g = complete(n)
        rep.cases += 1
        if not count.is_redundant(g, CountParams(k, l)):
            rep.violation(f"K_{n} not redundant", True, False, g, k=k, l=l)
    return rep


def suite_ly_construction(cfg: SuiteConfig) -> SuiteReport:
    """The ring-of-cliques graph is (2l-1)-connected but not (k, l)-rigid."""
    rep = SuiteReport("ly-construction", cfg.seed, cfg.mutant)
    for k, l in [(2, 3), (3, 4), (3, 5)]:
        g = lovasz_yemini(k, l)
        p = CountParams(k, l)
        rep.cases += 1
        claimed = 2 * l if cfg.mutant else 2 * l - 1
        kappa = vertex_connectivity(g)
        if kappa != claimed:
            rep.violation("vertex connectivity", claimed, kappa, None, k=k, l=l)
        bound = k * g.n - l - 1
        r = count.rank(g, p)
        if r > bound:
            rep.violation("rank bound", f"<= {bound}", r, None, k=k, l=l)
        cert = count.rank_certificate(g, p)
        problems = cert.check(g, g.edge_ids)
        if cert.value != r or problems:
            rep.violation("certificate", r, cert.value, None, k=k, l=l, problems=problems)
        if (k, l) == (2, 3) and (g.n, g.m) != (40, 100):
            rep.violation("size", [40, 100], [g.n, g.m], None, k=k, l=l)
    return rep


def _graphic(g: MultiGraph) -> RankOracle:
    return count.count_oracle(g, CountParams(1, 1))


def _spanning_trees_ok(g: MultiGraph, parts: list[list]) -> bool:
    for part in parts:
        sub = g.edge_subgraph(part).simple_networkx()
        if len(part) != g.n - 1 or not nx.is_connected(sub):
            return False
    return True


def suite_tree_packing(cfg: SuiteConfig) -> SuiteReport:
    """2k-edge-connected graphs keep k disjoint spanning trees after deleting <= k edges."""
    rep = SuiteReport("tree-packing", cfg.seed, cfg.mutant)
    rng = random.Random(cfg.seed)
    k = 2
    max_n = cfg.max_n or 12
    for _ in range(cfg.samples or 50):
        if cfg.mutant:
            n = rng.choice([x for x in range(6, max_n + 1, 2)])
            g = _regular(rng, n, 2 * k - 1, lambda h: edge_connectivity(h) == 2 * k - 1)
        else:
            g = _sample(rng, (6, max_n), (0.5, 0.9), lambda h: edge_connectivity(h) >= 2 * k)
        rep.cases += 1
        target = k * (g.n - 1)
        parts = union_partition([_graphic(g)] * k, g.edge_ids)
        if not _spanning_trees_ok(g, parts):
            rep.violation("no k disjoint spanning trees", target, sum(map(len, parts)), g, k=k)
            continue
        ids = list(g.edges)
        for size in range(1, k + 1):
            bad = next(
                (d for d in combinations(ids, size) if count.rank(g, CountParams(k, k), set(ids) - set(d)) < target),
                None,
            )
            if bad is not None:
                rep.violation("packing destroyed by deletion", target, "fewer", g, k=k, deleted=[str(e) for e in bad])
                break
    return rep


def suite_kriesell_f1(cfg: SuiteConfig) -> SuiteReport:
    """4-connected graphs have a spanning tree whose complement is connected."""
    rep = SuiteReport("kriesell-f1", cfg.seed, cfg.mutant)
    rng = random.Random(cfg.seed)
    max_n = cfg.max_n or 12
    for _ in range(cfg.samples or 50):
        if cfg.mutant:
            n = rng.choice([x for x in range(6, max_n + 1, 2)])
            g = _regular(rng, n, 3, lambda h: vertex_connectivity(h) == 3)
        else:
            g = _sample(rng, (6, max_n), (0.55, 0.95), lambda h: vertex_connectivity(h) >= 4)
        rep.cases += 1
        parts = union_partition([_graphic(g)] * 2, g.edge_ids)
        tree = parts[0]
        rest = g.remove_edges(tree).simple_networkx()
        if len(tree) != g.n - 1 or not nx.is_connected(g.edge_subgraph(tree).simple_networkx()) or not nx.is_connected(rest):
            rep.violation("no tree with connected complement", True, False, g)
    return rep


def _degree_case(rng: random.Random, k: int, l: int, redundant: bool, mutant: bool, max_n: int) -> tuple[MultiGraph, int]:
    def need(n: int) -> int:
        slack = (2 * l - 2) if redundant else 2 * l
        return math.ceil(2 * k - slack / n)

    if mutant:
        for _ in range(1000):
            n = rng.randint(4, max_n)
            d = need(n) - 1
            if 0 < d < n and n * d % 2 == 0:
                # nd/2 < kn - l edges, so the graph cannot be rigid, connected or not
                return _regular(rng, n, d, lambda h: True), need(n)
        raise RuntimeError("no regular mutant graph available")
    g = _sample(rng, (4, max_n), (0.4, 1.0), lambda h: h.min_degree() >= need(h.n))
    return g, need(g.n)


def _suite_degree(name: str, redundant: bool, cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport(name, cfg.seed, cfg.mutant)
    rng = random.Random(cfg.seed)
    max_n = cfg.max_n or 10
    pairs = [(1, 0), (1, -1), (2, 0), (2, -1), (2, -2), (3, 0)]
    for i in range(cfg.samples or 100):
        k, l = pairs[i % len(pairs)]
        g, need = _degree_case(rng, k, l, redundant, cfg.mutant, max_n)
        p = CountParams(k, l)
        rep.cases += 1
        ok = count.is_redundant(g, p) if redundant else count.is_rigid(g, p)
        if not ok:
            rep.violation("degree bound violated", True, False, g, k=k, l=l, min_degree_needed=need)
    return rep


def suite_degree_rigidity(cfg: SuiteConfig) -> SuiteReport:
    """l <= 0 and minimum degree >= 2k - 2l/|V| imply (k, l)-rigid."""
    return _suite_degree("degree-rigidity", False, cfg)


def suite_degree_redundancy(cfg: SuiteConfig) -> SuiteReport:
    """l <= 0 and minimum degree >= 2k - (2l-2)/|V| imply (k, l)-redundant."""
    return _suite_degree("degree-redundancy", True, cfg)


def suite_edge_connectivity_redundancy(cfg: SuiteConfig) -> SuiteReport:
    """0 < l <= k and 2k-edge-connected imply (k, l)-redundant."""
    rep = SuiteReport("edge-connectivity-redundancy", cfg.seed, cfg.mutant)
    rng = random.Random(cfg.seed)
    max_n = cfg.max_n or 10
    pairs = [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]
    for i in range(cfg.samples or 100):
        k, l = pairs[i % len(pairs)]
        lam = 2 * k
        if cfg.mutant:
            # (2k-1)-regular graphs have too few edges once n > 2l - 2
            sizes = [x for x in range(max(2 * l, 2 * k), max_n + 1) if x * (2 * k - 1) % 2 == 0]
            n = 2 if k == 1 else rng.choice(sizes)  # a connected 1-regular graph is a single edge
            g = _regular(rng, n, 2 * k - 1, lambda h: edge_connectivity(h) == 2 * k - 1)
        else:
            g = _sample(rng, (max(3, lam + 1), max_n), (0.5, 1.0), lambda h: edge_connectivity(h) >= lam)
        rep.cases += 1
        if not count.is_redundant(g, CountParams(k, l)):
            rep.violation("not redundant", True, False, g, k=k, l=l)
    return rep


def suite_vertex_connectivity_redundancy(cfg: SuiteConfig) -> SuiteReport:
    """2 <= k < l <= 2k-1 and 2l-connected imply (k, l)-redundant (dense samples on <= 10 vertices)."""
    rep = SuiteReport("vertex-connectivity-redundancy", cfg.seed, cfg.mutant)
    rng = random.Random(cfg.seed)
    max_n = cfg.max_n or 10
    # (3, 5) needs 10-connected graphs, hence at least 11 vertices
    pairs = [(2, 3), (3, 4)] if max_n >= 9 else [(2, 3)]
    cases = []
    if cfg.mutant:
        cases.append(((2, 3), lovasz_yemini(2, 3)))
    while len(cases) < (cfg.samples or 100):
        k, l = pairs[len(cases) % len(pairs)]
        need = 2 * l - 1 if cfg.mutant else 2 * l
        p_low = 0.75 if need <= 6 else 0.9
        cases.append(((k, l), _sample(rng, (need + 1, max_n), (p_low, 1.0), lambda h: vertex_connectivity(h) >= need)))
    for (k, l), g in cases:
        rep.cases += 1
        if not count.is_redundant(g, CountParams(k, l)):
            rep.violation("not redundant", True, False, g, k=k, l=l, connectivity=vertex_connectivity(g))
    return rep


def suite_union_identity(cfg: SuiteConfig) -> SuiteReport:
    """Rank in M_{kt,lt} equals the rank of the t-fold union of M_{k,l}."""
    rep = SuiteReport("union-identity", cfg.seed, cfg.mutant)
    rng = random.Random(cfg.seed)
    max_n = cfg.max_n or 8
    for k, l, t in [(2, 3, 2), (1, 1, 3)]:
        big = CountParams(k * t, l * t - (1 if cfg.mutant else 0))
        for i in range(cfg.samples or 100):
            if i == 0:
                g = complete(max_n)
            else:
                n = rng.randint(2, max_n)
                g = _random_multigraph(rng, n, rng.randint(1, 3 * n))
            rep.cases += 1
            o = count.count_oracle(g, CountParams(k, l))
            engine = "both" if g.m <= 12 else "augment"
            left = count.rank(g, big)
            right = union_rank([o] * t, g.edge_ids, engine=engine)
            if left != right:
                rep.violation("union identity", right, left, g, k=k, l=l, t=t)
    return rep


def suite_cofactor(cfg: SuiteConfig) -> SuiteReport:
    """Exhaustive r1(K_n) = 3n - 6 and the packing witness for (12, 2)."""
    rep = SuiteReport("cofactor", cfg.seed, cfg.mutant)
    for n in (6, 7, 8):
        rep.cases += 1
        expected = 3 * n - 5 if cfg.mutant else 3 * n - 6
        got, cert = cofactor.r1(complete(n))
        if got != expected or cofactor.evaluate_certificate(complete(n), complete(n).edge_ids, cert):
            rep.violation(f"r1(K_{n})", expected, got)
    for n, t in [(12, 2)]:
        kn, parts = cofactor_packing(n, t)
        single = 3 * n - (5 if cfg.mutant else 6)
        seen: set = set()
        for i, h in enumerate(parts):
            rep.cases += 1
            r = cofactor.certified_rank(h, None, 1)
            kappa = vertex_connectivity(h)
            if r != single or kappa < 3 or seen & set(h.edges):
                rep.violation(f"packing part {i}", {"rank": single, "connectivity": ">= 3"}, {"rank": r, "connectivity": kappa}, None, n=n, t=t)
            seen |= set(h.edges)
    return rep


def _roundtrips(cfg: SuiteConfig):
    three = [g for g in simple_graphs(7, 4) if vertex_connectivity(g) >= 3]
    for g in three:
        yield "count(1,1)", g, lambda h: LabeledMatroid.count_matroid(h, 1, 1)
    for g in (complete(8), complete(9)):
        yield "count(2,3)", g, lambda h: LabeledMatroid.count_matroid(h, 2, 3)
    wheels = [wheel(n) for n in (5, 6, 7)]
    for g in [h for h in three if h.n >= 5] + wheels:
        yield "bicircular", g, lambda h: LabeledMatroid.count_matroid(h, 1, 0)
    for g in (complete(6), complete(7)):
        yield "cofactor(1)", g, lambda h: LabeledMatroid.cofactor_matroid(h, 1)


def _negative_controls():
    yield "bicircular cycle", cycle(6), lambda h: LabeledMatroid.count_matroid(h, 1, 0)
    yield "bicircular path", path(7), lambda h: LabeledMatroid.count_matroid(h, 1, 0)
    yield "graphic two cycles", disjoint_union(cycle(4), cycle(4)), lambda h: LabeledMatroid.count_matroid(h, 1, 1)
    yield "graphic C_4", cycle(4), lambda h: LabeledMatroid.count_matroid(h, 1, 1)
    yield "cofactor two K_6", disjoint_union(complete(6), complete(6)), lambda h: LabeledMatroid.cofactor_matroid(h, 1)


def suite_reconstruction(cfg: SuiteConfig) -> SuiteReport:
    """Roundtrips through matroid oracles, plus controls that must refuse."""
    rep = SuiteReport("reconstruction", cfg.seed, cfg.mutant)
    cases = list(_roundtrips(cfg))
    if cfg.mutant:
        cases = cases[:3]
    for label, g, make in cases:
        rep.cases += 1
        m = make(g)
        # the mutant searches for stars with the wrong rank drop
        drop = m.drop + 1 if cfg.mutant else None
        try:
            h = reconstruct(m, seed=cfg.seed, drop=drop)
        except ReconstructionError as exc:
            rep.violation(f"{label} roundtrip failed", "isomorphic", str(exc), g)
            continue
        if isomorphic(g, h) is None:
            rep.violation(f"{label} roundtrip", "isomorphic", "not isomorphic", g)
    if not cfg.mutant:
        for label, g, make in _negative_controls():
            rep.cases += 1
            try:
                h = reconstruct(make(g), seed=cfg.seed)
            except ReconstructionError:
                continue
            rep.violation(f"negative control {label}", "refusal", "accepted", g)
    return rep


def suite_components(cfg: SuiteConfig) -> SuiteReport:
    """Link-graph components = separator components; vertical separations re-verified."""
    rep = SuiteReport("components", cfg.seed, cfg.mutant)
    max_n = cfg.max_n or 5
    graphs = [g for g in simple_graphs(max_n, 2) if g.m]
    for k, l in COUNT_PAIRS:
        p = CountParams(k, l)
        for g in graphs:
            o = count.count_oracle(g, p)
            rep.cases += 1
            fast = components(o) if not cfg.mutant else [frozenset([e]) for e in o.ground]
            slow = separator_components(o)
            if sorted(map(sorted, fast)) != sorted(map(sorted, slow)):
                rep.violation("components differ", [sorted(map(str, c)) for c in slow], [sorted(map(str, c)) for c in fast], g, k=k, l=l)
                continue
            if sum(o.rank(c) for c in fast) != o.full_rank():
                rep.violation("component ranks do not add up", o.full_rank(), sum(o.rank(c) for c in fast), g, k=k, l=l)
            vc, sep = vertical_connectivity(o)
            if sep is not None and not sep.verify(o):
                rep.violation("separation witness invalid", "valid", sep.to_json(), g, k=k, l=l)
            if sep is None and vc != o.full_rank():
                rep.violation("no separation but vc != r(E)", o.full_rank(), vc, g, k=k, l=l)
            if o.full_rank() >= 2 and len(o.ground) >= 2:
                connected = len(fast) == 1
                if connected != (vc >= 2):
                    rep.violation("vertical 2-connectivity vs components", connected, vc, g, k=k, l=l)
    return rep


SUITES: dict[str, Callable[[SuiteConfig], SuiteReport]] = {
    "oracle-equivalence": suite_oracle_equivalence,
    "complete-redundancy": suite_complete_redundancy,
    "ly-construction": suite_ly_construction,
    "tree-packing": suite_tree_packing,
    "kriesell-f1": suite_kriesell_f1,
    "degree-rigidity": suite_degree_rigidity,
    "degree-redundancy": suite_degree_redundancy,
    "edge-connectivity-redundancy": suite_edge_connectivity_redundancy,
    "vertex-connectivity-redundancy": suite_vertex_connectivity_redundancy,
    "union-identity": suite_union_identity,
    "cofactor": suite_cofactor,
    "reconstruction": suite_reconstruction,
    "components": suite_components,
}


def run_suite(name: str, cfg: SuiteConfig) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    start = time.perf_counter()
    rep = SUITES[name](cfg)
    rep.wall_time = time.perf_counter() - start
    return rep
