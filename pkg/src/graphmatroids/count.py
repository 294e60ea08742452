"""Count matroids M_{k,l}(G): independence, rank, cover certificates and rigidity predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import networkx as nx
import numpy as np

from . import _pebble
from .graph import EdgeId, MultiGraph, sort_key
from .matroid import OracleRefusal, RankOracle, components

BRUTE_FORCE_CAP = 1 << 20


@dataclass(frozen=True)
class CountParams:
    k: int
    l: int

    def __post_init__(self) -> None:
        if self.k < 1 or self.l > 2 * self.k - 1:
            raise ValueError(f"count parameters need k >= 1 and l <= 2k-1, got k={self.k}, l={self.l}")

    def __str__(self) -> str:
        return f"({self.k},{self.l})"


@dataclass(frozen=True)
class CoverCertificate:
    """Edge set F plus a vertex cover of E' - F; ``value`` must equal the rank."""

    params: CountParams
    F: frozenset
    cover: tuple[frozenset, ...]
    value: int = field(default=0)

    @staticmethod
    def evaluate(params: CountParams, F: Iterable, cover: Iterable[Iterable]) -> int:
        return len(frozenset(F)) + sum(params.k * len(frozenset(x)) - params.l for x in cover)

    def check(self, g: MultiGraph, edges: Iterable[EdgeId]) -> list[str]:
        """Problems with this certificate as a witness for ``edges``; empty when valid."""
        problems = []
        e_prime = frozenset(edges)
        if not self.F <= e_prime:
            problems.append("F is not contained in E'")
        for e in e_prime - self.F:
            u, v = g.ends(e)
            if not any(u in x and v in x for x in self.cover):
                problems.append(f"edge {e!r} is not covered")
        if any(len(x) < 2 for x in self.cover):
            problems.append("cover set of size < 2")
        if self.value != self.evaluate(self.params, self.F, self.cover):
            problems.append("stored value does not match F and cover")
        thin = thinness(self.params)
        if thin is None:
            rest = g.vertices_of(e_prime - self.F)
            expected = (frozenset(rest),) if rest else ()
            if tuple(self.cover) != expected:
                problems.append("cover is not {V(E' - F)}")
        else:
            for x, y in combinations(self.cover, 2):
                if len(x & y) > thin:
                    problems.append(f"cover is not {thin}-thin")
                    break
        return problems

    def to_json(self) -> dict:
        return {
            "rank": self.value,
            "F": sorted((str(e) for e in self.F)),
            "cover": [sorted(str(v) for v in x) for x in self.cover],
        }


def thinness(p: CountParams) -> int | None:
    """Required thinness of an optimal cover; None means a single set V(E' - F)."""
    if p.l <= 0:
        return None
    return 0 if p.l <= p.k else 1


def _edge_list(g: MultiGraph, edges: Iterable[EdgeId] | None) -> list:
    if edges is None:
        return list(g.edges)
    keep = set(edges)
    missing = keep - set(g.edges)
    if missing:
        raise KeyError(f"unknown edge ids: {sorted(map(str, missing))}")
    return [e for e in g.edges if e in keep]


def _arrays(g: MultiGraph, ids: list):
    verts = sorted(g.vertices_of(ids), key=sort_key)
    pos = {v: i for i, v in enumerate(verts)}
    us = np.array([pos[g.ends(e)[0]] for e in ids], dtype=np.int64)
    vs = np.array([pos[g.ends(e)[1]] for e in ids], dtype=np.int64)
    return verts, us, vs


def _play(g: MultiGraph, k: int, l: int, ids: list):
    verts, us, vs = _arrays(g, ids)
    acc, peb, out, outdeg = _pebble.run(len(verts), us, vs, k, l)
    return verts, us, vs, acc, peb, out, outdeg


def basis(g: MultiGraph, p: CountParams, edges: Iterable[EdgeId] | None = None) -> list:
    """A maximal independent subset of ``edges`` (pebble game; l < 0 via the (k,0) game)."""
    ids = _edge_list(g, edges)
    if not ids:
        return []
    if p.l >= 0:
        acc = _play(g, p.k, p.l, ids)[3]
        return [e for e, a in zip(ids, acc) if a]
    # B_0 plus any -l further edges stays independent and has the right size
    acc = _play(g, p.k, 0, ids)[3]
    base = [e for e, a in zip(ids, acc) if a]
    extra = [e for e, a in zip(ids, acc) if not a][: -p.l]
    chosen = set(base) | set(extra)
    return [e for e in ids if e in chosen]


def rank(g: MultiGraph, p: CountParams, edges: Iterable[EdgeId] | None = None) -> int:
    ids = _edge_list(g, edges)
    if not ids:
        return 0
    if p.l >= 0:
        return int(_play(g, p.k, p.l, ids)[3].sum())
    r0 = int(_play(g, p.k, 0, ids)[3].sum())
    return min(len(ids), r0 - p.l)


def is_independent(g: MultiGraph, p: CountParams, edges: Iterable[EdgeId]) -> bool:
    ids = _edge_list(g, edges)
    return rank(g, p, ids) == len(ids)


# certificates


def uncross_partition(g: MultiGraph, p: CountParams, parts: Iterable[Iterable[EdgeId]]) -> list[frozenset]:
    """Turn an edge partition into a thin vertex cover of no larger value.

    Vertex sets meeting in at least two vertices are merged (one vertex when
    0 < l <= k; always when l <= 0) until no such pair remains.
    """
    sets = [frozenset(g.vertices_of(y)) for y in parts if y]
    return _merge(sets, p)


def _merge(sets: list[frozenset], p: CountParams) -> list[frozenset]:
    thin = thinness(p)
    if thin is None:
        union = frozenset().union(*sets) if sets else frozenset()
        return [union] if union else []
    sets = list(sets)
    changed = True
    while changed:
        changed = False
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if len(sets[i] & sets[j]) > thin:
                    sets[i] = sets[i] | sets[j]
                    del sets[j]
                    changed = True
                    break
            if changed:
                break
    return sorted(sets, key=lambda x: sorted(x, key=sort_key))


def _tight_sets(g: MultiGraph, p: CountParams, ids: list) -> list[frozenset]:
    """Tight vertex sets spanning every edge that cannot take l + 1 pebbles."""
    verts, us, vs, acc, peb, out, outdeg = _play(g, p.k, p.l, ids)
    n = len(verts)
    parent = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    found: list[frozenset] = []
    for i in range(len(ids)):
        u, v = int(us[i]), int(vs[i])
        if any(u in x and v in x for x in found):
            continue  # a tight set never holds l + 1 pebbles
        if _pebble.gather(u, v, p.l, peb, out, outdeg, parent, stack):
            continue
        mask = _pebble.reach(u, v, out, outdeg)
        found.append(frozenset(int(j) for j in np.flatnonzero(mask)))
    return [frozenset(verts[j] for j in x) for x in found]


def _min_cut_certificate(g: MultiGraph, p: CountParams, ids: list) -> tuple[frozenset, list[frozenset]]:
    """Best single set W for l < 0 by a max-closure cut on the edge/vertex network."""
    net = nx.DiGraph()
    for e in ids:
        net.add_edge("s", ("e", e), capacity=1)
        for x in g.ends(e):
            net.add_edge(("e", e), ("v", x))  # infinite capacity
    for x in g.vertices_of(ids):
        net.add_edge(("v", x), "t", capacity=p.k)
    cut, (src, _) = nx.minimum_cut(net, "s", "t")
    gain = len(ids) - cut  # max over W of |E'[W]| - k|W|
    w = frozenset(node[1] for node in src if isinstance(node, tuple) and node[0] == "v")
    if gain + p.l <= 0 or not w:
        return frozenset(ids), []
    inside = frozenset(e for e in ids if set(g.ends(e)) <= w)
    return frozenset(ids) - inside, [frozenset(g.vertices_of(inside))]


def rank_certificate(g: MultiGraph, p: CountParams, edges: Iterable[EdgeId] | None = None) -> CoverCertificate:
    ids = _edge_list(g, edges)
    if not ids:
        raise ValueError("rank certificate needs a nonempty edge set")
    if p.l < 0:
        F, cover = _min_cut_certificate(g, p, ids)
    else:
        cover = _merge(_tight_sets(g, p, ids), p)
        spanned = {e for e in ids if any(set(g.ends(e)) <= x for x in cover)}
        F = frozenset(ids) - spanned
        if p.l == 0:
            cover = [frozenset(g.vertices_of(spanned))] if spanned else []
    return CoverCertificate(p, frozenset(F), tuple(cover), CoverCertificate.evaluate(p, F, cover))


# predicates


def is_sparse(g: MultiGraph, p: CountParams) -> bool:
    return rank(g, p) == g.m


def is_rigid(g: MultiGraph, p: CountParams) -> bool:
    return rank(g, p) == p.k * g.n - p.l


def is_tight(g: MultiGraph, p: CountParams) -> bool:
    return is_rigid(g, p) and is_sparse(g, p)


def is_redundant(g: MultiGraph, p: CountParams) -> bool:
    """G - e is rigid for every edge e."""
    target = p.k * g.n - p.l
    ids = list(g.edges)
    if rank(g, p, ids) != target:
        return False
    return all(rank(g, p, ids[:i] + ids[i + 1 :]) == target for i in range(len(ids)))


def count_oracle(g: MultiGraph, p: CountParams) -> RankOracle:
    return RankOracle(g.edge_ids, lambda s: rank(g, p, s), name=f"M{p}")


@dataclass(frozen=True)
class MComponent:
    edges: frozenset
    trivial: bool


def m_components(g: MultiGraph, p: CountParams) -> list[MComponent]:
    comps = components(count_oracle(g, p))
    out = [MComponent(c, len(c) == 1) for c in comps]
    return sorted(out, key=lambda c: min(g.edge_ids.index(e) for e in c.edges))


def is_mconnected(g: MultiGraph, p: CountParams) -> bool:
    comps = m_components(g, p)
    return len(comps) == 1 and not comps[0].trivial


# brute-force oracles


def is_independent_definitional(g: MultiGraph, p: CountParams, edges: Iterable[EdgeId]) -> bool:
    """|I[X]| <= k|X| - l for every vertex set X spanning at least one edge of I."""
    ids = list(edges)
    verts = sorted(g.vertices_of(ids), key=sort_key)
    pos = {v: i for i, v in enumerate(verts)}
    masks = [(1 << pos[g.ends(e)[0]]) | (1 << pos[g.ends(e)[1]]) for e in ids]
    for x in range(1, 1 << len(verts)):
        cnt = sum(1 for m in masks if m & x == m)
        if cnt and cnt > p.k * bin(x).count("1") - p.l:
            return False
    return True


def brute_force_rank(g: MultiGraph, p: CountParams, edges: Iterable[EdgeId] | None = None) -> int:
    """Largest independent subset by subset enumeration (refuses beyond 2^20 subsets)."""
    ids = _edge_list(g, edges)
    if (1 << len(ids)) > BRUTE_FORCE_CAP:
        raise OracleRefusal(f"{len(ids)} edges means {2 ** len(ids)} subsets, above the 2^20 cap")
    for size in range(len(ids), 0, -1):
        for sub in combinations(ids, size):
            if is_independent_definitional(g, p, sub):
                return size
    return 0


def greedy_definitional_rank(g: MultiGraph, p: CountParams, edges: Iterable[EdgeId] | None = None) -> int:
    """Matroid greedy driven by the definitional independence test (no pebbles)."""
    chosen: list = []
    for e in _edge_list(g, edges):
        if is_independent_definitional(g, p, chosen + [e]):
            chosen.append(e)
    return len(chosen)


def definitional_rank_batch(n: int, mult: np.ndarray, p: CountParams) -> np.ndarray:
    """Greedy definitional rank for many multigraphs on n vertices at once.

    ``mult`` rows are multiplicity vectors over ``combinations(range(n), 2)``.
    Tracks slack[X] = k|X| - l - |I[X]| for every vertex mask X.
    """
    pairs = list(combinations(range(n), 2))
    rows = mult.shape[0]
    masks = np.arange(1 << n)
    size = np.array([bin(x).count("1") for x in masks])
    slack = np.broadcast_to(p.k * size - p.l, (rows, 1 << n)).astype(np.int32).copy()
    res = np.zeros(rows, np.int64)
    for j, (u, v) in enumerate(pairs):
        sup = masks[(masks >> u & 1).astype(bool) & (masks >> v & 1).astype(bool)]
        for layer in range(int(mult[:, j].max(initial=0))):
            active = mult[:, j] > layer
            ok = active & (slack[:, sup].min(axis=1) >= 1)
            idx = np.flatnonzero(ok)
            slack[np.ix_(idx, sup)] -= 1
            res[idx] += 1
    return res


def pebble_rank_batch(n: int, mult: np.ndarray, p: CountParams) -> np.ndarray:
    """Fast-path rank for many multigraphs on n vertices (pairs in combinations order)."""
    pairs = list(combinations(range(n), 2))
    pu = np.array([a for a, _ in pairs], dtype=np.int64)
    pv = np.array([b for _, b in pairs], dtype=np.int64)
    mult = np.ascontiguousarray(mult, dtype=np.int64)
    if p.l >= 0:
        return _pebble.batch_rank(n, mult, pu, pv, p.k, p.l)
    r0 = _pebble.batch_rank(n, mult, pu, pv, p.k, 0)
    return np.minimum(mult.sum(axis=1), r0 - p.l)
