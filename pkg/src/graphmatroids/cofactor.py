"""Rank of the 3-dimensional generic cofactor matroid and its t-fold union.

The rank is computed from the combinatorial min-formula over edge sets F and
2-thin, 4-shellable covers by vertex sets of size at least five.  Exact search
enumerates every admissible family per connected component, so it is limited
to components with at most ``cap`` vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .connectivity import vertex_connectivity
from .generators import cofactor_packing
from .graph import EdgeId, GraphError, MultiGraph, sort_key
from .matroid import ConsistencyError, OracleRefusal, RankOracle, union_partition

DEFAULT_CAP = 8


class PreconditionError(ValueError):
    pass


# cover combinatorics


def hinges(cover: Sequence[Iterable]) -> list[tuple[frozenset, int]]:
    """Hinge pairs (two-vertex intersections of two sets) with their degrees."""
    sets = [frozenset(x) for x in cover]
    found: set[frozenset] = set()
    for a, b in combinations(sets, 2):
        common = a & b
        if len(common) > 2:
            raise ValueError("cover is not 2-thin")
        if len(common) == 2:
            found.add(common)
    out = [(h, sum(1 for x in sets if h <= x)) for h in found]
    return sorted(out, key=lambda hd: sorted(hd[0], key=sort_key))


def shelling_order(cover: Sequence[Iterable]) -> list[int] | None:
    """An order in which every set meets the union of its predecessors in <= 4 vertices."""
    sets = [frozenset(x) for x in cover]
    n = len(sets)
    dead: set[int] = set()

    def extend(mask: int, union: frozenset, order: list[int]) -> list[int] | None:
        if len(order) == n:
            return order
        if mask in dead:
            return None
        for i in range(n):
            if mask >> i & 1:
                continue
            if not order or len(sets[i] & union) <= 4:
                got = extend(mask | 1 << i, union | sets[i], order + [i])
                if got is not None:
                    return got
        dead.add(mask)
        return None

    return extend(0, frozenset(), [])


def cover_cost(cover: Sequence[Iterable]) -> int:
    """Sum of (3|X| - 6) minus sum over hinges of (degree - 1)."""
    return sum(3 * len(frozenset(x)) - 6 for x in cover) - sum(d - 1 for _, d in hinges(cover))


def is_admissible(cover: Sequence[Iterable]) -> bool:
    sets = [frozenset(x) for x in cover]
    if any(len(x) < 5 for x in sets):
        return False
    if any(len(a & b) > 2 for a, b in combinations(sets, 2)):
        return False
    return shelling_order(sets) is not None


@dataclass(frozen=True)
class _Families:
    sets: list[tuple[frozenset, ...]]
    cov: np.ndarray  # covered vertex pairs as bitmasks over combinations(range(m), 2)
    cost: np.ndarray


@lru_cache(maxsize=None)
def admissible_families(m: int) -> _Families:
    """Every admissible family on vertices 0..m-1 (including the empty one)."""
    pair_bit = {pr: 1 << i for i, pr in enumerate(combinations(range(m), 2))}
    candidates = [frozenset(c) for size in range(5, m + 1) for c in combinations(range(m), size)]
    fams: list[tuple[frozenset, ...]] = []

    def grow(start: int, fam: list[frozenset]) -> None:
        fams.append(tuple(fam))
        for i in range(start, len(candidates)):
            x = candidates[i]
            if any(len(x & y) > 2 for y in fam):
                continue
            # shellability is inherited by subfamilies, so failing here prunes the branch
            if shelling_order(fam + [x]) is None:
                continue
            grow(i + 1, fam + [x])

    grow(0, [])
    cov = np.zeros(len(fams), dtype=np.uint64)
    cost = np.zeros(len(fams), dtype=np.int64)
    for j, fam in enumerate(fams):
        bits = 0
        for x in fam:
            for pr in combinations(sorted(x), 2):
                bits |= pair_bit[pr]
        cov[j] = bits
        cost[j] = cover_cost(fam)
    return _Families(fams, cov, cost)


# certificates


@dataclass(frozen=True)
class CofactorCertificate:
    t: int
    F: frozenset
    cover: tuple[frozenset, ...]
    value: int

    @property
    def hinges(self) -> list[tuple[frozenset, int]]:
        return hinges(self.cover)

    @property
    def shelling(self) -> list[int] | None:
        return shelling_order(self.cover)

    def to_json(self) -> dict:
        return {
            "rank": self.value,
            "t": self.t,
            "F": sorted(str(e) for e in self.F),
            "cover": [sorted(str(v) for v in x) for x in self.cover],
            "hinges": [{"pair": sorted(str(v) for v in h), "degree": d} for h, d in self.hinges],
            "shelling": self.shelling,
        }


def evaluate_certificate(g: MultiGraph, edges: Iterable[EdgeId], cert: CofactorCertificate) -> list[str]:
    """Recheck a certificate from scratch; returns the list of problems."""
    problems = []
    e_prime = frozenset(edges)
    if not cert.F <= e_prime:
        problems.append("F is not contained in E'")
    for e in e_prime - cert.F:
        u, v = g.ends(e)
        if not any(u in x and v in x for x in cert.cover):
            problems.append(f"edge {e!r} not covered")
    if not is_admissible(cert.cover):
        problems.append("cover is not an admissible family")
    else:
        value = len(cert.F) + cert.t * cover_cost(cert.cover)
        if value != cert.value:
            problems.append(f"recomputed value {value} differs from stored {cert.value}")
    return problems


def _require_simple(g: MultiGraph) -> None:
    if not g.is_simple():
        raise GraphError("cofactor ranks are defined here for simple graphs only")


def _edge_ids(g: MultiGraph, edges) -> list:
    if edges is None:
        return list(g.edges)
    keep = set(edges)
    return [e for e in g.edges if e in keep]


class _Index:
    """Vertex positions and endpoint pairs of a simple graph, for repeated rank queries."""

    def __init__(self, g: MultiGraph):
        self.verts = sorted(g.vertices, key=sort_key)
        pos = {v: i for i, v in enumerate(self.verts)}
        self.ends = {e: tuple(sorted((pos[u], pos[v]))) for e, (u, v) in g.edges.items()}


def _solve(index: _Index, ids: Iterable[EdgeId], t: int, cap: int, certify: bool):
    # components of the edge set by union-find over vertex positions
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    ends = index.ends
    ids = list(ids)
    for e in ids:
        a, b = ends[e]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list] = {}
    for e in ids:
        groups.setdefault(find(ends[e][0]), []).append(e)
    total = 0
    F: list = []
    cover: list[frozenset] = []
    for es in groups.values():
        verts = sorted({x for e in es for x in ends[e]})
        m = len(verts)
        if m < 5:
            total += len(es)
            F.extend(es)
            continue
        if m > cap:
            raise OracleRefusal(f"component with {m} vertices exceeds the exhaustive cap {cap}")
        local = {v: i for i, v in enumerate(verts)}
        bits = []
        emask = 0
        for e in es:
            a, b = local[ends[e][0]], local[ends[e][1]]
            bit = 1 << (a * (2 * m - a - 1) // 2 + b - a - 1)
            bits.append(bit)
            emask |= bit
        fams = admissible_families(m)
        uncovered = np.bitwise_count(np.uint64(emask) & ~fams.cov).astype(np.int64)
        value = uncovered + t * fams.cost
        if not certify:
            total += int(value.min())
            continue
        # ties: fewest uncovered edges, then enumeration order
        j = int(np.lexsort((np.arange(len(value)), uncovered, value))[0])
        total += int(value[j])
        cov = int(fams.cov[j])
        F.extend(e for e, bit in zip(es, bits) if not bit & cov)
        cover.extend(frozenset(index.verts[verts[i]] for i in x) for x in fams.sets[j])
    return total, F, cover


def rt(
    g: MultiGraph, edges: Iterable[EdgeId] | None = None, t: int = 1, cap: int = DEFAULT_CAP
) -> tuple[int, CofactorCertificate]:
    """Exact rank in the t-fold union of C(g), with a minimizing certificate."""
    if t < 1:
        raise ValueError("t must be positive")
    _require_simple(g)
    ids = _edge_ids(g, edges)
    total, F, cover = _solve(_Index(g), ids, t, cap, certify=True)
    return total, CofactorCertificate(t, frozenset(F), tuple(cover), total)


def r1(g: MultiGraph, edges: Iterable[EdgeId] | None = None, cap: int = DEFAULT_CAP) -> tuple[int, CofactorCertificate]:
    return rt(g, edges, 1, cap)


def check_bridges(g: MultiGraph, edges: Iterable[EdgeId], cert: CofactorCertificate, cap: int = DEFAULT_CAP) -> None:
    """Every edge of F must be a coloop of the t-fold union on E'."""
    ids = _edge_ids(g, edges)
    full = cert.value
    for e in cert.F:
        if rt(g, [x for x in ids if x != e], cert.t, cap)[0] != full - 1:
            raise ConsistencyError(f"edge {e!r} of F is not a bridge")


def rank_oracle(g: MultiGraph, t: int = 1, cap: int = DEFAULT_CAP) -> RankOracle:
    _require_simple(g)
    index = _Index(g)
    return RankOracle(g.edge_ids, lambda s: _solve(index, s, t, cap, certify=False)[0], name=f"C^{t}")


def kn_rank(n: int, t: int = 1) -> int:
    if n < 6 * t:
        raise PreconditionError(f"complete-graph rank formula needs n >= 6t (n={n}, t={t})")
    return 3 * t * n - 6 * t


def _is_complete(g: MultiGraph, ids: list) -> bool:
    verts = g.vertices_of(ids)
    pairs = {frozenset(g.ends(e)) for e in ids}
    return len(pairs) == len(verts) * (len(verts) - 1) // 2


def _base_rank(g: MultiGraph, ids: list, t: int, cap: int) -> int:
    if not ids:
        return 0
    verts = g.vertices_of(ids)
    if _is_complete(g, ids) and len(verts) >= 6 * t:
        return kn_rank(len(verts), t)
    try:
        return rt(g, ids, t, cap)[0]
    except OracleRefusal:
        raise OracleRefusal("rank of the peeled base graph is unknown") from None


def peel_lower_bound(
    g: MultiGraph,
    edges: Iterable[EdgeId] | None,
    t: int,
    order: Sequence,
    cap: int = DEFAULT_CAP,
) -> int:
    """Lower bound from removing vertices one at a time, each worth min(3t, degree)."""
    _require_simple(g)
    if len(set(order)) != len(order):
        raise ValueError("elimination order repeats a vertex")
    ids = set(_edge_ids(g, edges))
    bound = 0
    for v in order:
        star = {e for e in ids if v in g.ends(e)}
        bound += min(3 * t, len(star))
        ids -= star
    return bound + _base_rank(g, [e for e in g.edges if e in ids], t, cap)


def greedy_peel_order(g: MultiGraph, edges: Iterable[EdgeId] | None, t: int, cap: int = DEFAULT_CAP) -> list:
    """Remove minimum-degree vertices until the rest is complete (>= 6t vertices) or small."""
    ids = set(_edge_ids(g, edges))
    order = []
    while ids:
        verts = g.vertices_of(ids)
        ordered = [e for e in g.edges if e in ids]
        if _is_complete(g, ordered) and len(verts) >= 6 * t:
            break
        if len(verts) <= cap:
            break
        deg = {v: 0 for v in verts}
        for e in ids:
            for x in g.ends(e):
                deg[x] += 1
        v = min(verts, key=lambda x: (deg[x], sort_key(x)))
        order.append(v)
        ids -= {e for e in ids if v in g.ends(e)}
    return order


def certified_rank(g: MultiGraph, edges: Iterable[EdgeId] | None, t: int = 1, cap: int = DEFAULT_CAP) -> int | None:
    """Exact rank when it can be established (exhaustively or by a tight peel), else None."""
    ids = _edge_ids(g, edges)
    verts = g.vertices_of(ids)
    try:
        return rt(g, ids, t, cap)[0]
    except OracleRefusal:
        pass
    ceiling = 3 * t * len(verts) - 6 * t
    order = greedy_peel_order(g, ids, t, cap)
    try:
        lb = peel_lower_bound(g, ids, t, order, cap)
    except OracleRefusal:
        return None
    return lb if lb == ceiling else None


def extract_three_connected(g: MultiGraph, t: int, cap: int = DEFAULT_CAP) -> list[MultiGraph]:
    """t edge-disjoint spanning subgraphs, each of rank 3n - 6 and 3-connected."""
    _require_simple(g)
    n = g.n
    target = 3 * t * n - 6 * t
    ids = list(g.edges)
    complete = _is_complete(g, ids) and len(g.vertices_of(ids)) == n
    if complete and n >= 6 * t:
        have = kn_rank(n, t)
    else:
        try:
            have = rt(g, ids, t, cap)[0]
        except OracleRefusal as exc:
            raise PreconditionError(f"cannot establish the rank precondition: {exc}") from None
    if have != target:
        raise PreconditionError(f"rank {have} is below 3tn - 6t = {target}")
    if complete and n >= 6 * t:
        _, parts = cofactor_packing(n, t)
        order = list(g.vertices)
        relabel = dict(zip(range(n), order))
        # packing is built on 0..n-1; map edges by endpoint pair
        by_pair = {frozenset(g.ends(e)): e for e in ids}
        edge_sets = [[by_pair[frozenset(relabel[x] for x in p.ends(e))] for e in p.edges] for p in parts]
    else:
        one = rank_oracle(g, 1, cap)
        edge_sets = union_partition([one] * t, ids)
    out = []
    single = 3 * n - 6
    for es in edge_sets:
        es = _trim(g, es, single, cap)
        h = g.edge_subgraph(es)
        r = certified_rank(h, None, 1, cap)
        if r != single:
            raise ConsistencyError(f"extracted part has rank {r}, expected {single}")
        if vertex_connectivity(h) < 3:
            raise ConsistencyError("extracted part is not 3-connected")
        out.append(h)
    return out


def _trim(g: MultiGraph, es: list, target: int, cap: int) -> list:
    """Drop dependent edges in canonical order while the rank stays at ``target``."""
    es = sorted(es, key=lambda e: sort_key(e))
    if len(es) == target:
        return es
    try:
        rt(g, es, 1, cap)
    except OracleRefusal:
        return es  # rank not computable edge-by-edge; keep the certified part as is
    kept = list(es)
    for e in es:
        if len(kept) == target:
            break
        trial = [x for x in kept if x != e]
        if rt(g, trial, 1, cap)[0] == target:
            kept = trial
    return kept


def is_essential_partition(g: MultiGraph, first: Iterable[EdgeId], second: Iterable[EdgeId], t: int = 1, cap: int = DEFAULT_CAP) -> bool:
    """Both sides have rank below 3t|V| - 6t."""
    a, b = set(first), set(second)
    if a & b or (a | b) != set(g.edges):
        raise ValueError("not a bipartition of the edge set")
    ceiling = 3 * t * g.n - 6 * t
    return max(rt(g, a, t, cap)[0], rt(g, b, t, cap)[0]) < ceiling
