"""Graph families used throughout the package, plus small-graph enumeration."""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterator

import networkx as nx
import numpy as np

from .graph import GraphError, MultiGraph


def _from_pairs(n: int, pairs) -> MultiGraph:
    return MultiGraph(range(n), [(i, u, v) for i, (u, v) in enumerate(pairs)])


def complete(n: int) -> MultiGraph:
    if n < 1:
        raise GraphError("complete(n) needs n >= 1")
    return _from_pairs(n, combinations(range(n), 2))


def cycle(n: int) -> MultiGraph:
    if n < 3:
        raise GraphError("cycle(n) needs n >= 3")
    return _from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> MultiGraph:
    """Path on n vertices (n - 1 edges)."""
    if n < 2:
        raise GraphError("path(n) needs n >= 2")
    return _from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def wheel(n: int) -> MultiGraph:
    """Wheel on n vertices: hub 0 joined to a cycle on 1..n-1."""
    if n < 4:
        raise GraphError("wheel(n) needs n >= 4")
    rim = n - 1
    pairs = [(0, i) for i in range(1, n)]
    pairs += [(i, i % rim + 1) for i in range(1, n)]
    return _from_pairs(n, pairs)


def parallel_pair(m: int) -> MultiGraph:
    if m < 1:
        raise GraphError("parallel_pair(m) needs m >= 1")
    return _from_pairs(2, [(0, 1)] * m)


def disjoint_union(g1: MultiGraph, g2: MultiGraph) -> MultiGraph:
    """Vertices and edges renumbered 0.. with g1 first."""
    verts = list(g1.vertices) + list(g2.vertices)
    off = g1.n
    pos1 = {v: i for i, v in enumerate(g1.vertices)}
    pos2 = {v: i + off for i, v in enumerate(g2.vertices)}
    pairs = [(pos1[u], pos1[v]) for u, v in g1.edges.values()]
    pairs += [(pos2[u], pos2[v]) for u, v in g2.edges.values()]
    return _from_pairs(len(verts), pairs)


def lovasz_yemini(k: int, l: int) -> MultiGraph:
    """Highly connected graph that is not (k, l)-rigid.

    2l + 2 cliques of size 2l - 1 arranged in a ring; consecutive cliques are
    joined by a matching of size l - 1, leaving one free vertex per clique,
    and free vertices of opposite cliques are paired by a long diagonal.
    """
    if not (2 <= k < l <= 2 * k - 1):
        raise GraphError(f"lovasz_yemini needs 2 <= k < l <= 2k-1, got k={k}, l={l}")
    copies, size = 2 * l + 2, 2 * l - 1

    def vid(i: int, j: int) -> int:
        return (i % copies) * size + j

    pairs = []
    for i in range(copies):
        pairs += [(vid(i, a), vid(i, b)) for a, b in combinations(range(size), 2)]
    # vertex 0 of each clique is free; 1..l-1 go forward, l..2l-2 come from behind
    for i in range(copies):
        pairs += [(vid(i, j), vid(i + 1, l - 1 + j)) for j in range(1, l)]
    pairs += [(vid(i, 0), vid(i + l + 1, 0)) for i in range(l + 1)]
    return _from_pairs(copies * size, pairs)


def cofactor_packing(n: int, t: int) -> tuple[MultiGraph, list[MultiGraph]]:
    """K_n with t edge-disjoint spanning subgraphs, each of cofactor rank 3n - 6.

    V is split into blocks of six (plus leftovers); subgraph i holds the K_6 on
    block i.  Between blocks i < j the same-half pairs go to i and the mixed
    pairs to j.  A leftover vertex sends three edges to the first half of every
    block; everything else lands in subgraph 0.
    """
    if t < 1 or n < 6 * t:
        raise GraphError(f"cofactor_packing needs t >= 1 and n >= 6t, got n={n}, t={t}")
    kn = complete(n)
    block = [list(range(6 * i, 6 * i + 6)) for i in range(t)]
    owner_of_vertex = {v: i for i in range(t) for v in block[i]}
    owner: dict = {}
    for e, (u, v) in kn.edges.items():
        bu, bv = owner_of_vertex.get(u), owner_of_vertex.get(v)
        if bu is not None and bv is not None:
            if bu == bv:
                owner[e] = bu
            else:
                i, j = (bu, bv) if bu < bv else (bv, bu)
                a, b = (u, v) if bu < bv else (v, u)
                same = (a % 6 < 3) == (b % 6 < 3)
                owner[e] = i if same else j
        elif bu is not None or bv is not None:
            inner = u if bu is not None else v
            blk = owner_of_vertex[inner]
            owner[e] = blk if inner % 6 < 3 else 0
        else:
            owner[e] = 0
    parts = [kn.edge_subgraph([e for e, o in owner.items() if o == i]) for i in range(t)]
    return kn, parts


FAMILIES: dict[str, Callable] = {
    "complete": complete,
    "cycle": cycle,
    "path": path,
    "wheel": wheel,
    "parallel_pair": parallel_pair,
    "lovasz_yemini": lovasz_yemini,
    "cofactor_packing": cofactor_packing,
    "disjoint_union": disjoint_union,
}


def construct(family: str, **params):
    """Dispatch by family name; cofactor_packing returns (K_n, parts)."""
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise GraphError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    try:
        return fn(**params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {family}: {exc}") from None


# enumeration


def simple_graphs(max_n: int, min_n: int = 1) -> Iterator[MultiGraph]:
    """All simple graphs up to isomorphism with min_n..max_n vertices (max_n <= 7)."""
    if max_n > 7:
        raise GraphError("graph atlas only covers graphs with up to 7 vertices")
    for h in nx.graph_atlas_g():
        if min_n <= h.number_of_nodes() <= max_n:
            yield _from_pairs(h.number_of_nodes(), sorted(tuple(sorted(e)) for e in h.edges))


def _pair_index(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def multigraph_classes(n: int, cap: int) -> np.ndarray:
    """Multiplicity vectors of all multigraphs on n vertices up to isomorphism.

    Columns follow the pair order of ``combinations(range(n), 2)``; entries lie
    in 0..cap.  The representative of a class is the smallest code among its
    relabelings whose degree sequence is non-increasing, so each class appears
    exactly once.
    """
    from itertools import permutations

    pairs = _pair_index(n)
    p = len(pairs)
    if p == 0:
        return np.zeros((1, 0), dtype=np.int64)
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    pos = {pr: i for i, pr in enumerate(pairs)}
    # perm_idx[s, i]: where pair i lands under relabeling s
    perm_idx = np.array(
        [[pos[tuple(sorted((s[a], s[b])))] for a, b in pairs] for s in perms], dtype=np.int64
    )
    # valid[pattern]: permutations fixing every maximal run of equal positions
    valid = []
    for pat in range(1 << (n - 1)):
        block = [0]
        for i in range(n - 1):
            block.append(block[-1] if pat >> i & 1 else block[-1] + 1)
        valid.append([s for s in range(len(perms)) if s and all(block[perms[s][i]] == block[i] for i in range(n))])
    incidence = np.zeros((p, n), dtype=np.int64)
    for i, (a, b) in enumerate(pairs):
        incidence[i, a] = incidence[i, b] = 1
    base = cap + 1
    weights = base ** np.arange(p - 1, -1, -1, dtype=np.int64)
    # split the pair vector into a head (outer loop) and a tail block
    tail = min(p, 7)
    tail_vecs = (np.arange(base**tail, dtype=np.int64)[:, None] // weights[None, p - tail :]) % base
    tail_deg = tail_vecs @ incidence[p - tail :]
    head_pow = base ** np.arange(p - tail - 1, -1, -1, dtype=np.int64)
    out = []
    for hcode in range(base ** (p - tail)):
        head = (hcode // head_pow) % base
        deg = tail_deg + head @ incidence[: p - tail]
        keep = np.all(deg[:, :-1] >= deg[:, 1:], axis=1)
        if not keep.any():
            continue
        deg = deg[keep]
        vecs = np.hstack([np.broadcast_to(head, (len(deg), p - tail)), tail_vecs[keep]])
        # only relabelings inside blocks of equal degree keep the order sorted
        pattern = (deg[:, :-1] == deg[:, 1:]) @ (1 << np.arange(n - 1))
        for pat in np.unique(pattern):
            rows = vecs[pattern == pat]
            codes = rows @ weights
            best = codes.copy()
            for s in valid[int(pat)]:
                img = np.empty_like(rows)
                img[:, perm_idx[s]] = rows
                np.minimum(best, img @ weights, out=best)
            out.append(rows[best == codes])
    return np.concatenate(out) if out else np.zeros((0, p), dtype=np.int64)


def multigraph_from_vector(n: int, vec) -> MultiGraph:
    pairs = []
    for (u, v), c in zip(_pair_index(n), vec):
        pairs += [(u, v)] * int(c)
    return _from_pairs(n, pairs)
