"""Vertex/edge connectivity and smooth orientations."""

from __future__ import annotations

import networkx as nx

from .graph import GraphError, MultiGraph, Orientation, sort_key


def vertex_connectivity(g: MultiGraph) -> int:
    """Minimum over vertex pairs of the number of internally disjoint paths.

    Parallel edges collapse first; a complete graph on n vertices gives n - 1.
    """
    if g.n < 2:
        raise GraphError("undefined connectivity: fewer than 2 vertices")
    h = g.simple_networkx()
    if not nx.is_connected(h):
        return 0
    return nx.node_connectivity(h)


def edge_connectivity(g: MultiGraph) -> int:
    """Global minimum cut, parallel edges counted; 0 when disconnected."""
    if g.n < 2:
        raise GraphError("undefined connectivity: fewer than 2 vertices")
    h = g.simple_networkx()
    if not nx.is_connected(h):
        return 0
    cut, _ = nx.stoer_wagner(h, weight="mult")
    return int(cut)


def brute_force_vertex_connectivity(g: MultiGraph) -> int:
    """Smallest vertex set whose removal disconnects g (n - 1 if none does)."""
    from itertools import combinations

    if g.n < 2:
        raise GraphError("undefined connectivity: fewer than 2 vertices")
    h = g.simple_networkx()
    verts = list(h.nodes)
    for size in range(0, g.n - 1):
        for cut in combinations(verts, size):
            rest = h.subgraph(v for v in verts if v not in cut)
            if not nx.is_connected(rest):
                return size
    return g.n - 1


def smooth_orientation(g: MultiGraph) -> Orientation:
    """Orientation with |indeg - outdeg| <= 1 everywhere.

    Odd-degree vertices are paired in canonical id order by dummy edges, then
    each component of the augmented graph is oriented along an Euler circuit.
    """
    odd = sorted((v for v in g.vertices if g.degree(v) % 2), key=sort_key)
    h = g.to_networkx()
    dummy = object()
    for i in range(0, len(odd), 2):
        h.add_edge(odd[i], odd[i + 1], key=(dummy, i))
    heads = {}
    for comp in nx.connected_components(h):
        if len(comp) < 2:
            continue
        sub = h.subgraph(comp)
        start = min(comp, key=sort_key)
        for u, v, key in nx.eulerian_circuit(sub, source=start, keys=True):
            if isinstance(key, tuple) and len(key) == 2 and key[0] is dummy:
                continue
            heads[key] = v
    return Orientation(g, heads)
