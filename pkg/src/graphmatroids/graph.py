"""Loopless multigraphs with stable edge identities, plus JSON/DOT I/O and isomorphism."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

import networkx as nx

Vertex = Hashable
EdgeId = Hashable


def sort_key(x: object) -> tuple:
    """Total order for mixed int/str ids: ints first, then strings."""
    return (isinstance(x, str), x)


class GraphError(ValueError):
    pass


class GraphFormatError(GraphError):
    """Raised by ``read_graph``; ``location`` points at the offending JSON node."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location


class MultiGraph:
    """Immutable loopless multigraph.

    ``edges`` maps edge id -> (u, v) with the endpoint pair stored in sorted order.
    Subgraph operations keep edge ids unchanged.
    """

    __slots__ = ("_vertices", "_ends", "_vindex", "_stars")

    def __init__(
        self,
        vertices: Iterable[Vertex] = (),
        edges: Mapping[EdgeId, tuple[Vertex, Vertex]] | Iterable[tuple[EdgeId, Vertex, Vertex]] = (),
        *,
        no_isolated: bool = False,
    ):
        verts = list(dict.fromkeys(vertices))
        seen = set(verts)
        items = edges.items() if isinstance(edges, Mapping) else ((e, (u, v)) for e, u, v in edges)
        ends: dict[EdgeId, tuple[Vertex, Vertex]] = {}
        for eid, (u, v) in items:
            if eid in ends:
                raise GraphError(f"duplicate edge id {eid!r}")
            if u == v:
                raise GraphError(f"edge {eid!r} is a loop at {u!r}")
            for x in (u, v):
                if x not in seen:
                    seen.add(x)
                    verts.append(x)
            ends[eid] = (u, v) if sort_key(u) <= sort_key(v) else (v, u)
        self._vertices = tuple(verts)
        self._ends = ends
        self._vindex = {v: i for i, v in enumerate(self._vertices)}
        self._stars: dict[Vertex, frozenset] | None = None
        if no_isolated:
            busy = {x for uv in ends.values() for x in uv}
            lonely = [v for v in self._vertices if v not in busy]
            if lonely:
                raise GraphError(f"isolated vertices: {lonely!r}")

    # basic accessors

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> Mapping[EdgeId, tuple[Vertex, Vertex]]:
        return self._ends

    @property
    def edge_ids(self) -> tuple:
        return tuple(self._ends)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._ends)

    def index(self, v: Vertex) -> int:
        return self._vindex[v]

    def ends(self, e: EdgeId) -> tuple[Vertex, Vertex]:
        return self._ends[e]

    def _star_map(self) -> dict[Vertex, frozenset]:
        if self._stars is None:
            acc: dict[Vertex, list] = {v: [] for v in self._vertices}
            for e, (u, v) in self._ends.items():
                acc[u].append(e)
                acc[v].append(e)
            self._stars = {v: frozenset(es) for v, es in acc.items()}
        return self._stars

    def star(self, v: Vertex) -> frozenset:
        return self._star_map()[v]

    def degree(self, v: Vertex) -> int:
        return len(self.star(v))

    def min_degree(self) -> int:
        return min((self.degree(v) for v in self._vertices), default=0)

    def vertices_of(self, edge_ids: Iterable[EdgeId]) -> set:
        out = set()
        for e in edge_ids:
            out.update(self._ends[e])
        return out

    def induced_edges(self, xs: Iterable[Vertex]) -> set:
        xs = set(xs)
        return {e for e, (u, v) in self._ends.items() if u in xs and v in xs}

    def multiplicity(self) -> Counter:
        return Counter(self._ends.values())

    def is_simple(self) -> bool:
        return all(c == 1 for c in self.multiplicity().values())

    # derived graphs

    def edge_subgraph(self, edge_ids: Iterable[EdgeId], keep_vertices: bool = True) -> "MultiGraph":
        keep = set(edge_ids)
        ends = {e: uv for e, uv in self._ends.items() if e in keep}
        verts = self._vertices if keep_vertices else [v for v in self._vertices if any(v in uv for uv in ends.values())]
        return MultiGraph(verts, ends)

    def remove_edges(self, edge_ids: Iterable[EdgeId]) -> "MultiGraph":
        drop = set(edge_ids)
        return MultiGraph(self._vertices, {e: uv for e, uv in self._ends.items() if e not in drop})

    def remove_vertex(self, v: Vertex) -> "MultiGraph":
        return MultiGraph(
            [x for x in self._vertices if x != v],
            {e: uv for e, uv in self._ends.items() if v not in uv},
        )

    def relabel(self, mapping: Mapping[Vertex, Vertex]) -> "MultiGraph":
        return MultiGraph(
            [mapping[v] for v in self._vertices],
            {e: (mapping[u], mapping[v]) for e, (u, v) in self._ends.items()},
        )

    def canonical(self) -> "MultiGraph":
        verts = sorted(self._vertices, key=sort_key)
        return MultiGraph(verts, {e: self._ends[e] for e in sorted(self._ends, key=sort_key)})

    def to_networkx(self) -> nx.MultiGraph:
        h = nx.MultiGraph()
        h.add_nodes_from(self._vertices)
        for e, (u, v) in self._ends.items():
            h.add_edge(u, v, key=e)
        return h

    def simple_networkx(self) -> nx.Graph:
        """Underlying simple graph with a ``mult`` edge attribute."""
        h = nx.Graph()
        h.add_nodes_from(self._vertices)
        for (u, v), c in self.multiplicity().items():
            h.add_edge(u, v, mult=c)
        return h

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return set(self._vertices) == set(other._vertices) and self._ends == other._ends

    def __hash__(self) -> int:
        return hash((frozenset(self._vertices), frozenset(self._ends.items())))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Orientation:
    """Head endpoint for every edge id."""

    graph: MultiGraph
    heads: Mapping[EdgeId, Vertex]

    def __post_init__(self) -> None:
        for e, h in self.heads.items():
            if h not in self.graph.ends(e):
                raise GraphError(f"head {h!r} is not an endpoint of edge {e!r}")
        if set(self.heads) != set(self.graph.edges):
            raise GraphError("orientation must cover every edge exactly once")

    def indegree(self, v: Vertex) -> int:
        return sum(1 for e in self.graph.star(v) if self.heads[e] == v)

    def outdegree(self, v: Vertex) -> int:
        return self.graph.degree(v) - self.indegree(v)


# isomorphism


def isomorphic(g1: MultiGraph, g2: MultiGraph) -> dict | None:
    """Vertex bijection g1 -> g2 preserving edge multiplicities, or None."""
    if g1.n != g2.n or g1.m != g2.m:
        return None
    if sorted(g1.degree(v) for v in g1.vertices) != sorted(g2.degree(v) for v in g2.vertices):
        return None
    if sorted(g1.multiplicity().values()) != sorted(g2.multiplicity().values()):
        return None
    matcher = nx.algorithms.isomorphism.GraphMatcher(
        g1.simple_networkx(),
        g2.simple_networkx(),
        edge_match=lambda a, b: a["mult"] == b["mult"],
    )
    for mapping in matcher.isomorphisms_iter():
        return dict(mapping)
    return None


# I/O


def read_graph(data: bytes | str) -> MultiGraph:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from exc
    if not isinstance(doc, dict):
        raise GraphFormatError("expected an object")
    verts = doc.get("vertices")
    if not isinstance(verts, list):
        raise GraphFormatError("missing or non-list 'vertices'", "$.vertices")
    vseen: set = set()
    for i, v in enumerate(verts):
        if not isinstance(v, str):
            raise GraphFormatError("vertex id must be a string", f"$.vertices[{i}]")
        if v in vseen:
            raise GraphFormatError(f"duplicate vertex id {v!r}", f"$.vertices[{i}]")
        vseen.add(v)
    edges = doc.get("edges")
    if not isinstance(edges, list):
        raise GraphFormatError("missing or non-list 'edges'", "$.edges")
    ends: dict[str, tuple[str, str]] = {}
    for i, item in enumerate(edges):
        loc = f"$.edges[{i}]"
        if not isinstance(item, dict):
            raise GraphFormatError("edge must be an object", loc)
        eid = item.get("id")
        if not isinstance(eid, str):
            raise GraphFormatError("edge id must be a string", loc + ".id")
        if eid in ends:
            raise GraphFormatError(f"duplicate edge id {eid!r}", loc + ".id")
        pair = item.get("ends")
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise GraphFormatError("ends must be a list of two vertex ids", loc + ".ends")
        u, v = pair
        if u == v:
            raise GraphFormatError(f"loop edge at {u!r}", loc + ".ends")
        for x in (u, v):
            if x not in vseen:
                raise GraphFormatError(f"unknown vertex {x!r}", loc + ".ends")
        ends[eid] = (u, v)
    return MultiGraph(verts, ends).canonical()


def graph_document(g: MultiGraph) -> dict:
    verts = sorted(str(v) for v in g.vertices)
    edges = []
    for e in sorted(g.edges, key=str):
        u, v = sorted(str(x) for x in g.ends(e))
        edges.append({"id": str(e), "ends": [u, v]})
    return {"vertices": verts, "edges": edges}


def write_graph(g: MultiGraph) -> bytes:
    return (json.dumps(graph_document(g), separators=(",", ":")) + "\n").encode()


def to_dot(g: MultiGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in sorted(g.vertices, key=sort_key):
        lines.append(f'  "{v}";')
    for e in sorted(g.edges, key=sort_key):
        u, v = g.ends(e)
        lines.append(f'  "{u}" -- "{v}" [label="{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
