"""Half-edge multigraphs with exact rational edge lengths.

A :class:`MetricGraph` is an immutable model of a metric graph. Loops and
multiple edges are allowed. Every edge ``e`` has two half-edges ``(e, 0)`` and
``(e, 1)``; the first is the source and is rooted at ``src``, the second is the
target and is rooted at ``dst``. Ids are opaque strings and every listing is in
lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import GraphError

HalfEdge = tuple[str, int]


def as_length(value) -> Fraction:
    """Parse an exact positive length from an int, Fraction or ``"p/q"`` string."""
    if isinstance(value, bool):
        raise GraphError(f"invalid length {value!r}")
    if isinstance(value, (int, Fraction)):
        length = Fraction(value)
    elif isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in ".eE"):
            raise GraphError(f"length {value!r} must be an exact integer or 'p/q' string")
        try:
            length = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphError(f"invalid length {value!r}") from exc
    else:
        raise GraphError(f"invalid length {value!r}; floats are not accepted")
    if length <= 0:
        raise GraphError(f"edge length must be positive, got {value!r}")
    return length


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str
    length: Fraction = Fraction(1)

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst

    def endpoint(self, end: int) -> str:
        return self.src if end == 0 else self.dst


class MetricGraph:
    """Immutable metric graph on a fixed oriented model."""

    __slots__ = ("_vertices", "_edges", "_incidence")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge | tuple]):
        verts = sorted(set(vertices))
        if len(verts) == 0:
            raise GraphError("a graph needs at least one vertex")
        vset = set(verts)
        table: dict[str, Edge] = {}
        for item in edges:
            if not isinstance(item, Edge):
                item = Edge(item[0], item[1], item[2], as_length(item[3]) if len(item) > 3 else Fraction(1))
            else:
                item = Edge(item.id, item.src, item.dst, as_length(item.length))
            if item.id in table:
                raise GraphError(f"duplicate edge id {item.id!r}")
            for v in (item.src, item.dst):
                if v not in vset:
                    raise GraphError(f"edge {item.id!r} uses unknown vertex {v!r}")
            table[item.id] = item
        self._vertices = tuple(verts)
        self._edges = {eid: table[eid] for eid in sorted(table)}
        incidence: dict[str, list[HalfEdge]] = {v: [] for v in verts}
        for edge in self._edges.values():
            incidence[edge.src].append((edge.id, 0))
            incidence[edge.dst].append((edge.id, 1))
        self._incidence = {v: tuple(hs) for v, hs in incidence.items()}

    # -- basic accessors -------------------------------------------------
    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges.values())

    def edge(self, eid: str) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise GraphError(f"unknown edge id {eid!r}") from None

    def has_edge(self, eid: str) -> bool:
        return eid in self._edges

    def has_vertex(self, v: str) -> bool:
        return v in self._incidence

    def length(self, eid: str) -> Fraction:
        return self.edge(eid).length

    def lengths(self) -> dict[str, Fraction]:
        return {eid: e.length for eid, e in self._edges.items()}

    @property
    def half_edges(self) -> tuple[HalfEdge, ...]:
        return tuple((eid, end) for eid in self._edges for end in (0, 1))

    @staticmethod
    def pair(h: HalfEdge) -> HalfEdge:
        """The other half of the edge containing ``h``."""
        return (h[0], 1 - h[1])

    def root(self, h: HalfEdge) -> str:
        return self.edge(h[0]).endpoint(h[1])

    def tangent(self, v: str) -> tuple[HalfEdge, ...]:
        """Half-edges rooted at ``v``."""
        try:
            return self._incidence[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def source(self, eid: str) -> str:
        return self.edge(eid).src

    def target(self, eid: str) -> str:
        return self.edge(eid).dst

    def __repr__(self) -> str:
        return f"MetricGraph(vertices={len(self._vertices)}, edges={len(self._edges)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetricGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self._edges.values())))

    def with_lengths(self, lengths: Mapping[str, object]) -> "MetricGraph":
        """Copy of the graph with some edge lengths replaced."""
        edges = [Edge(e.id, e.src, e.dst, as_length(lengths.get(e.id, e.length))) for e in self.edges]
        return MetricGraph(self._vertices, edges)


class DisjointSet:
    """Union-find over hashable items with path halving."""

    def __init__(self, items: Iterable = ()):
        self._parent = {x: x for x in items}

    def add(self, x) -> None:
        self._parent.setdefault(x, x)

    def find(self, x):
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self._parent[rb] = ra
        return True

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self._parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted((sorted(g) for g in out.values()), key=lambda g: g[0])


def _vertex_partition(g: MetricGraph, edge_ids: Iterable[str] | None = None) -> DisjointSet:
    ds = DisjointSet(g.vertices)
    for eid in g.edge_ids if edge_ids is None else edge_ids:
        e = g.edge(eid)
        ds.union(e.src, e.dst)
    return ds


def _check_edges(g: MetricGraph, s: Iterable[str]) -> list[str]:
    out = sorted(set(s))
    for eid in out:
        if not g.has_edge(eid):
            raise GraphError(f"unknown edge id {eid!r}")
    return out


def num_components(g: MetricGraph) -> int:
    return len(_vertex_partition(g).groups())


def is_connected(g: MetricGraph) -> bool:
    return num_components(g) == 1


def genus(g: MetricGraph) -> int:
    """First Betti number ``#E - #V + #components``.

    For a connected graph this is the usual ``#E - #V + 1``.
    """
    return len(g.edge_ids) - len(g.vertices) + num_components(g)


def induced_subgraph(g: MetricGraph, vertices: Iterable[str]) -> MetricGraph:
    vs = set(vertices)
    return MetricGraph(vs, [e for e in g.edges if e.src in vs and e.dst in vs])


def connected_components(g: MetricGraph) -> list[MetricGraph]:
    """Connected components as induced subgraphs, ordered by smallest vertex id."""
    return [induced_subgraph(g, group) for group in _vertex_partition(g).groups()]


def is_loop(g: MetricGraph, eid: str) -> bool:
    return g.edge(eid).is_loop


def is_bridge(g: MetricGraph, eid: str) -> bool:
    """True if removing the (non-loop) edge increases the number of components."""
    e = g.edge(eid)
    if e.is_loop:
        return False
    ds = _vertex_partition(g, [x for x in g.edge_ids if x != eid])
    return ds.find(e.src) != ds.find(e.dst)


def delete_edges(g: MetricGraph, s: Iterable[str]) -> MetricGraph:
    """Remove the edges in ``s``; all vertices are kept."""
    drop = set(_check_edges(g, s))
    return MetricGraph(g.vertices, [e for e in g.edges if e.id not in drop])


def contract_edges(g: MetricGraph, s: Iterable[str]) -> tuple[MetricGraph, dict[str, str], dict[str, str]]:
    """Contract every connected component of the subgraph spanned by ``s``.

    Each component collapses to its smallest vertex id. The edges of ``s`` are
    discarded; the other edges keep their ids and lengths (and may become
    loops). Returns ``(graph, vertex_map, edge_map)``.
    """
    ids = _check_edges(g, s)
    ds = _vertex_partition(g, ids)
    vmap = {v: ds.find(v) for v in g.vertices}
    dropped = set(ids)
    edges = [Edge(e.id, vmap[e.src], vmap[e.dst], e.length) for e in g.edges if e.id not in dropped]
    emap = {e.id: e.id for e in edges}
    return MetricGraph(set(vmap.values()), edges), vmap, emap


def spanning_tree_complements(g: MetricGraph) -> Iterator[tuple[str, ...]]:
    """Yield the ``genus(g)``-element edge sets whose removal leaves a tree.

    Backtracking over edges in lexicographic order, trying "remove" before
    "keep", so the sets come out in lexicographic order.
    """
    if not is_connected(g):
        raise GraphError("graph not connected")
    edges = g.edge_ids
    n = len(edges)
    target = genus(g)
    vertices = g.vertices

    def still_connected(removed: set[str]) -> bool:
        ds = DisjointSet(vertices)
        comps = len(vertices)
        for eid in edges:
            if eid in removed:
                continue
            e = g.edge(eid)
            if ds.union(e.src, e.dst):
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    chosen: list[str] = []
    removed: set[str] = set()

    def walk(i: int) -> Iterator[tuple[str, ...]]:
        if len(chosen) == target:
            yield tuple(chosen)
            return
        if n - i < target - len(chosen):
            return
        eid = edges[i]
        removed.add(eid)
        if still_connected(removed):
            chosen.append(eid)
            yield from walk(i + 1)
            chosen.pop()
        removed.discard(eid)
        yield from walk(i + 1)

    yield from walk(0)


def spanning_tree_edges(g: MetricGraph) -> tuple[str, ...]:
    """Lexicographically first spanning tree (greedy over sorted edge ids)."""
    if not is_connected(g):
        raise GraphError("graph not connected")
    ds = DisjointSet(g.vertices)
    return tuple(e.id for e in g.edges if ds.union(e.src, e.dst))


def subdivide_edge(g: MetricGraph, eid: str, at: Fraction = Fraction(1, 2),
                   vertex: str | None = None) -> MetricGraph:
    """Refine the model by splitting ``eid`` into two edges (test utility).

    The new edges are named ``eid + "a"`` and ``eid + "b"`` and the new vertex
    defaults to ``eid + "_mid"``.
    """
    e = g.edge(eid)
    mid = vertex or f"{eid}_mid"
    first = e.length * Fraction(at)
    rest = [x for x in g.edges if x.id != eid]
    rest += [Edge(eid + "a", e.src, mid, first), Edge(eid + "b", mid, e.dst, e.length - first)]
    return MetricGraph(list(g.vertices) + [mid], rest)
