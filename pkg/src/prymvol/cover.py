"""Harmonic double covers of metric graphs, with vertex and edge dilation.

A :class:`DoubleCover` stores the base and total graphs, the projection on
vertices and edges, the degree (1 or 2) of every total vertex and edge, and an
orientation sign per total edge: ``+1`` when the source half-edge of the lift
lies over the source half-edge of its image, ``-1`` when it lies over the
target. The sign is determined by the vertex map except over base loops,
where it must be given (default ``+1``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .errors import CoverError
from .graph import (
    Edge,
    HalfEdge,
    MetricGraph,
    connected_components,
    contract_edges,
    delete_edges,
    genus,
    induced_subgraph,
    is_connected,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True, eq=False)
class DoubleCover:
    base: MetricGraph
    total: MetricGraph
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    vertex_degree: Mapping[str, int]
    edge_degree: Mapping[str, int]
    edge_sign: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def from_maps(cls, base: MetricGraph, total: MetricGraph, vertex_map: Mapping[str, str],
                  edge_map: Mapping[str, str], degree: Mapping[str, int],
                  edge_sign: Mapping[str, int] | None = None) -> "DoubleCover":
        """Build from a flat degree map over total vertices and edges.

        Orientation signs are derived from the vertex map for lifts of
        non-loop edges; ``edge_sign`` is only consulted over base loops.
        """
        vdeg, edeg = {}, {}
        for key, d in degree.items():
            in_v, in_e = total.has_vertex(key), total.has_edge(key)
            if in_v and in_e:
                raise CoverError(f"degree key {key!r} is both a vertex and an edge id")
            if not (in_v or in_e):
                raise CoverError(f"degree key {key!r} is not a total vertex or edge")
            (vdeg if in_v else edeg)[key] = int(d)
        signs = {}
        for te in total.edges:
            be_id = edge_map.get(te.id)
            if be_id is None or not base.has_edge(be_id):
                signs[te.id] = 1
                continue
            be = base.edge(be_id)
            if be.is_loop:
                signs[te.id] = int((edge_sign or {}).get(te.id, 1))
            elif vertex_map.get(te.src) == be.dst and vertex_map.get(te.dst) == be.src:
                signs[te.id] = -1
            else:
                signs[te.id] = 1
        return cls(base, total, dict(vertex_map), dict(edge_map), vdeg, edeg, signs)

    # -- fibres ------------------------------------------------------------
    @cached_property
    def _vertex_fibres(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.base.vertices}
        for tv in self.total.vertices:
            if self.vertex_map.get(tv) in out:
                out[self.vertex_map[tv]].append(tv)
        return {v: tuple(sorted(xs)) for v, xs in out.items()}

    @cached_property
    def _edge_fibres(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {e: [] for e in self.base.edge_ids}
        for te in self.total.edge_ids:
            if self.edge_map.get(te) in out:
                out[self.edge_map[te]].append(te)
        return {e: tuple(sorted(xs)) for e, xs in out.items()}

    def vertex_preimages(self, v: str) -> tuple[str, ...]:
        return self._vertex_fibres[v]

    def edge_preimages(self, e: str) -> tuple[str, ...]:
        return self._edge_fibres[e]

    def sign(self, te: str) -> int:
        return self.edge_sign.get(te, 1)

    def half_edge_image(self, h: HalfEdge) -> HalfEdge:
        te, end = h
        return (self.edge_map[te], end if self.sign(te) > 0 else 1 - end)

    # -- dilation ----------------------------------------------------------
    @cached_property
    def dilated_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.base.vertices
                     if any(self.vertex_degree.get(t) == 2 for t in self.vertex_preimages(v)))

    @cached_property
    def dilated_edges(self) -> tuple[str, ...]:
        return tuple(e for e in self.base.edge_ids
                     if any(self.edge_degree.get(t) == 2 for t in self.edge_preimages(e)))

    @property
    def undilated_edges(self) -> tuple[str, ...]:
        dil = set(self.dilated_edges)
        return tuple(e for e in self.base.edge_ids if e not in dil)

    def dilation_subgraph(self) -> MetricGraph | None:
        """Subgraph of dilated vertices and edges, or ``None`` when empty."""
        if not self.dilated_vertices:
            return None
        dil = set(self.dilated_edges)
        return MetricGraph(self.dilated_vertices, [e for e in self.base.edges if e.id in dil])

    @property
    def is_free(self) -> bool:
        return not self.dilated_vertices

    def classification(self) -> str:
        if not self.dilated_vertices:
            return "free"
        if not self.dilated_edges:
            return "edge-free"
        return "dilated"

    def length_variables(self) -> dict[str, tuple[str, Fraction]]:
        """Total edge -> (base edge variable, factor) following the length rule."""
        return {te: (self.edge_map[te], HALF if self.edge_degree.get(te) == 2 else Fraction(1))
                for te in self.total.edge_ids}

    def __repr__(self) -> str:
        return (f"DoubleCover(base={self.base!r}, total={self.total!r}, "
                f"class={self.classification()})")


# -- validation ----------------------------------------------------------------

@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    ids: tuple = ()


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues

    @property
    def harmonic_ok(self) -> bool:
        """All invariants hold except possibly connectivity of the total graph."""
        return all(i.code == "total_disconnected" for i in self.issues)

    def codes(self) -> set[str]:
        return {i.code for i in self.issues}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{i.code}: {i.message}" for i in self.issues)


def validate(c: DoubleCover) -> ValidationReport:
    """Check every double-cover invariant; violations become report entries."""
    issues: list[Issue] = []
    base, total = c.base, c.total

    for tv in total.vertices:
        if not base.has_vertex(c.vertex_map.get(tv, "\0")):
            issues.append(Issue("unmapped_vertex", f"total vertex {tv!r} has no valid image", (tv,)))
        if c.vertex_degree.get(tv) not in (1, 2):
            issues.append(Issue("bad_degree", f"total vertex {tv!r} has degree {c.vertex_degree.get(tv)!r}", (tv,)))
    for te in total.edge_ids:
        if not base.has_edge(c.edge_map.get(te, "\0")):
            issues.append(Issue("unmapped_edge", f"total edge {te!r} has no valid image", (te,)))
        if c.edge_degree.get(te) not in (1, 2):
            issues.append(Issue("bad_degree", f"total edge {te!r} has degree {c.edge_degree.get(te)!r}", (te,)))
    if issues:
        return ValidationReport(tuple(issues))

    for te in total.edges:
        be = base.edge(c.edge_map[te.id])
        ends = (c.vertex_map[te.src], c.vertex_map[te.dst])
        want = (be.src, be.dst) if c.sign(te.id) > 0 else (be.dst, be.src)
        if ends != want:
            issues.append(Issue("endpoint_mismatch",
                                f"total edge {te.id!r} does not lie over the endpoints of {be.id!r}", (te.id,)))

    for v in base.vertices:
        degs = sorted(c.vertex_degree[t] for t in c.vertex_preimages(v))
        if degs not in ([1, 1], [2]):
            issues.append(Issue("vertex_fiber", f"base vertex {v!r} has preimage degrees {degs}", (v,)))
    for e in base.edge_ids:
        degs = sorted(c.edge_degree[t] for t in c.edge_preimages(e))
        if degs not in ([1, 1], [2]):
            issues.append(Issue("edge_fiber", f"base edge {e!r} has preimage degrees {degs}", (e,)))

    if "endpoint_mismatch" not in {i.code for i in issues}:
        for tv in total.vertices:
            v = c.vertex_map[tv]
            sums: dict[HalfEdge, int] = {h: 0 for h in base.tangent(v)}
            for th in total.tangent(tv):
                sums[c.half_edge_image(th)] += c.edge_degree[th[0]]
            for h, s in sums.items():
                if s != c.vertex_degree[tv]:
                    issues.append(Issue("harmonicity",
                                        f"at {tv!r} over half-edge {h}: degrees sum to {s}, "
                                        f"vertex degree is {c.vertex_degree[tv]}", (tv, h)))

    for te in total.edges:
        if c.edge_degree[te.id] == 2:
            for end, tv in ((0, te.src), (1, te.dst)):
                if c.vertex_degree[tv] != 2:
                    issues.append(Issue("dilation_closure",
                                        f"dilated half-edge {(te.id, end)} is rooted at undilated vertex {tv!r}",
                                        ((te.id, end),)))
        factor = HALF if c.edge_degree[te.id] == 2 else 1
        want_len = base.length(c.edge_map[te.id]) * factor
        if te.length != want_len:
            issues.append(Issue("length_rule",
                                f"total edge {te.id!r} has length {te.length}, expected {want_len}", (te.id,)))

    if not is_connected(base):
        issues.append(Issue("base_disconnected", "base graph disconnected"))
    if not is_connected(total):
        issues.append(Issue("total_disconnected", "total graph disconnected"))
    return ValidationReport(tuple(issues))


def require_valid(c: DoubleCover, connected: bool = True) -> None:
    report = validate(c)
    if connected and not report.ok:
        raise CoverError(str(report))
    if not connected and not report.harmonic_ok:
        raise CoverError(str(report))


# -- voltage construction ------------------------------------------------------

@dataclass(frozen=True)
class VoltageSpec:
    """Dilation data plus a +1/-1 sign on each undilated edge between undilated vertices."""

    base: MetricGraph
    dilated_vertices: frozenset[str] = frozenset()
    dilated_edges: frozenset[str] = frozenset()
    signs: Mapping[str, int] = field(default_factory=dict)

    def signed_edges(self) -> tuple[str, ...]:
        dv, de = set(self.dilated_vertices), set(self.dilated_edges)
        return tuple(e.id for e in self.base.edges
                     if e.id not in de and e.src not in dv and e.dst not in dv)


def build_from_voltage(spec: VoltageSpec) -> DoubleCover:
    """Realise the double cover described by a voltage spec.

    Undilated vertices ``v`` lift to ``v+``/``v-``, dilated ones to ``v``;
    likewise for edges. A sign ``+1`` joins equal superscripts, ``-1`` crosses.
    """
    base = spec.base
    dv, de = set(spec.dilated_vertices), set(spec.dilated_edges)
    for v in dv:
        if not base.has_vertex(v):
            raise CoverError(f"unknown dilated vertex {v!r}")
    for eid in de:
        e = base.edge(eid)
        if e.src not in dv or e.dst not in dv:
            raise CoverError(f"dilation closure violated: dilated edge {eid!r} has an undilated endpoint")
    needed = set(spec.signed_edges())
    given = set(spec.signs)
    if given - needed:
        raise CoverError(f"signs given for edges that take none: {sorted(given - needed)}")
    if needed - given:
        raise CoverError(f"missing signs for edges: {sorted(needed - given)}")
    for eid, s in spec.signs.items():
        if s not in (1, -1):
            raise CoverError(f"sign of {eid!r} must be +1 or -1, got {s!r}")

    vertex_map, vdeg = {}, {}
    for v in base.vertices:
        lifts = [v] if v in dv else [v + "+", v + "-"]
        for t in lifts:
            if t in vertex_map:
                raise CoverError(f"lifted vertex id {t!r} collides; rename base vertices")
            vertex_map[t] = v
            vdeg[t] = 2 if v in dv else 1

    def lift(v: str, sheet: str) -> str:
        return v if v in dv else v + sheet

    edges, edge_map, edeg = [], {}, {}
    for e in base.edges:
        if e.id in de:
            pieces = [(e.id, e.src, e.dst, e.length / 2, 2)]
        else:
            flip = spec.signs.get(e.id, 1) == -1
            pieces = [(e.id + "+", lift(e.src, "+"), lift(e.dst, "-" if flip else "+"), e.length, 1),
                      (e.id + "-", lift(e.src, "-"), lift(e.dst, "+" if flip else "-"), e.length, 1)]
        for tid, s, t, length, d in pieces:
            if tid in edge_map:
                raise CoverError(f"lifted edge id {tid!r} collides; rename base edges")
            edges.append(Edge(tid, s, t, length))
            edge_map[tid] = e.id
            edeg[tid] = d
    total = MetricGraph(vertex_map, edges)
    return DoubleCover(base, total, vertex_map, edge_map, vdeg, edeg, {t: 1 for t in edge_map})


# -- statistics ----------------------------------------------------------------

@dataclass(frozen=True)
class DilationStats:
    g_base: int
    g_total: int
    h: int
    m_d: int
    n_d: int
    d: int
    classification: str
    A: int | None = None
    B: int | None = None
    C: int | None = None

    def as_dict(self) -> dict:
        out = {"g_base": self.g_base, "g_total": self.g_total, "h": self.h,
               "m_d": self.m_d, "n_d": self.n_d, "d": self.d}
        if self.A is not None:
            out.update(A=self.A, B=self.B, C=self.C)
        out["class"] = self.classification
        return out


def dilation_stats(c: DoubleCover) -> DilationStats:
    g_base, g_total = genus(c.base), genus(c.total)
    sub = c.dilation_subgraph()
    m_d = len(c.dilated_edges)
    n_d = len(c.dilated_vertices)
    d = len(connected_components(sub)) if sub is not None else 0
    stats = dict(g_base=g_base, g_total=g_total, h=g_total - g_base, m_d=m_d, n_d=n_d, d=d,
                 classification=c.classification())
    if n_d:
        stats.update(A=g_base - m_d + n_d - d, B=d - 1, C=m_d - n_d + d)
    return DilationStats(**stats)


# -- deck involution -----------------------------------------------------------

@dataclass(frozen=True)
class DeckInvolution:
    """The nontrivial deck transformation; ``edge_sign`` is +1 when orientation is kept."""

    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    edge_sign: Mapping[str, int]

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.vertex_map.items()) and all(k == v for k, v in self.edge_map.items())


def involution(c: DoubleCover) -> DeckInvolution:
    vmap, emap, esign = {}, {}, {}
    for v in c.base.vertices:
        pre = c.vertex_preimages(v)
        if len(pre) == 1:
            vmap[pre[0]] = pre[0]
        else:
            vmap[pre[0]], vmap[pre[1]] = pre[1], pre[0]
    for e in c.base.edge_ids:
        pre = c.edge_preimages(e)
        if len(pre) == 1:
            emap[pre[0]] = pre[0]
            esign[pre[0]] = 1
        else:
            a, b = pre
            emap[a], emap[b] = b, a
            esign[a] = esign[b] = c.sign(a) * c.sign(b)
    return DeckInvolution(vmap, emap, esign)


# -- contraction, deletion, resolution ------------------------------------------

def _rename_vertices(g: MetricGraph, names: Mapping[str, str]) -> MetricGraph:
    edges = [Edge(e.id, names.get(e.src, e.src), names.get(e.dst, e.dst), e.length) for e in g.edges]
    return MetricGraph([names.get(v, v) for v in g.vertices], edges)


def contract_cover(c: DoubleCover, edges: Iterable[str]) -> DoubleCover:
    """Contract a subgraph of the base (given by its edges) and its preimage.

    Each component of the preimage becomes one vertex whose degree is the
    global degree of the cover on that component. A component covering its
    image twice is named after the image vertex when that id is free.
    """
    s = sorted(set(edges))
    for eid in s:
        if not c.base.has_edge(eid):
            raise CoverError(f"cannot contract unknown base edge {eid!r}")
    pre = [te for e in s for te in c.edge_preimages(e)]
    new_base, bvmap, _ = contract_edges(c.base, s)
    new_total, tvmap, _ = contract_edges(c.total, pre)

    members: dict[str, list[str]] = {}
    for tv, rep in tvmap.items():
        members.setdefault(rep, []).append(tv)
    degree: dict[str, int] = {}
    image: dict[str, str] = {}
    for rep, tvs in members.items():
        some_base = c.vertex_map[tvs[0]]
        degree[rep] = sum(c.vertex_degree[t] for t in tvs if c.vertex_map[t] == some_base)
        image[rep] = bvmap[some_base]

    rename = {}
    taken = set(new_total.vertices)
    for rep, tvs in members.items():
        target = image[rep]
        if len(tvs) > 1 and degree[rep] == 2 and target != rep and target not in taken:
            rename[rep] = target
            taken.add(target)
    new_total = _rename_vertices(new_total, rename)
    vertex_map = {rename.get(rep, rep): image[rep] for rep in members}
    vdeg = {rename.get(rep, rep): degree[rep] for rep in members}
    kept = set(new_total.edge_ids)
    return DoubleCover(new_base, new_total, vertex_map,
                       {te: c.edge_map[te] for te in kept},
                       vdeg, {te: c.edge_degree[te] for te in kept},
                       {te: c.sign(te) for te in kept})


def delete_cover_edges(c: DoubleCover, edges: Iterable[str]) -> DoubleCover:
    """Remove base edges and all their lifts."""
    s = sorted(set(edges))
    pre = [te for e in s for te in c.edge_preimages(e)]
    new_base = delete_edges(c.base, s)
    new_total = delete_edges(c.total, pre)
    kept = set(new_total.edge_ids)
    return DoubleCover(new_base, new_total, dict(c.vertex_map),
                       {te: c.edge_map[te] for te in kept}, dict(c.vertex_degree),
                       {te: c.edge_degree[te] for te in kept}, {te: c.sign(te) for te in kept})


def default_split(c: DoubleCover, v: str) -> dict[HalfEdge, str]:
    """For each base half-edge at ``v``, send its first lift to ``+`` and the other to ``-``."""
    (tv,) = c.vertex_preimages(v)
    by_image: dict[HalfEdge, list[HalfEdge]] = {}
    for th in c.total.tangent(tv):
        by_image.setdefault(c.half_edge_image(th), []).append(th)
    split = {}
    for h in sorted(by_image):
        first, second = sorted(by_image[h])
        split[first], split[second] = "+", "-"
    return split


def resolve_dilated_vertex(c: DoubleCover, v: str, loop_length=1,
                           split: Mapping[HalfEdge, str] | None = None,
                           loop_id: str | None = None) -> DoubleCover:
    """Undilate ``v`` by attaching a base loop whose lifts join the two new sheets."""
    if v not in c.dilated_vertices:
        raise CoverError(f"vertex {v!r} is not dilated")
    (tv,) = c.vertex_preimages(v)
    if any(c.edge_degree[th[0]] == 2 for th in c.total.tangent(tv)):
        raise CoverError(f"vertex {v!r} has incident dilated edges")
    split = dict(split) if split is not None else default_split(c, v)
    by_image: dict[HalfEdge, set[str]] = {}
    for th in c.total.tangent(tv):
        side = split.get(th)
        if side not in ("+", "-"):
            raise CoverError(f"split does not assign half-edge {th} to '+' or '-'")
        by_image.setdefault(c.half_edge_image(th), set()).add(side)
    if any(sides != {"+", "-"} for sides in by_image.values()):
        raise CoverError("split must send the two lifts of each base half-edge to opposite sheets")

    if loop_id is None:
        loop_id, k = f"{v}_loop", 1
        while c.base.has_edge(loop_id) or c.total.has_edge(loop_id + "+") or c.total.has_edge(loop_id + "-"):
            k += 1
            loop_id = f"{v}_loop{k}"
    plus, minus = tv + "+", tv + "-"
    for name in (plus, minus):
        if c.total.has_vertex(name):
            raise CoverError(f"vertex id {name!r} already used")
    length = Fraction(loop_length)
    sheet = {"+": plus, "-": minus}

    base = MetricGraph(c.base.vertices, list(c.base.edges) + [Edge(loop_id, v, v, length)])
    t_edges = []
    for e in c.total.edges:
        src = sheet[split[(e.id, 0)]] if e.src == tv else e.src
        dst = sheet[split[(e.id, 1)]] if e.dst == tv else e.dst
        t_edges.append(Edge(e.id, src, dst, e.length))
    t_edges += [Edge(loop_id + "+", plus, minus, length), Edge(loop_id + "-", minus, plus, length)]
    vertices = [x for x in c.total.vertices if x != tv] + [plus, minus]
    total = MetricGraph(vertices, t_edges)

    vertex_map = {x: c.vertex_map[x] for x in c.total.vertices if x != tv}
    vertex_map[plus] = vertex_map[minus] = v
    vdeg = {x: c.vertex_degree[x] for x in vertex_map if x not in (plus, minus)}
    vdeg[plus] = vdeg[minus] = 1
    edge_map = dict(c.edge_map)
    edge_map[loop_id + "+"] = edge_map[loop_id + "-"] = loop_id
    edeg = dict(c.edge_degree)
    edeg[loop_id + "+"] = edeg[loop_id + "-"] = 1
    signs = {te: c.sign(te) for te in c.total.edge_ids}
    signs[loop_id + "+"] = signs[loop_id + "-"] = 1
    return DoubleCover(base, total, vertex_map, edge_map, vdeg, edeg, signs)


def restrict(c: DoubleCover, vertices: Iterable[str]) -> DoubleCover:
    """Cover restricted to the base subgraph induced on ``vertices``."""
    sub = induced_subgraph(c.base, vertices)
    tv = [t for t in c.total.vertices if c.vertex_map[t] in set(sub.vertices)]
    tsub = induced_subgraph(c.total, tv)
    return DoubleCover(sub, tsub, {t: c.vertex_map[t] for t in tsub.vertices},
                       {t: c.edge_map[t] for t in tsub.edge_ids},
                       {t: c.vertex_degree[t] for t in tsub.vertices},
                       {t: c.edge_degree[t] for t in tsub.edge_ids},
                       {t: c.sign(t) for t in tsub.edge_ids})
