"""Jacobian and Prym volume polynomials.

Three routes compute the squared Prym volume of a double cover:

* ``combinatorial``: a weighted sum over odd genus one decompositions (ogods);
* ``homology``: the ratio of the total and base Jacobian Gram determinants;
* ``kernel``: the Gram determinant of a basis of ``Ker(pi_*)``, rescaled.

All polynomials are written in base edge variables; a dilated lift contributes
``x_e / 2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .cover import (
    DilationStats,
    DoubleCover,
    contract_cover,
    delete_cover_edges,
    dilation_stats,
    resolve_dilated_vertex,
    validate,
)
from .errors import CoverError, GraphError, InapplicableError
from .graph import (
    DisjointSet,
    MetricGraph,
    connected_components,
    contract_edges,
    delete_edges,
    genus,
    is_bridge,
    is_connected,
    spanning_tree_complements,
    spanning_tree_edges,
)
from .homology import cycle_basis, gram_det, pushforward_kernel
from .polynomial import MultiPoly, exact_div

Variables = Mapping[str, tuple[str, Fraction]]
METHODS = ("combinatorial", "homology", "kernel")


@dataclass(frozen=True, order=True)
class Ogod:
    edges: tuple[str, ...]
    rank: int

    def as_dict(self) -> dict:
        return {"edges": list(self.edges), "rank": self.rank}


@dataclass(frozen=True)
class VolumeReport:
    method: str
    value: MultiPoly
    stats: DilationStats

    def to_json(self) -> dict:
        s = self.stats
        return {"method": self.method, "value": self.value.to_json(),
                "stats": {"m_d": s.m_d, "n_d": s.n_d, "d": s.d, "h": s.h}}


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str          # "pass", "fail" or "skipped"
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def _check(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, "pass" if ok else "fail", detail)


def require_prym_ready(c: DoubleCover) -> None:
    """Raise :class:`CoverError` unless the cover is valid with connected total graph."""
    report = validate(c)
    if not report.ok:
        raise CoverError(str(report))


# -- Jacobian polynomials -------------------------------------------------------------

def _monomial(edges, variables: Variables | None) -> tuple[Fraction, dict[str, int]]:
    coeff, powers = Fraction(1), {}
    for e in edges:
        var, factor = variables[e] if variables is not None else (e, Fraction(1))
        coeff *= factor
        powers[var] = powers.get(var, 0) + 1
    return coeff, powers


def jacobian_polynomial(g: MetricGraph, variables: Variables | None = None) -> MultiPoly:
    """Sum over spanning-tree complements of the product of edge variables."""
    return MultiPoly.from_terms(_monomial(comp, variables) for comp in spanning_tree_complements(g))


def jacobian_polynomial_dc(g: MetricGraph, variables: Variables | None = None) -> MultiPoly:
    """Jacobian polynomial by loop/bridge/general deletion-contraction."""
    if not is_connected(g):
        raise GraphError("graph not connected")
    memo: dict[MetricGraph, MultiPoly] = {}

    def x(eid: str) -> MultiPoly:
        var, factor = variables[eid] if variables is not None else (eid, Fraction(1))
        return MultiPoly.var(var, factor)

    def rec(h: MetricGraph) -> MultiPoly:
        if not h.edge_ids:
            return MultiPoly.constant(1)
        if h in memo:
            return memo[h]
        eid = h.edge_ids[0]
        contracted = contract_edges(h, [eid])[0]
        if h.edge(eid).is_loop:
            out = x(eid) * rec(contracted)
        elif is_bridge(h, eid):
            out = rec(contracted)
        else:
            out = rec(contracted) + x(eid) * rec(delete_edges(h, [eid]))
        memo[h] = out
        return out

    return rec(g)


# -- ogods --------------------------------------------------------------------------------

def _preimage_partition(c: DoubleCover, removed: set[str]) -> DisjointSet:
    ds = DisjointSet(c.total.vertices)
    for te in c.total.edges:
        if c.edge_map[te.id] not in removed:
            ds.union(te.src, te.dst)
    return ds


def enumerate_ogods(c: DoubleCover) -> list[Ogod]:
    """All ogods by the defining test: every component of ``base - F`` has connected preimage."""
    require_prym_ready(c)
    h = dilation_stats(c).h
    out = []
    for subset in itertools.combinations(c.undilated_edges, h):
        removed = set(subset)
        rest = delete_edges(c.base, subset)
        tds = _preimage_partition(c, removed)
        comps = connected_components(rest)
        for comp in comps:
            roots = {tds.find(t) for v in comp.vertices for t in c.vertex_preimages(v)}
            if len(roots) != 1:
                break
        else:
            out.append(Ogod(tuple(subset), len(comps)))
    return out


def _odd_cycle_lift(c: DoubleCover, comp: MetricGraph) -> bool:
    """For a genus-one dilation-free component: does its cycle lift to a single closed path?

    Sheets are propagated along a spanning tree of the component by following
    actual total edges, then the lift of the chord is checked for a sheet swap.
    """
    tree = spanning_tree_edges(comp)
    chord = next(e for e in comp.edge_ids if e not in set(tree))
    root = comp.vertices[0]
    sheet = {root: c.vertex_preimages(root)[0]}
    adj: dict[str, list[str]] = {v: [] for v in comp.vertices}
    for eid in tree:
        e = comp.edge(eid)
        adj[e.src].append(eid)
        adj[e.dst].append(eid)
    stack = [root]
    while stack:
        v = stack.pop()
        for eid in adj[v]:
            e = comp.edge(eid)
            w = e.dst if e.src == v else e.src
            if w in sheet:
                continue
            sheet[w] = _walk(c, eid, sheet[v])
            stack.append(w)
    e = comp.edge(chord)
    return _walk(c, chord, sheet[e.src], from_end=0) != sheet[e.dst]


def _walk(c: DoubleCover, eid: str, start: str, from_end: int | None = None) -> str:
    """Endpoint reached by the lift of base edge ``eid`` that leaves total vertex ``start``."""
    for te in c.edge_preimages(eid):
        t = c.total.edge(te)
        ends = (t.src, t.dst)
        for k in (0, 1):
            image_end = k if c.sign(te) > 0 else 1 - k
            if ends[k] == start and (from_end is None or image_end == from_end):
                return ends[1 - k]
    raise CoverError(f"no lift of {eid!r} leaves {start!r}")


def enumerate_ogods_classified(c: DoubleCover) -> list[Ogod]:
    """Ogods via the structural classification of the components of ``base - F``.

    Each component must either contain exactly one component of the dilation
    subgraph and have the same genus as it, or be free of dilation, of genus
    one, with a cycle whose lift swaps sheets.
    """
    require_prym_ready(c)
    h = dilation_stats(c).h
    sub = c.dilation_subgraph()
    dil_parts = connected_components(sub) if sub is not None else []
    part_of = {v: i for i, part in enumerate(dil_parts) for v in part.vertices}
    part_genus = [genus(p) for p in dil_parts]
    out = []
    for subset in itertools.combinations(c.undilated_edges, h):
        comps = connected_components(delete_edges(c.base, subset))
        ok = True
        for comp in comps:
            parts = {part_of[v] for v in comp.vertices if v in part_of}
            if len(parts) == 1:
                ok = genus(comp) == part_genus[parts.pop()]
            elif not parts:
                ok = genus(comp) == 1 and _odd_cycle_lift(c, comp)
            else:
                ok = False
            if not ok:
                break
        if ok:
            out.append(Ogod(tuple(subset), len(comps)))
    return out


# -- Prym polynomial and volume routes ---------------------------------------------------

def prym_polynomial(c: DoubleCover, ogods: list[Ogod] | None = None) -> MultiPoly:
    """``sum over ogods F of 4^(r(F)-1) * prod_{e in F} x_e``."""
    ogods = enumerate_ogods(c) if ogods is None else ogods
    return MultiPoly.from_terms((4 ** (o.rank - 1), {e: 1 for e in o.edges}) for o in ogods)


def prym_volume_combinatorial(c: DoubleCover) -> MultiPoly:
    stats = dilation_stats(c)
    pr = prym_polynomial(c)
    if stats.classification == "free":
        return pr
    return pr.scale(Fraction(2) ** (1 - stats.d))


def total_jacobian_gram(c: DoubleCover) -> MultiPoly:
    return gram_det(c.total, cycle_basis(c.total), True, c.length_variables())


def base_jacobian_gram(c: DoubleCover) -> MultiPoly:
    return gram_det(c.base, cycle_basis(c.base), True)


def prym_volume_homology(c: DoubleCover) -> MultiPoly:
    require_prym_ready(c)
    stats = dilation_stats(c)
    ratio = exact_div(total_jacobian_gram(c), base_jacobian_gram(c))
    if stats.classification == "free":
        return ratio.scale(Fraction(1, 2))
    return ratio.scale(Fraction(2) ** (stats.m_d - stats.n_d + stats.d))


def prym_volume_kernel(c: DoubleCover) -> MultiPoly:
    require_prym_ready(c)
    stats = dilation_stats(c)
    if stats.classification == "free":
        raise InapplicableError("kernel route defined for dilated covers only; use homology route")
    kernel = pushforward_kernel(c)
    return gram_det(c.total, kernel, True, c.length_variables()).scale(Fraction(2) ** -stats.A)


_ROUTES = {
    "combinatorial": prym_volume_combinatorial,
    "homology": prym_volume_homology,
    "kernel": prym_volume_kernel,
}


def prym_volume(c: DoubleCover, method: str = "combinatorial") -> VolumeReport:
    if method not in _ROUTES:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    require_prym_ready(c)
    return VolumeReport(method, _ROUTES[method](c), dilation_stats(c))


# -- identity verifiers ------------------------------------------------------------------

def thm_a_factor(stats: DilationStats) -> Fraction:
    if stats.classification == "free":
        return Fraction(2)
    return Fraction(2) ** (1 - stats.m_d + stats.n_d - 2 * stats.d)


def verify_thm_a(c: DoubleCover) -> CheckResult:
    """``J(total) = 2^(1 - m_d + n_d - 2d) * Pr * J(base)`` (factor 2 for free covers)."""
    require_prym_ready(c)
    stats = dilation_stats(c)
    lhs = jacobian_polynomial(c.total, c.length_variables())
    rhs = (prym_polynomial(c) * jacobian_polynomial(c.base)).scale(thm_a_factor(stats))
    return _check("thm-a", lhs == rhs, f"factor {thm_a_factor(stats)}")


def _jac_or_zero(g: MetricGraph, variables: Variables | None = None) -> MultiPoly:
    """Jacobian polynomial, taken as 0 on a disconnected graph (no spanning trees)."""
    return jacobian_polynomial(g, variables) if is_connected(g) else MultiPoly.zero()


def _resolution_checks(c: DoubleCover, stats: DilationStats) -> list[CheckResult]:
    dil_edges = set(c.dilated_edges)
    candidates = [v for v in c.dilated_vertices
                  if not any(h[0] in dil_edges for h in c.base.tangent(v))]
    if not candidates:
        return [CheckResult("resolve", "skipped", "no dilated vertex without dilated edges")]
    v = candidates[0]
    r = resolve_dilated_vertex(c, v, 1)
    e = next(x for x in r.base.edge_ids if not c.base.has_edge(x))
    xe = MultiPoly.var(e)
    rs = dilation_stats(r)
    out = [_check("contr1", (rs.n_d, rs.d, rs.m_d) == (stats.n_d - 1, stats.d - 1, stats.m_d)
                  and rs.g_base == stats.g_base + 1 and rs.g_total == stats.g_total + 1,
                  f"resolved {v!r} with loop {e!r}")]
    out.append(_check("contr2", jacobian_polynomial(r.base) == xe * jacobian_polynomial(c.base)))
    lifts = r.edge_preimages(e)
    jt_new = jacobian_polynomial(r.total, r.length_variables())
    jt_old = jacobian_polynomial(c.total, c.length_variables())
    zero_graph = delete_edges(r.total, lifts)
    zero_vars = {k: val for k, val in r.length_variables().items() if k not in lifts}
    out.append(_check("contr3", jt_new == xe.scale(2) * jt_old + xe * xe * _jac_or_zero(zero_graph, zero_vars)))
    pr_new, pr_old = prym_polynomial(r), prym_polynomial(c)
    out.append(_check("contr4", pr_new.subs({e: 0}) == pr_old))
    back = contract_cover(r, [e])
    bs = dilation_stats(back)
    out.append(_check("resolve-roundtrip", validate(back).ok and bs == stats))
    return out


def _dilated_edge_checks(c: DoubleCover, stats: DilationStats) -> list[CheckResult]:
    if not c.dilated_edges:
        return [CheckResult("decontr", "skipped", "no dilated edge")]
    e = c.dilated_edges[0]
    (te,) = c.edge_preimages(e)
    xe = MultiPoly.var(e)
    half = xe.scale(Fraction(1, 2))
    ce = contract_cover(c, [e])
    cs = dilation_stats(ce)
    out = [_check("decontr1", cs.m_d == stats.m_d - 1 and cs.d == stats.d and validate(ce).ok, f"edge {e!r}")]
    pr = prym_polynomial(c)
    out.append(_check("decontr2", prym_polynomial(ce) == pr))
    jb, jt = jacobian_polynomial(c.base), jacobian_polynomial(c.total, c.length_variables())
    jb_c, jt_c = jacobian_polynomial(ce.base), jacobian_polynomial(ce.total, ce.length_variables())
    if c.base.edge(e).is_loop:
        out.append(_check("decontr3", jb == xe * jb_c and jt == half * jt_c and cs.n_d == stats.n_d))
    elif is_bridge(c.base, e):
        out.append(_check("decontr4", jb == jb_c and jt == jt_c and cs.n_d == stats.n_d - 1))
    else:
        de = delete_cover_edges(c, [e])
        ds = dilation_stats(de)
        jb_d = jacobian_polynomial(de.base)
        jt_d = jacobian_polynomial(de.total, de.length_variables())
        out.append(_check("decontr5", jb == jb_c + xe * jb_d and jt == jt_c + half * jt_d
                          and cs.n_d == stats.n_d - 1))
        out.append(_check("decontr6", ds.m_d == stats.m_d - 1 and ds.n_d == stats.n_d))
        sub = c.dilation_subgraph()
        if is_bridge(sub, e):
            out.append(_check("decontr6-bridge", ds.d == stats.d + 1 and prym_polynomial(de) == pr.scale(4)))
        else:
            out.append(_check("decontr6-nonbridge", ds.d == stats.d and prym_polynomial(de) == pr))
    return out


def _discontinuity_checks(c: DoubleCover, stats: DilationStats) -> list[CheckResult]:
    """Contracting an odd undilated loop: the volume halves relative to the limit when dilated."""
    dil_vertices = set(c.dilated_vertices)
    odd_loops = [e.id for e in c.base.edges
                 if e.is_loop and e.src not in dil_vertices
                 and all(not c.total.edge(te).is_loop for te in c.edge_preimages(e.id))]
    if not odd_loops:
        return [CheckResult("discontinuity", "skipped", "no odd undilated loop")]
    f = odd_loops[0]
    vol = prym_volume_combinatorial(c)
    limit = vol.subs({f: 0})
    contracted = contract_cover(c, [f])
    new = prym_volume_combinatorial(contracted)
    want = limit if stats.classification == "free" else limit.scale(Fraction(1, 2))
    return [_check("discontinuity", new == want, f"loop {f!r}: limit {limit}, contracted {new}")]


def verify_deformation_moves(c: DoubleCover) -> list[CheckResult]:
    """Check the relations used when resolving dilated vertices and contracting dilated edges."""
    require_prym_ready(c)
    stats = dilation_stats(c)
    out: list[CheckResult] = []
    if stats.classification == "free":
        out.append(CheckResult("resolve", "skipped", "cover has no dilated vertex"))
        out.append(CheckResult("decontr", "skipped", "no dilated edge"))
    else:
        out += _resolution_checks(c, stats)
        out += _dilated_edge_checks(c, stats)
    out += _discontinuity_checks(c, stats)
    return out


def route_agreement(c: DoubleCover) -> CheckResult:
    require_prym_ready(c)
    comb = prym_volume_combinatorial(c)
    hom = prym_volume_homology(c)
    ok = comb == hom
    detail = "combinatorial = homology"
    if not c.is_free:
        ok = ok and prym_volume_kernel(c) == comb
        detail += " = kernel"
    return _check("main", ok, detail)


def verify_cd(c: DoubleCover) -> CheckResult:
    ok = (jacobian_polynomial(c.base) == jacobian_polynomial_dc(c.base)
          and jacobian_polynomial(c.total, c.length_variables())
          == jacobian_polynomial_dc(c.total, c.length_variables()))
    return _check("cd", ok)


def verify_free_volume(c: DoubleCover) -> CheckResult:
    """Free covers: ``J(total) = 2 * Vol^2(Prym) * J(base)`` with the Gram-determinant volumes."""
    require_prym_ready(c)
    if not c.is_free:
        return CheckResult("free-volume", "skipped", "cover is not free")
    lhs = total_jacobian_gram(c)
    rhs = (prym_volume_combinatorial(c) * base_jacobian_gram(c)).scale(2)
    return _check("free-volume", lhs == rhs)


def verify_ogod_classification(c: DoubleCover) -> CheckResult:
    a, b = enumerate_ogods(c), enumerate_ogods_classified(c)
    return _check("ogod-classify", a == b, f"{len(a)} ogods")
