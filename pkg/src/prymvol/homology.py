"""Chains, cycle bases and the homology maps of a double cover.

Chains are sparse integer vectors over the oriented edges of a graph; the
graph is always passed explicitly. Homology maps are expressed as integer
matrices in fundamental-cycle bases, where coordinates of a cycle are just its
coefficients on the non-tree edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

import numpy as np

from . import lattice
from .cover import DoubleCover, dilation_stats
from .errors import GraphError, PrymError
from .graph import MetricGraph, is_connected, spanning_tree_edges
from .polynomial import MultiPoly, det as poly_det


class Chain:
    """Immutable integer 1-chain ``sum(coeff * edge)``; zero entries are dropped."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[str, int] | None = None):
        self._coeffs = {e: int(c) for e, c in sorted((coeffs or {}).items()) if c}

    @classmethod
    def edge(cls, eid: str, coeff: int = 1) -> "Chain":
        return cls({eid: coeff})

    @property
    def coeffs(self) -> dict[str, int]:
        return dict(self._coeffs)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(self._coeffs)

    def __getitem__(self, eid: str) -> int:
        return self._coeffs.get(eid, 0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other: "Chain") -> "Chain":
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return Chain(out)

    def __neg__(self) -> "Chain":
        return Chain({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, k: int) -> "Chain":
        return Chain({e: k * c for e, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Chain) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(self._coeffs.items()))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "Chain(0)"
        return "Chain(" + " ".join(f"{c:+d}*{e}" for e, c in self._coeffs.items()) + ")"

    @staticmethod
    def combine(chains: Iterable["Chain"], coeffs: Iterable[int]) -> "Chain":
        out: dict[str, int] = {}
        for ch, k in zip(chains, coeffs):
            for e, c in ch._coeffs.items():
                out[e] = out.get(e, 0) + int(k) * c
        return Chain(out)


def boundary(g: MetricGraph, ch: Chain) -> dict[str, int]:
    """``sum n_e (t(e) - s(e))`` as a sparse vertex vector."""
    out: dict[str, int] = {}
    for eid, c in ch.coeffs.items():
        e = g.edge(eid)
        out[e.dst] = out.get(e.dst, 0) + c
        out[e.src] = out.get(e.src, 0) - c
    return {v: c for v, c in sorted(out.items()) if c}


def is_cycle(g: MetricGraph, ch: Chain) -> bool:
    return not boundary(g, ch)


@dataclass(frozen=True)
class CycleBasis:
    """Fundamental cycles of the lexicographically first spanning tree.

    ``cycles[i]`` is the cycle closed up by ``chords[i]``, with coefficient +1
    on that chord.
    """

    graph: MetricGraph
    tree: tuple[str, ...]
    chords: tuple[str, ...]
    cycles: tuple[Chain, ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    def coordinates(self, ch: Chain) -> list[int]:
        """Coefficients of a cycle in this basis; raises if ``ch`` is not a cycle."""
        coords = [ch[e] for e in self.chords]
        if Chain.combine(self.cycles, coords) != ch:
            raise PrymError(f"{ch!r} is not a cycle of this graph")
        return coords

    def matrix(self) -> np.ndarray:
        """Edge-by-cycle coefficient matrix (rows in edge order)."""
        edges = self.graph.edge_ids
        return lattice.int_matrix([[cyc[e] for cyc in self.cycles] for e in edges],
                                  (len(edges), len(self.cycles)))


def _tree_path(g: MetricGraph, tree: Iterable[str], start: str, goal: str) -> Chain:
    """Oriented path from ``start`` to ``goal`` inside the tree."""
    adj: dict[str, list[tuple[str, str, int]]] = {v: [] for v in g.vertices}
    for eid in tree:
        e = g.edge(eid)
        adj[e.src].append((e.dst, eid, 1))
        adj[e.dst].append((e.src, eid, -1))
    prev: dict[str, tuple[str, str, int] | None] = {start: None}
    queue = [start]
    for v in queue:
        if v == goal:
            break
        for w, eid, s in adj[v]:
            if w not in prev:
                prev[w] = (v, eid, s)
                queue.append(w)
    coeffs: dict[str, int] = {}
    v = goal
    while prev[v] is not None:
        u, eid, s = prev[v]
        coeffs[eid] = coeffs.get(eid, 0) + s
        v = u
    return Chain(coeffs)


def cycle_basis(g: MetricGraph) -> CycleBasis:
    if not is_connected(g):
        raise GraphError("graph not connected")
    tree = spanning_tree_edges(g)
    in_tree = set(tree)
    chords, cycles = [], []
    for e in g.edges:
        if e.id in in_tree:
            continue
        chords.append(e.id)
        cycles.append(Chain.edge(e.id) + _tree_path(g, tree, e.dst, e.src))
    return CycleBasis(g, tree, tuple(chords), tuple(cycles))


# -- maps induced by a cover ----------------------------------------------------

def pushforward(c: DoubleCover, ch: Chain) -> Chain:
    """Chain on the total graph -> chain on the base (``e~ -> sign * pi(e~)``)."""
    out: dict[str, int] = {}
    for te, k in ch.coeffs.items():
        e = c.edge_map[te]
        out[e] = out.get(e, 0) + c.sign(te) * k
    return Chain(out)


def pullback(c: DoubleCover, ch: Chain) -> Chain:
    """Dilated ``e -> 2 e~``; undilated ``e -> e~+ + e~-`` (orientation-corrected)."""
    out: dict[str, int] = {}
    for e, k in ch.coeffs.items():
        for te in c.edge_preimages(e):
            out[te] = out.get(te, 0) + c.sign(te) * c.edge_degree[te] * k
    return Chain(out)


def involution_push(c: DoubleCover, ch: Chain) -> Chain:
    """Chain map of the deck involution."""
    out: dict[str, int] = {}
    for te, k in ch.coeffs.items():
        pre = c.edge_preimages(c.edge_map[te])
        if len(pre) == 1:
            out[te] = out.get(te, 0) + k
        else:
            other = pre[1] if pre[0] == te else pre[0]
            out[other] = out.get(other, 0) + c.sign(te) * c.sign(other) * k
    return Chain(out)


# -- edge-length pairing ---------------------------------------------------------

Variables = Mapping[str, tuple[str, Fraction]]


def edge_length_pairing(g: MetricGraph, a: Chain, b: Chain, symbolic: bool = False,
                        variables: Variables | None = None):
    """``sum a_e b_e l(e)``.

    In symbolic mode edge ``e`` contributes ``factor * x_var`` where
    ``variables[e] = (var, factor)``; the default is ``(e, 1)``. For total
    graphs pass :meth:`DoubleCover.length_variables` so everything is written
    in base edge variables.
    """
    common = set(a.support) & set(b.support)
    if not symbolic:
        return sum((a[e] * b[e] * g.length(e) for e in common), Fraction(0))
    terms: dict[str, Fraction] = {}
    for e in common:
        var, factor = variables[e] if variables is not None else (e, Fraction(1))
        terms[var] = terms.get(var, Fraction(0)) + a[e] * b[e] * factor
    out = MultiPoly.zero()
    for var in sorted(terms):
        if terms[var]:
            out = out + MultiPoly.var(var, terms[var])
    return out


def gram_matrix(g: MetricGraph, cycles, symbolic: bool = False, variables: Variables | None = None) -> list[list]:
    cycles = list(cycles)
    n = len(cycles)
    m = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = edge_length_pairing(g, cycles[i], cycles[j], symbolic, variables)
    return m


def _det_fraction(m: list[list[Fraction]]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            out = -out
        out *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return out


def gram_det(g: MetricGraph, basis, symbolic: bool = False, variables: Variables | None = None):
    """Gram determinant of a family of cycles under the edge-length pairing."""
    m = gram_matrix(g, basis, symbolic, variables)
    if not m:
        return MultiPoly.constant(1) if symbolic else Fraction(1)
    return poly_det(m) if symbolic else _det_fraction(m)


def matrix_of(fn: Callable[[Chain], Chain], domain: Iterable[Chain], codomain: CycleBasis) -> np.ndarray:
    """Integer matrix ``M`` with ``fn(domain_i) = sum_j M[j, i] codomain_j``."""
    domain = list(domain)
    cols = [codomain.coordinates(fn(ch)) for ch in domain]
    return lattice.int_matrix([[cols[i][j] for i in range(len(domain))] for j in range(len(codomain))],
                              (len(codomain), len(domain)))


# -- assembled homology data -------------------------------------------------------

@dataclass(frozen=True)
class HomologyMaps:
    base_basis: CycleBasis
    total_basis: CycleBasis
    push: np.ndarray      # g x g~
    pull: np.ndarray      # g~ x g
    iota: np.ndarray      # g~ x g~


def homology_maps(c: DoubleCover) -> HomologyMaps:
    if not is_connected(c.total):
        raise PrymError("total graph disconnected")
    bb, tb = cycle_basis(c.base), cycle_basis(c.total)
    return HomologyMaps(
        bb, tb,
        matrix_of(lambda ch: pushforward(c, ch), tb, bb),
        matrix_of(lambda ch: pullback(c, ch), bb, tb),
        matrix_of(lambda ch: involution_push(c, ch), tb, tb),
    )


def pushforward_kernel(c: DoubleCover, maps: HomologyMaps | None = None) -> list[Chain]:
    """A Z-basis of ``Ker(pi_*)`` inside ``H_1`` of the total graph, as chains."""
    maps = maps or homology_maps(c)
    k = lattice.kernel_basis(maps.push)
    return [Chain.combine(maps.total_basis.cycles, [int(x) for x in k[:, j]]) for j in range(k.shape[1])]


def polarization_type(c: DoubleCover, maps: HomologyMaps | None = None) -> list[int]:
    """Smith invariants of ``Ker(pi_*) -> (coker pi^*)^tf`` induced by the identity of ``H_1``.

    For a dilated cover this is ``(1,)*B + (2,)*A``.
    """
    maps = maps or homology_maps(c)
    g, gt = maps.pull.shape[1], maps.pull.shape[0]
    if gt == g:
        return []
    u = lattice.snf(maps.pull).u
    proj = u[g:, :]
    k = lattice.kernel_basis(maps.push)
    return lattice.snf(proj.dot(k)).diagonal


def _rank_of(m: np.ndarray) -> int:
    return lattice.rank(m)


def check_homology_identities(c: DoubleCover) -> dict[str, bool]:
    """Matrix- and chain-level checks of the push/pull/involution relations."""
    maps = homology_maps(c)
    g, gt = maps.pull.shape[1], maps.pull.shape[0]
    ident_b, ident_t = lattice.identity(g), lattice.identity(gt)
    variables = c.length_variables()
    out: dict[str, bool] = {}
    out["push_pull"] = bool((maps.push.dot(maps.pull) == 2 * ident_b).all()) if g else True
    out["pull_push"] = bool((maps.pull.dot(maps.push) == ident_t + maps.iota).all()) if gt else True
    out["iota_squared"] = bool((maps.iota.dot(maps.iota) == ident_t).all()) if gt else True

    edges_ok = True
    for te in c.total.edge_ids:
        ch = Chain.edge(te)
        edges_ok &= pullback(c, pushforward(c, ch)) == ch + involution_push(c, ch)
        edges_ok &= pushforward(c, involution_push(c, ch)) == pushforward(c, ch)
    for e in c.base.edge_ids:
        edges_ok &= pushforward(c, pullback(c, Chain.edge(e))) == Chain.edge(e, 2)
    out["chain_level"] = bool(edges_ok)

    tcyc = maps.total_basis.cycles
    inv = [involution_push(c, a) for a in tcyc]
    out["pairing_invariance"] = all(
        edge_length_pairing(c.total, tcyc[i], tcyc[j], True, variables)
        == edge_length_pairing(c.total, inv[i], inv[j], True, variables)
        for i in range(gt) for j in range(i, gt))
    bcyc = maps.base_basis.cycles
    pulled = [pullback(c, b) for b in bcyc]
    out["pullback_isometry"] = all(
        edge_length_pairing(c.total, pulled[i], pulled[j], True, variables)
        == edge_length_pairing(c.base, bcyc[i], bcyc[j], True) * 2
        for i in range(g) for j in range(i, g))

    stats = dilation_stats(c)
    out["kernel_rank"] = (gt - _rank_of(maps.push) if gt else 0) == stats.h
    if stats.A is not None:
        fixed = gt - _rank_of(maps.iota - ident_t) if gt else 0
        anti = gt - _rank_of(maps.iota + ident_t) if gt else 0
        out["fixed_rank"] = fixed == stats.A + stats.C
        out["anti_rank"] = anti == stats.A + stats.B
        out["polarization_type"] = polarization_type(c, maps) == [1] * stats.B + [2] * stats.A
    return out
