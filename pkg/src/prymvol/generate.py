"""Seeded random base graphs and double covers at desk scale."""

from __future__ import annotations

import random
from fractions import Fraction

from .cover import DoubleCover, VoltageSpec, build_from_voltage
from .errors import GenerationError
from .graph import Edge, MetricGraph, is_connected

MAX_VERTICES = 10
MAX_EDGES = 14
MODES = ("free", "edge-free", "general")


def _length(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 5), rng.randint(1, 3))


def check_parameters(n_vertices: int, n_edges: int, mode: str = "general") -> None:
    if mode not in MODES:
        raise GenerationError(f"unknown mode {mode!r}; choose from {', '.join(MODES)}")
    if not 1 <= n_vertices <= MAX_VERTICES:
        raise GenerationError(f"vertex count must lie in [1, {MAX_VERTICES}]")
    if not 0 <= n_edges <= MAX_EDGES:
        raise GenerationError(f"edge count must lie in [0, {MAX_EDGES}]")
    if n_edges < n_vertices - 1:
        raise GenerationError("a connected graph needs at least vertices - 1 edges")
    if mode == "free" and n_edges < n_vertices:
        raise GenerationError("a tree has no connected free double cover; need edges >= vertices")
    if mode == "general" and n_edges == 0:
        raise GenerationError("general mode dilates an edge; need at least one edge")


def random_graph(rng: random.Random, n_vertices: int, n_edges: int) -> MetricGraph:
    """Connected multigraph: a random spanning tree plus random extra edges (loops allowed)."""
    if n_edges < n_vertices - 1 or n_vertices < 1:
        raise GenerationError("infeasible graph size")
    vertices = [f"v{i}" for i in range(1, n_vertices + 1)]
    pairs = []
    for i in range(1, n_vertices):
        pairs.append((vertices[rng.randrange(i)], vertices[i]))
    while len(pairs) < n_edges:
        pairs.append((rng.choice(vertices), rng.choice(vertices)))
    rng.shuffle(pairs)
    width = len(str(n_edges))
    edges = [Edge(f"e{k + 1:0{width}d}", a, b, _length(rng)) for k, (a, b) in enumerate(pairs)]
    g = MetricGraph(vertices, edges)
    assert is_connected(g)
    return g


def random_spec(rng: random.Random, base: MetricGraph, mode: str) -> VoltageSpec:
    dv: set[str] = set()
    de: set[str] = set()
    if mode == "edge-free":
        k = rng.randint(1, len(base.vertices))
        dv = set(rng.sample(list(base.vertices), k))
    elif mode == "general":
        first = rng.choice(base.edges)
        dv = {first.src, first.dst}
        dv |= {v for v in base.vertices if rng.random() < 0.3}
        de = {first.id} | {e.id for e in base.edges if e.src in dv and e.dst in dv and rng.random() < 0.4}
    spec = VoltageSpec(base, frozenset(dv), frozenset(de), {})
    signs = {e: rng.choice((1, -1)) for e in spec.signed_edges()}
    return VoltageSpec(base, frozenset(dv), frozenset(de), signs)


def random_cover(n_vertices: int, n_edges: int, mode: str = "general", seed: int = 0,
                 max_tries: int = 200) -> DoubleCover:
    """Connected valid cover of the requested class; identical output for identical arguments."""
    return random_cover_spec(n_vertices, n_edges, mode, seed, max_tries)[1]


def random_cover_spec(n_vertices: int, n_edges: int, mode: str = "general", seed: int = 0,
                      max_tries: int = 200) -> tuple[VoltageSpec, DoubleCover]:
    check_parameters(n_vertices, n_edges, mode)
    rng = random.Random(seed)
    base = random_graph(rng, n_vertices, n_edges)
    for _ in range(max_tries):
        spec = random_spec(rng, base, mode)
        cover = build_from_voltage(spec)
        if is_connected(cover.total):
            return spec, cover
    raise GenerationError("could not find a connected cover; try another seed")
