"""Small named graphs and covers used by the tests, demos and docs."""

from __future__ import annotations

from .cover import DoubleCover, VoltageSpec, build_from_voltage, contract_cover
from .graph import MetricGraph


def circle(length=1, edge: str = "e", vertex: str = "v") -> MetricGraph:
    return MetricGraph([vertex], [(edge, vertex, vertex, length)])


def theta_graph(lengths=(1, 1, 1)) -> MetricGraph:
    """Two vertices ``p``, ``q`` joined by parallel edges ``e1``, ``e2``, ``e3``."""
    return MetricGraph(["p", "q"], [(f"e{i + 1}", "p", "q", ell) for i, ell in enumerate(lengths)])


def complete_graph(n: int) -> MetricGraph:
    vertices = [f"v{i}" for i in range(1, n + 1)]
    edges = [(f"e{i}{j}", f"v{i}", f"v{j}", 1) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return MetricGraph(vertices, edges)


def fig1_base(lengths: dict | None = None) -> MetricGraph:
    """Loop ``e1`` at ``v1``, bridge ``e2``, the double edge ``f1``/``f2``, edges ``e3``, ``e4``, loop ``e5``."""
    ell = {"e1": 1, "e2": 1, "f1": 1, "f2": 1, "e3": 1, "e4": 1, "e5": 1, **(lengths or {})}
    return MetricGraph(
        ["v1", "v2", "v3", "v4", "v5"],
        [("e1", "v1", "v1", ell["e1"]), ("e2", "v1", "v2", ell["e2"]),
         ("f1", "v2", "v3", ell["f1"]), ("f2", "v2", "v3", ell["f2"]),
         ("e3", "v3", "v4", ell["e3"]), ("e4", "v4", "v5", ell["e4"]),
         ("e5", "v5", "v5", ell["e5"])],
    )


def fig1_cover(lengths: dict | None = None) -> DoubleCover:
    """Dilated cover of genus 6 over genus 3: ``v2``, ``v3``, ``v4``, ``f1``, ``f2`` dilated, odd end loops."""
    spec = VoltageSpec(fig1_base(lengths), frozenset({"v2", "v3", "v4"}), frozenset({"f1", "f2"}),
                       {"e1": -1, "e5": -1})
    return build_from_voltage(spec)


def disc_left_cover(length_e=1, length_f=1) -> DoubleCover:
    """Dilated vertex ``v`` joined by ``e`` to ``u``, which carries an odd loop ``f``."""
    base = MetricGraph(["u", "v"], [("e", "v", "u", length_e), ("f", "u", "u", length_f)])
    return build_from_voltage(VoltageSpec(base, frozenset({"v"}), frozenset(), {"f": -1}))


def disc_right_cover(length_e=1) -> DoubleCover:
    """The left cover with the loop ``f`` contracted: two dilated vertices joined by ``e``."""
    return contract_cover(disc_left_cover(length_e), ["f"])


def dilated_circle(length=1) -> DoubleCover:
    """Undilated loop at a dilated vertex; the total graph is two loops at one vertex."""
    return build_from_voltage(VoltageSpec(circle(length), frozenset({"v"}), frozenset(), {}))


def free_circle_cover(sign: int = -1, length=1) -> DoubleCover:
    """Free cover of a circle; ``sign=-1`` is connected, ``sign=+1`` is two disjoint circles."""
    return build_from_voltage(VoltageSpec(circle(length), frozenset(), frozenset(), {"e": sign}))


def free_theta_cover(signs=(1, 1, -1), lengths=(1, 1, 1)) -> DoubleCover:
    base = theta_graph(lengths)
    return build_from_voltage(VoltageSpec(base, frozenset(), frozenset(),
                                          {f"e{i + 1}": s for i, s in enumerate(signs)}))


def fully_dilated_cover(base: MetricGraph) -> DoubleCover:
    """Every vertex and edge dilated: the total graph is the base with halved lengths."""
    return build_from_voltage(VoltageSpec(base, frozenset(base.vertices), frozenset(base.edge_ids), {}))


def all_vertices_dilated_cover(base: MetricGraph) -> DoubleCover:
    """Every vertex dilated and no edge dilated."""
    return build_from_voltage(VoltageSpec(base, frozenset(base.vertices), frozenset(), {}))
