from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from prymvol import catalog, lattice
from prymvol.errors import GraphError, PrymError
from prymvol.graph import MetricGraph
from prymvol.homology import (
    Chain,
    boundary,
    check_homology_identities,
    cycle_basis,
    edge_length_pairing,
    gram_det,
    homology_maps,
    involution_push,
    matrix_of,
    polarization_type,
    pullback,
    pushforward,
    pushforward_kernel,
)
from prymvol.polynomial import MultiPoly


class TestChains:
    def test_arithmetic(self):
        a = Chain({"x": 1, "y": -2})
        assert a + Chain({"y": 2}) == Chain.edge("x")
        assert (a - a) == Chain() and not (a - a)
        assert 3 * a == Chain({"x": 3, "y": -6})

    def test_boundary(self):
        g = MetricGraph(["u", "v"], [("e", "u", "v"), ("l", "u", "u")])
        assert boundary(g, Chain.edge("l")) == {}
        assert boundary(g, Chain.edge("e")) == {"u": -1, "v": 1}


class TestCycleBasis:
    def test_loop(self):
        b = cycle_basis(catalog.circle())
        assert b.cycles == (Chain.edge("e"),)

    def test_theta(self):
        b = cycle_basis(catalog.theta_graph())
        assert len(b) == 2
        assert b.cycles == (Chain({"e2": 1, "e1": -1}), Chain({"e3": 1, "e1": -1}))
        for cyc in b:
            assert boundary(b.graph, cyc) == {}
        assert lattice.rank(b.matrix()) == 2

    def test_tree(self):
        g = MetricGraph(["a", "b"], [("e", "a", "b")])
        assert len(cycle_basis(g)) == 0

    def test_disconnected(self):
        with pytest.raises(GraphError):
            cycle_basis(MetricGraph(["a", "b"], []))

    def test_generated_bases_are_cycles(self, campaign):
        for c in campaign[:50]:
            b = cycle_basis(c.total)
            assert all(boundary(c.total, cyc) == {} for cyc in b)
            assert lattice.rank(b.matrix()) == len(b)

    def test_coordinates_reject_non_cycles(self):
        b = cycle_basis(catalog.theta_graph())
        with pytest.raises(PrymError):
            b.coordinates(Chain.edge("e1"))


class TestMaps:
    def test_push_examples(self):
        c = catalog.free_circle_cover(-1)
        assert pushforward(c, Chain({"e+": 1, "e-": 1})) == Chain.edge("e", 2)
        assert pushforward(c, Chain({"e+": 1, "e-": -1})) == Chain()
        d = catalog.fig1_cover()
        assert pushforward(d, Chain.edge("f1")) == Chain.edge("f1")

    def test_pull_examples(self):
        d = catalog.fig1_cover()
        assert pullback(d, Chain.edge("e3")) == Chain({"e3+": 1, "e3-": 1})
        assert pullback(d, Chain.edge("f2")) == Chain.edge("f2", 2)

    def test_involution_examples(self):
        d = catalog.fig1_cover()
        assert involution_push(d, Chain.edge("f1")) == Chain.edge("f1")
        assert involution_push(d, Chain.edge("e2+")) == Chain.edge("e2-")

    def test_identities_per_edge(self, campaign):
        for c in campaign[:80]:
            for te in c.total.edge_ids:
                ch = Chain.edge(te)
                assert pullback(c, pushforward(c, ch)) == ch + involution_push(c, ch)
                assert pushforward(c, involution_push(c, ch)) == pushforward(c, ch)
            for e in c.base.edge_ids:
                assert pushforward(c, pullback(c, Chain.edge(e))) == Chain.edge(e, 2)

    def test_matrices(self):
        c = catalog.fig1_cover()
        m = homology_maps(c)
        g, gt = 3, 6
        assert m.push.shape == (g, gt) and m.pull.shape == (gt, g)
        assert (m.iota.dot(m.iota) == lattice.identity(gt)).all()
        assert (m.push.dot(m.pull) == 2 * lattice.identity(g)).all()
        assert lattice.rank(m.push) == g

    def test_matrix_of_rejects_outside_span(self):
        b = cycle_basis(catalog.theta_graph())
        with pytest.raises(PrymError):
            matrix_of(lambda ch: Chain.edge("e1"), b.cycles, b)


class TestPairing:
    def test_loop(self):
        g = catalog.circle(7)
        assert edge_length_pairing(g, Chain.edge("e"), Chain.edge("e")) == 7

    def test_disjoint_support(self):
        g = catalog.fig1_base()
        assert edge_length_pairing(g, Chain.edge("e1"), Chain.edge("e5")) == 0

    def test_dilated_circle_antiinvariant(self):
        c = catalog.dilated_circle()
        a = Chain({"e+": 1, "e-": -1})
        assert edge_length_pairing(c.total, a, a, True, c.length_variables()) == MultiPoly.var("e", 2)

    def test_dilated_edges_contribute_half(self):
        c = catalog.fig1_cover()
        got = edge_length_pairing(c.total, Chain.edge("f1"), Chain.edge("f1"), True, c.length_variables())
        assert got == MultiPoly.var("f1", Fraction(1, 2))


class TestGram:
    def test_circle(self):
        assert gram_det(catalog.circle(5), cycle_basis(catalog.circle(5))) == 5

    def test_theta_symbolic(self):
        g = catalog.theta_graph()
        assert gram_det(g, cycle_basis(g), True) == MultiPoly.parse("e1*e2 + e1*e3 + e2*e3")

    def test_unimodular_change(self):
        g = catalog.complete_graph(4)
        cyc = list(cycle_basis(g).cycles)
        changed = [cyc[0] + cyc[1] * 2, cyc[1], cyc[2] - cyc[0]]
        assert gram_det(g, changed, True) == gram_det(g, cyc, True)

    def test_k4_value(self):
        g = catalog.complete_graph(4)
        assert gram_det(g, cycle_basis(g)) == 16


class TestKernelAndType:
    def test_dilated_circle_kernel(self):
        c = catalog.dilated_circle()
        k = pushforward_kernel(c)
        assert len(k) == 1
        assert k[0] in (Chain({"e+": 1, "e-": -1}), Chain({"e+": -1, "e-": 1}))

    def test_five_vertex_type(self):
        assert polarization_type(catalog.fig1_cover()) == [1, 2, 2]

    def test_identities_five_vertex(self):
        assert all(check_homology_identities(catalog.fig1_cover()).values())

    def test_disconnected_total_refused(self):
        with pytest.raises(PrymError):
            homology_maps(catalog.free_circle_cover(1))

    def test_eigenspace_ranks_on_campaign(self, campaign):
        for c in campaign:
            if c.is_free:
                continue
            checks = check_homology_identities(c)
            assert checks["fixed_rank"] and checks["anti_rank"] and checks["polarization_type"]
