from __future__ import annotations

from fractions import Fraction

import pytest

from prymvol import catalog
from prymvol.cover import VoltageSpec, build_from_voltage, dilation_stats
from prymvol.errors import CoverError, GraphError, InapplicableError
from prymvol.graph import MetricGraph
from prymvol.polynomial import MultiPoly
from prymvol.volumes import (
    Ogod,
    enumerate_ogods,
    enumerate_ogods_classified,
    jacobian_polynomial,
    jacobian_polynomial_dc,
    prym_polynomial,
    prym_volume,
    prym_volume_combinatorial,
    prym_volume_homology,
    prym_volume_kernel,
    route_agreement,
    verify_deformation_moves,
    verify_free_volume,
    verify_thm_a,
)

P = MultiPoly.parse
FIG1_OGODS = [Ogod(("e1", "e3", "e4"), 3), Ogod(("e1", "e3", "e5"), 2),
              Ogod(("e2", "e3", "e4"), 4), Ogod(("e2", "e3", "e5"), 3)]


class TestJacobian:
    def test_loop(self):
        assert jacobian_polynomial(catalog.circle()) == P("e")
        assert jacobian_polynomial_dc(catalog.circle()) == P("e")

    def test_theta(self):
        want = P("e1*e2 + e1*e3 + e2*e3")
        assert jacobian_polynomial(catalog.theta_graph()) == want
        assert jacobian_polynomial_dc(catalog.theta_graph()) == want

    def test_circle_value(self):
        assert jacobian_polynomial(catalog.circle(9)).eval({"e": 9}) == 9

    def test_k4_count(self):
        g = catalog.complete_graph(4)
        assert jacobian_polynomial_dc(g).eval({e: 1 for e in g.edge_ids}) == 16

    def test_shape(self):
        g = catalog.fig1_base()
        j = jacobian_polynomial(g)
        assert j.is_homogeneous() and j.degree() == 3 and set(j.coefficients()) == {1}

    def test_disconnected(self):
        g = MetricGraph(["a", "b"], [])
        with pytest.raises(GraphError):
            jacobian_polynomial(g)
        with pytest.raises(GraphError):
            jacobian_polynomial_dc(g)

    def test_total_in_base_variables(self):
        c = catalog.fully_dilated_cover(catalog.circle())
        assert jacobian_polynomial(c.total, c.length_variables()) == MultiPoly.var("e", Fraction(1, 2))


class TestOgods:
    def test_five_vertex(self):
        c = catalog.fig1_cover()
        assert enumerate_ogods(c) == FIG1_OGODS
        assert enumerate_ogods_classified(c) == FIG1_OGODS

    def test_dilated_circle(self):
        assert enumerate_ogods(catalog.dilated_circle()) == [Ogod(("e",), 1)]

    def test_disc_left(self):
        assert enumerate_ogods(catalog.disc_left_cover()) == [Ogod(("e",), 2), Ogod(("f",), 1)]

    def test_free_theta_matches_genus_one_definition(self):
        c = catalog.free_theta_cover(signs=(1, 1, -1))
        # removing e3 leaves the even cycle e1 - e2, whose preimage splits
        assert enumerate_ogods(c) == [Ogod(("e1",), 1), Ogod(("e2",), 1)]
        assert enumerate_ogods_classified(c) == enumerate_ogods(c)

    def test_rank_bounds(self, campaign):
        for c in campaign[:80]:
            h = dilation_stats(c).h
            dil = set(c.dilated_edges)
            for o in enumerate_ogods(c):
                assert not dil & set(o.edges)
                if h:
                    assert 1 <= o.rank <= h + 1

    def test_disconnected_total_refused(self):
        with pytest.raises(CoverError, match="total graph disconnected"):
            enumerate_ogods(catalog.free_circle_cover(1))


class TestPrym:
    def test_five_vertex_polynomial(self):
        assert prym_polynomial(catalog.fig1_cover()) == P("16*e1*e3*e4 + 4*e1*e3*e5 + 64*e2*e3*e4 + 16*e2*e3*e5")

    def test_zero_dimensional(self):
        assert prym_polynomial(catalog.fully_dilated_cover(catalog.theta_graph())) == 1
        assert prym_polynomial(catalog.free_circle_cover(-1)) == 1

    def test_five_vertex_routes(self):
        c = catalog.fig1_cover()
        want = P("8*e1*e3*e4 + 2*e1*e3*e5 + 32*e2*e3*e4 + 8*e2*e3*e5")
        for method in ("combinatorial", "homology", "kernel"):
            assert prym_volume(c, method).value == want

    def test_disc(self):
        assert prym_volume_combinatorial(catalog.disc_left_cover()) == P("4*e + f")
        for route in (prym_volume_combinatorial, prym_volume_homology, prym_volume_kernel):
            assert route(catalog.disc_right_cover()) == P("2*e")

    def test_dilated_circle_routes(self):
        c = catalog.dilated_circle()
        assert prym_volume_homology(c) == P("e")
        assert prym_volume_kernel(c) == P("e")

    def test_all_vertices_dilated(self):
        c = catalog.all_vertices_dilated_cover(catalog.complete_graph(4))
        assert prym_volume_combinatorial(c) == MultiPoly.monomial({e: 1 for e in c.base.edge_ids}, 8)

    def test_kernel_refuses_free(self):
        with pytest.raises(InapplicableError, match="dilated covers only"):
            prym_volume_kernel(catalog.free_theta_cover())

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            prym_volume(catalog.fig1_cover(), "magic")

    def test_report_json(self):
        r = prym_volume(catalog.disc_right_cover())
        assert r.to_json() == {"method": "combinatorial", "value": [["2", {"e": 1}]],
                               "stats": {"m_d": 0, "n_d": 2, "d": 2, "h": 1}}

    def test_d_equal_one_matches_free_shape(self):
        # with a single dilation component the prefactor 2^(1-d) is 1, as in the free formula
        c = catalog.disc_left_cover()
        assert dilation_stats(c).d == 1
        assert prym_volume_combinatorial(c) == prym_polynomial(c)

    def test_lengths_do_not_matter_symbolically(self):
        a = catalog.fig1_cover()
        b = catalog.fig1_cover({"e1": "3/2", "f2": 7})
        assert prym_volume_homology(a) == prym_volume_homology(b)


class TestIdentities:
    def test_volume_ratio_five_vertex(self):
        r = verify_thm_a(catalog.fig1_cover())
        assert r.status == "pass" and r.detail == "factor 1/4"

    def test_volume_ratio_fully_dilated(self):
        r = verify_thm_a(catalog.fully_dilated_cover(catalog.complete_graph(4)))
        assert r.status == "pass" and r.detail == "factor 1/8"

    def test_volume_ratio_free_theta(self):
        r = verify_thm_a(catalog.free_theta_cover())
        assert r.status == "pass" and r.detail == "factor 2"

    def test_free_volume(self):
        assert verify_free_volume(catalog.free_theta_cover()).status == "pass"
        assert verify_free_volume(catalog.fig1_cover()).status == "skipped"

    def test_route_agreement(self):
        assert route_agreement(catalog.fig1_cover()).status == "pass"

    def test_moves_five_vertex(self):
        results = {r.name: r.status for r in verify_deformation_moves(catalog.fig1_cover())}
        assert results["decontr2"] == "pass"
        assert all(s == "pass" for s in results.values())

    def test_moves_disc(self):
        results = {r.name: r for r in verify_deformation_moves(catalog.disc_left_cover())}
        assert results["discontinuity"].status == "pass"
        assert "limit 4*e" in results["discontinuity"].detail
        assert "contracted 2*e" in results["discontinuity"].detail
        assert results["decontr"].status == "skipped"

    def test_moves_free_skips(self):
        results = {r.name: r.status for r in verify_deformation_moves(catalog.free_theta_cover())}
        assert results["resolve"] == "skipped" and results["decontr"] == "skipped"

    def test_moves_bridge_and_loop_branches(self):
        base = MetricGraph(["a", "b"], [("d", "a", "b"), ("l", "a", "a"), ("x", "b", "b")])
        bridge = build_from_voltage(VoltageSpec(base, frozenset({"a", "b"}), frozenset({"d"}), {}))
        names = {r.name: r.status for r in verify_deformation_moves(bridge)}
        assert names["decontr4"] == "pass"
        loop = build_from_voltage(VoltageSpec(base, frozenset({"a", "b"}), frozenset({"l", "d"}), {}))
        names = {r.name: r.status for r in verify_deformation_moves(loop)}
        assert names["decontr4"] == "pass"
        loop_first = build_from_voltage(VoltageSpec(base, frozenset({"a"}), frozenset({"l"}), {"x": -1}))
        names = {r.name: r.status for r in verify_deformation_moves(loop_first)}
        assert names["decontr3"] == "pass"

    def test_moves_bridge_of_dilation_subgraph(self):
        # d is a bridge of the dilation subgraph but not of the base
        base = MetricGraph(["a", "b"], [("d", "a", "b"), ("u", "a", "b")])
        c = build_from_voltage(VoltageSpec(base, frozenset({"a", "b"}), frozenset({"d"}), {}))
        names = {r.name: r.status for r in verify_deformation_moves(c)}
        assert names["decontr5"] == "pass" and names["decontr6-bridge"] == "pass"

    def test_moves_campaign(self, campaign):
        for c in campaign[:90]:
            assert all(r.ok for r in verify_deformation_moves(c))
