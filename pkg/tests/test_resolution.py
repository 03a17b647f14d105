import random

import networkx as nx
import numpy as np
import pytest

from singzeta import _univariate as U
from singzeta.expr import parse
from singzeta.family import build_member, check_assumptions
from singzeta.poly import Polynomial, compose, constant
from singzeta.resolution import (
    DivisorNode,
    DualGraph,
    LauferError,
    build_dual_graph,
    chart_pullback,
    divisor_ledger,
    euler_e_q,
    graphs_isomorphic,
    is_negative_definite,
    laufer_report,
    load_catalog,
    self_intersections_and_laufer,
    sigma_star,
)

from conftest import Z1, Z2, Z3, golden_member, line_member


def distinct_torus_roots(poly, var):
    """Number of distinct nonzero roots of a polynomial in one chart variable."""
    dense = [0] * (poly.degree_in(var) + 1)
    for m, c in poly.items():
        dense[m[var]] += c
    dense = U.trim(dense)
    while dense and dense[0] == 0:
        dense = dense[1:]
    return len(U.squarefree_part(dense, U.QQ)) - 1


def restrict_to(strict, zero_vars):
    return Polynomial({k: c for k, c in strict.items() if all(k[i] == 0 for i in zero_vars)}, 3)


def nx_graph(g: DualGraph):
    G = nx.Graph()
    for n in g.nodes:
        G.add_node(n.name, deco=(n.genus, n.self_intersection))
    for a, b, c in g.edges:
        G.add_edge(a, b, count=c)
    return G


def nx_isomorphic(a, b):
    return nx.is_isomorphic(
        nx_graph(a),
        nx_graph(b),
        node_match=lambda x, y: x["deco"] == y["deco"],
        edge_match=lambda x, y: x["count"] == y["count"],
    )


# -- the fan ---------------------------------------------------------------------


def test_sigma_star_is_regular():
    fan = sigma_star()
    assert len(fan.maximal_cones) == 7
    assert all(abs(x) == 1 for x in fan.determinants())
    assert fan.is_regular()


def test_sigma_star_covers_the_positive_octant():
    # every rational direction in the octant lies in some cone
    fan = sigma_star()
    rng = random.Random(0)
    for _ in range(300):
        w = np.array([rng.randint(1, 40) for _ in range(3)], dtype=float)
        hits = 0
        for cone in fan.maximal_cones:
            M = np.array([fan.generators[s] for s in cone], dtype=float).T
            coeffs = np.linalg.solve(M, w)
            if (coeffs >= -1e-12).all():
                hits += 1
        assert hits >= 1


def test_unknown_cones_are_rejected():
    fan = sigma_star()
    with pytest.raises(ValueError):
        fan.find_cone(("P", "Q", "R"))
    with pytest.raises(ValueError):
        fan.find_cone(("P", "e2", "X"))
    assert fan.find_cone([(1, 1, 1), (0, 1, 0), (0, 0, 1)]) == ("P", "e2", "e3")


# -- charts ----------------------------------------------------------------------------


def test_chart_pullback_of_the_golden_germ():
    # in the chart of (P, e2, e3): g = u1^4 * (f(1, u2, u3) + u1 * h(u2, u3))
    m = golden_member(1)
    orders, strict = chart_pullback(m.g, ("P", "e2", "e3"))
    assert orders == {"P": 4, "e2": 0, "e3": 0}
    f1 = compose(m.f, [constant(1, 3), Z2, Z3])
    assert strict == f1 + Z1 * m.h


@pytest.mark.parametrize("d", [2, 3, 4])
def test_divisor_orders_are_support_minima(d):
    m = line_member(d, seed=d)
    fan = sigma_star()
    support = m.g.support()
    for cone in fan.maximal_cones:
        orders, _ = chart_pullback(m.g, cone)
        for name, k in orders.items():
            ray = fan.generators[name]
            assert k == min(sum(a * b for a, b in zip(ray, p)) for p in support)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_intersections_by_brute_force(d):
    m = golden_member(1) if d == 2 else line_member(d, seed=d)
    # E(P) . E(Q): points of the strict transform on the curve u_Q = u_P = 0
    _, s = chart_pullback(m.g, ("Q", "P", "e2"))
    assert distinct_torus_roots(restrict_to(s, (0, 1)), 2) == d
    # E(Q) . E(R)
    _, s = chart_pullback(m.g, ("R", "Q", "e2"))
    assert distinct_torus_roots(restrict_to(s, (0, 1)), 2) == d + 3
    # E(R) meets the strict transform in d + 3 lines parallel to the u1 axis
    _, s = chart_pullback(m.g, ("e1", "R", "e2"))
    on_r = restrict_to(s, (1,))
    assert all(k[0] == 0 for k in on_r.support())
    assert distinct_torus_roots(on_r, 2) == d + 3


def test_charts_agree_on_overlaps():
    # two charts sharing the 2-cone (Q, P) see the same intersection points
    m = line_member(3, seed=1)
    _, a = chart_pullback(m.g, ("Q", "P", "e2"))
    _, b = chart_pullback(m.g, ("Q", "P", "e3"))
    ra, rb = restrict_to(a, (0, 1)), restrict_to(b, (0, 1))
    # u3 in one chart is 1/u3 in the other
    flipped = {(0, 0, ra.degree_in(2) - k[2]): c for k, c in ra.items()}
    assert Polynomial(flipped, 3).monic() == rb.monic()


# -- divisors and graphs -----------------------------------------------------------------


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_e_q_is_rational(d):
    # D1 lies in 3x + 2y + 2z = 2d + 6; interior points need x = 1, which forces 2(y + z) odd
    assert euler_e_q(d) == (2, 0)


def test_divisor_ledger_of_the_golden_germ():
    m = golden_member(1)
    p, q, r = divisor_ledger(m, phi=2)
    assert (p.components, q.components, r.components) == (2, 1, 5)
    assert (p.multiplicity, q.multiplicity, r.multiplicity) == (1, 2, 1)
    assert r.euler == 10


def test_golden_graph():
    g = build_dual_graph(golden_member(1))
    si = {n.name: n.self_intersection for n in g.nodes}
    assert si["E(P)#1"] == si["E(P)#2"] == -5
    assert si["E(Q)"] == -4
    assert [si[f"E(R)#{k}"] for k in range(1, 6)] == [-2] * 5
    assert si["E_1,1"] == -1
    assert g.is_connected()


@pytest.mark.parametrize("phi", [1, 2, 3])
@pytest.mark.parametrize("d", [2, 3, 4])
def test_laufer_and_negative_definiteness(d, phi):
    for m in (line_member(d, seed=d), line_member(d, seed=d, h=(Z2 - Z3) * (Z2 ** (d + 2) + 2 * Z3 ** (d + 2)))):
        g = build_dual_graph(m, phi=phi)
        assert not any(laufer_report(g).values())
        assert is_negative_definite(g)
        eig = np.linalg.eigvalsh(np.array(g.intersection_matrix(), dtype=float))
        assert (eig < 0).all()


def test_self_intersections_are_independent_of_phi():
    m = line_member(3, seed=2)
    graphs = [build_dual_graph(m, phi=k) for k in (1, 2, 3)]
    base = {n.name: n.self_intersection for n in graphs[0].nodes}
    for g in graphs[1:]:
        assert {n.name: n.self_intersection for n in g.nodes} == base


def test_laufer_errors():
    bad = DualGraph([DivisorNode("A", multiplicity=2), DivisorNode("B", multiplicity=1)], [("A", "B", 1)])
    with pytest.raises(LauferError, match="integer"):
        self_intersections_and_laufer(bad)
    with pytest.raises(LauferError):
        laufer_report(DualGraph([DivisorNode("A")], []))
    with pytest.raises(ValueError):
        build_dual_graph(golden_member(1), phi=4)


def test_catalog_has_the_needed_entries():
    cat = load_catalog()
    assert {"smooth", "conic"} <= set(cat["A1"])
    assert "smooth" in cat["O3"]


def test_json_round_trip():
    g = build_dual_graph(golden_member(-1))
    back = DualGraph.from_json(g.to_json())
    assert back.to_json() == g.to_json()
    assert graphs_isomorphic(g, back, use_multiplicity=True, use_arrows=True)
    dot = g.to_dot()
    assert dot.startswith("graph dual {") and '"E(Q)" -- "E(R)#1"' in dot


# -- isomorphism -------------------------------------------------------------------------


def test_golden_pair_graphs_differ(g0_member, g1_member):
    a, b = build_dual_graph(g0_member), build_dual_graph(g1_member)
    assert not graphs_isomorphic(a, b)
    assert not nx_isomorphic(a, b)


def test_pair_with_nodes_off_h_has_isomorphic_graphs(g0_member):
    # a node at [1:2:1] instead of [1:1:1]
    M1, M2 = Z1 + Z2 - 3 * Z3, 3 * Z1 - Z2 - Z3
    m = build_member(M1 * M2, Z2 ** 5 + 2 * Z3 ** 5, f_factors=[M1, M2])
    assert not check_assumptions(m).failures
    a, b = build_dual_graph(g0_member), build_dual_graph(m)
    assert graphs_isomorphic(a, b, use_multiplicity=True, use_arrows=True)
    assert nx_isomorphic(a, b)


def relabel(g: DualGraph, rng) -> DualGraph:
    names = [n.name for n in g.nodes]
    shuffled = names[:]
    rng.shuffle(shuffled)
    ren = dict(zip(names, (f"n{k}" for k in range(len(names)))))
    order = {n: i for i, n in enumerate(shuffled)}
    nodes = sorted(
        (DivisorNode(ren[n.name], n.genus, n.multiplicity, n.self_intersection, n.arrows) for n in g.nodes),
        key=lambda n: order[[k for k, v in ren.items() if v == n.name][0]],
    )
    return DualGraph(nodes, [(ren[a], ren[b], c) for a, b, c in g.edges])


def test_isomorphism_against_networkx():
    rng = random.Random(8)
    graphs = [build_dual_graph(line_member(d, seed=s)) for d in (2, 3) for s in range(3)]
    for g in graphs:
        h = relabel(g, rng)
        assert graphs_isomorphic(g, h)
        assert nx_isomorphic(g, h)
        # one altered self-intersection or edge count breaks the isomorphism
        k = rng.randrange(len(h.nodes))
        n = h.nodes[k]
        h.nodes[k] = DivisorNode(n.name, n.genus, n.multiplicity, n.self_intersection - 1, n.arrows)
        assert graphs_isomorphic(g, h) == nx_isomorphic(g, h) is False
    for a in graphs:
        for b in graphs:
            assert graphs_isomorphic(a, b) == nx_isomorphic(a, b)


def test_expression_members_build_graphs():
    m = golden_member(1)
    assert parse("z2^5 + z3^5") == m.h
    assert len(build_dual_graph(m).nodes) == 2 + 1 + 5 + 1
