import pytest

from fvskit.graph import Graph, betti
from fvskit.oracle import (OracleBudget, OracleBudgetExceeded, brute_disjoint,
                           brute_fvs, brute_mu, brute_parity)
from fvskit.reductions import DisjointInstance
from fvskit.regular3 import matroid_parity, shrink_v2, subdivide

from conftest import k4, make_graph, random_regular3_instance, triangle


def test_brute_fvs_triangle():
    assert len(brute_fvs(triangle())) == 1


def test_brute_fvs_k4():
    assert len(brute_fvs(k4())) == 2


def test_brute_fvs_two_triangles():
    g = make_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert len(brute_fvs(g)) == 2


def test_brute_fvs_budget_refusal():
    g = Graph()
    g.add_vertices(15)
    with pytest.raises(OracleBudgetExceeded):
        brute_fvs(g)
    assert brute_fvs(g, OracleBudget(n_max=15)) == set()


def test_brute_disjoint_empty_v1_with_cycle():
    g = triangle()
    for k in range(4):
        inst = DisjointInstance(g, set(), {1, 2, 3}, k, validate=False)
        assert brute_disjoint(inst) is None


def test_brute_disjoint_c4_alternating():
    g = make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    inst = DisjointInstance(g, {1, 3}, {2, 4}, 1)
    res = brute_disjoint(inst)
    assert res is not None and len(res) == 1


def test_brute_disjoint_budget_refusal():
    g = Graph()
    vs = g.add_vertices(16)
    inst = DisjointInstance(g, set(vs), set(), 0)
    with pytest.raises(OracleBudgetExceeded):
        brute_disjoint(inst)


def test_brute_disjoint_cross_oracle_identity():
    # on degree-3 instances the minimum equals betti - mu
    for seed in range(25):
        inst = random_regular3_instance(seed, n_max=10, v1_max=3)
        best = brute_disjoint(
            DisjointInstance(inst.g.copy(), set(inst.v1), set(inst.v2),
                             len(inst.v1)))
        assert best is not None
        assert len(best) == betti(inst.g) - brute_mu(inst)


def test_brute_parity_tree():
    from fvskit.regular3 import PairedSubdivision
    g = make_graph(3, [(0, 1), (1, 2)])
    ps = PairedSubdivision(g, {1: 1, 2: 2}, [(1, 2)])
    assert brute_parity(ps) == []


def test_brute_parity_one_removable_pair():
    # chorded 4-cycle: removing the two opposite rim edges keeps the rest
    # connected through the chord
    g = make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    from fvskit.regular3 import PairedSubdivision
    ps = PairedSubdivision(g, {}, [(1, 3)])
    res = brute_parity(ps)
    assert res == [(1, 3)]


def test_brute_parity_budget_refusal():
    from fvskit.regular3 import PairedSubdivision
    g = make_graph(2, [(0, 1)])
    ps = PairedSubdivision(g, {}, [(1, 1)] * 11)
    with pytest.raises(OracleBudgetExceeded):
        brute_parity(ps)


def test_brute_parity_matches_production_backend():
    for seed in range(30):
        inst = random_regular3_instance(seed, v1_max=2, connected=True)
        try:
            sg = shrink_v2(inst)
        except ValueError:
            continue
        ps = subdivide(sg, inst.v1)
        if len(ps.pairing) > 10:
            continue
        assert len(brute_parity(ps)) == len(matroid_parity(ps, seed=seed))


def test_brute_mu_acyclic_graph():
    g = make_graph(4, [(0, 1), (1, 2), (2, 3)])
    inst = DisjointInstance(g, {1}, {2, 3, 4}, 0, validate=False)
    # g[v1] vertex 1 has degree 1; instance shape irrelevant: g is a tree
    assert brute_mu(inst) == 0


def test_brute_mu_five_edge_example():
    g = make_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    inst = DisjointInstance(g, {1, 2}, {3, 4}, 2)
    assert brute_mu(inst) == 1


def test_brute_mu_at_least_any_single_tree():
    from fvskit.regular3 import tree_from_parity
    for seed in range(10):
        inst = random_regular3_instance(seed, n_max=9, v1_max=2,
                                        connected=True)
        try:
            sg = shrink_v2(inst)
        except ValueError:
            continue
        ps = subdivide(sg, inst.v1)
        if len(ps.pairing) > 10:
            continue
        chosen = matroid_parity(ps, seed=seed)
        _, matching = tree_from_parity(inst, sg, ps, chosen)
        assert brute_mu(inst) >= len(matching.two_groups)


def test_brute_mu_budget_refusal():
    g = Graph()
    vs = g.add_vertices(15)
    inst = DisjointInstance(g, set(), set(vs), 0)
    with pytest.raises(OracleBudgetExceeded):
        brute_mu(inst)
