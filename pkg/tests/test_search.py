import itertools
import random
import time

import pytest

from kdclique.generators import random_graph
from kdclique.graph import Graph
from kdclique.oracle import brute_force
from kdclique.search import (
    SolverConfig,
    _Engine,
    branch_and_bound,
    degeneracy_order,
    greedy_lower_bound,
    node_reduction,
    solve,
)

from conftest import corpus_graph, is_defective_clique


def complete_graph(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


ALL_TOGGLES = [
    SolverConfig(club_in_preprocess=pre, club_in_bnb=bnb)
    for pre, bnb in itertools.product((True, False), repeat=2)
]


# -- greedy lower bound -----------------------------------------------------


def test_lower_bound_on_complete_graph():
    for k in (0, 2):
        size, witness = greedy_lower_bound(complete_graph(7), k)
        assert size == 7
        assert sorted(witness) == list(range(7))


def test_lower_bound_on_edgeless_graph():
    size, witness = greedy_lower_bound(Graph(5, []), 1)
    assert size == 2
    assert len(witness) == 2


def test_lower_bound_empty_graph():
    assert greedy_lower_bound(Graph(0, []), 3) == (0, [])


def test_lower_bound_is_feasible_and_no_better_than_optimum():
    for index in range(30):
        g, k = corpus_graph(index)
        size, witness = greedy_lower_bound(g, k)
        assert size == len(witness) >= 1
        assert is_defective_clique(g, witness, k)
        assert size <= brute_force(g, k).size


def test_degeneracy_order_peels_minimum_degree():
    # a star graph peels all leaves before the hub
    g = Graph(5, [(0, v) for v in range(1, 5)])
    order = degeneracy_order(g)
    assert order[-1] == 0 or g.degree(order[-1]) >= 1
    assert len(order) == 5


# -- per-node reduction ------------------------------------------------------


def test_node_reduction_zero_budget_keeps_only_common_neighbors(figure_graph):
    g = figure_graph
    # S = {v0, v6} uses up the whole budget at k=1; every candidate is a
    # common neighbor here, so nothing can be removed
    assert node_reduction(g, 1, (0, 6)) == 0
    assert set(g.active_vertices()) - {0, 6} == set(range(1, 6))

    g2 = Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
    removed = node_reduction(g2, 0, (1, 2))
    assert removed == 1
    assert not g2.is_active(3)  # non-neighbor of S at budget zero
    assert g2.is_active(0)


def test_node_reduction_empty_solution_removes_nothing():
    for k in (0, 1, 2):
        g = random_graph(10, 0.5, seed=4)
        before = g.snapshot()
        assert node_reduction(g, k, ()) == 0
        assert g.snapshot() == before


def test_node_reduction_enforces_pair_feasibility():
    rng = random.Random(21)
    for trial in range(20):
        g, k = corpus_graph(trial)
        s = []
        for v in rng.sample(g.active_vertices(), min(3, g.active_count)):
            if g.missing_edges(s + [v]) <= k:
                s.append(v)
        node_reduction(g, k, s)
        cand = [v for v in g.active_vertices() if v not in s]
        for u in cand:
            assert g.missing_edges(s + [u]) <= k
        for u, w in g.edges():
            if u in cand and w in cand:
                assert g.missing_edges(s + [u, w]) <= k


def test_node_reduction_preserves_completions():
    rng = random.Random(22)
    for trial in range(20):
        g, k = corpus_graph(trial)
        s = []
        for v in rng.sample(g.active_vertices(), min(2, g.active_count)):
            if g.missing_edges(s + [v]) <= k:
                s.append(v)
        best_before = brute_force(g, k, required=s).size
        node_reduction(g, k, s)
        best_after = brute_force(g, k, required=s).size
        assert best_before == best_after


# -- branch and bound --------------------------------------------------------


def test_bnb_no_candidates_returns_floor():
    g = complete_graph(4)
    assert branch_and_bound(g, 0, s=range(4), lb=2) == 4
    assert branch_and_bound(g, 0, s=range(4), lb=9) == 9


def test_bnb_complete_graph():
    assert branch_and_bound(complete_graph(5), 0) == 5


def test_bnb_matches_oracle_from_partial_solutions():
    rng = random.Random(23)
    for trial in range(25):
        g, k = corpus_graph(trial)
        s = []
        for v in rng.sample(g.active_vertices(), min(2, g.active_count)):
            if g.missing_edges(s + [v]) <= k:
                s.append(v)
        want = brute_force(g, k, required=s).size
        before = g.snapshot()
        assert branch_and_bound(g, k, s=s) == want
        assert g.snapshot() == before


# -- full solve ---------------------------------------------------------------


def test_solve_matches_oracle_all_toggles():
    for index in range(60):
        g, k = corpus_graph(index)
        want = brute_force(g, k).size
        for config in ALL_TOGGLES:
            res = solve(g, k, config)
            assert res.status == "optimal"
            assert res.best_size == want, (index, config.fingerprint())


def test_solve_witness_checked_on_original_graph():
    for index in range(25):
        g, k = corpus_graph(index)
        res = solve(g, k)
        assert len(res.witness) == res.best_size
        assert is_defective_clique(g, res.witness, k)


def test_solve_restores_graph():
    g, k = corpus_graph(2)
    before = g.snapshot()
    solve(g, k)
    assert g.snapshot() == before
    g.validate()


def test_solve_sparse_mode_agrees():
    for index in range(20):
        g_auto, k = corpus_graph(index)
        g_sparse, _ = corpus_graph(index, mode="sparse")
        assert not g_sparse.dense
        assert solve(g_auto, k).best_size == solve(g_sparse, k).best_size


def test_solve_deterministic_per_seed():
    g, k = corpus_graph(9)
    for seed in (0, 7):
        config = SolverConfig(seed=seed)
        a = solve(g, k, config)
        b = solve(g, k, config)
        assert (a.best_size, a.tree_nodes, a.witness) == (b.best_size, b.tree_nodes, b.witness)


def test_solve_seeds_change_ties_not_answers():
    g, k = corpus_graph(11)
    results = {solve(g, k, SolverConfig(seed=s)).best_size for s in (0, 1, 2, 3)}
    assert len(results) == 1


def test_solve_k_zero_is_maximum_clique():
    g, _ = corpus_graph(5)
    assert solve(g, 0).best_size == brute_force(g, 0).size


def test_solve_rejects_negative_k():
    with pytest.raises(ValueError):
        solve(complete_graph(3), -1)


def test_solve_takes_k_from_config_when_omitted():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])  # 4-cycle
    assert solve(g, config=SolverConfig(k=1)).best_size == 3
    assert solve(g, config=SolverConfig(k=0)).best_size == 2


def test_solve_timeout_is_anytime_sound():
    g = random_graph(90, 0.5, seed=77)
    start = time.monotonic()
    res = solve(g, 3, SolverConfig(time_limit=0.3))
    wall = time.monotonic() - start
    assert res.status == "timeout"
    assert wall < 0.3 + 1.0
    assert is_defective_clique(g, res.witness, 3)
    assert len(res.witness) == res.best_size


def test_node_bound_reduction_flag_keeps_answers():
    for index in range(10):
        g, k = corpus_graph(index)
        want = solve(g, k).best_size
        res = solve(g, k, SolverConfig(node_bound_reduction=True))
        assert res.best_size == want


def test_pruned_nodes_hide_no_better_solution():
    # wherever the search prunes, brute force over that node's remaining
    # graph must not beat the incumbent
    rng = random.Random(30)
    for trial in range(8):
        n = rng.randint(8, 13)
        g = random_graph(n, rng.choice((0.4, 0.7)), seed=6000 + trial)
        k = rng.choice((1, 2))
        lb, witness = greedy_lower_bound(g, k)
        engine = _Engine(g, k, lb, witness, SolverConfig(), deadline=None)
        checked = []

        def hook(s, cand, best, engine=engine, checked=checked):
            if len(checked) >= 12:
                return
            sub = engine.current_subgraph()
            truth = brute_force(sub, engine.k, required=s, allowed=set(s) | set(cand)).size
            assert truth <= best, (s, truth, best)
            checked.append(s)

        engine.prune_hook = hook
        best = engine.run()
        assert best == brute_force(g, k).size
        assert checked, "expected at least one pruned node"


def test_reduced_sizes_reported():
    g = random_graph(14, 0.4, seed=55)
    res = solve(g, 1)
    assert 0 <= res.reduced_v <= 14
    assert res.reduced_e <= g.edge_count
    assert res.tree_nodes >= 1
    assert res.total_time >= res.preprocess_time >= 0.0


def test_solve_figure_fixture_matches_oracle(figure_graph):
    res = solve(figure_graph, 1)
    assert res.best_size == brute_force(figure_graph, 1).size == 5


def test_trace_flag_records_search_nodes():
    g = random_graph(14, 0.6, seed=41)
    plain = solve(g, 2)
    traced = solve(g, 2, SolverConfig(trace=True))
    assert plain.trace is None
    assert traced.best_size == plain.best_size
    assert traced.trace, "expected trace entries"
    node, s_size, c_size, ub, expanded = traced.trace[0]
    assert node == 1 and s_size == 0 and c_size > 0 and ub >= traced.best_size - s_size
