import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greedylab.dynamic import DynamicGraph, NaiveDegreeOracle
from greedylab.errors import EdgeNotPresentError, EmptyGraphError, IsolatedNodeError
from greedylab.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from greedylab.instances import gen_erdos_renyi, gen_gab
from greedylab.policies import LOWEST_ID, TiePolicy
from greedylab.rng import RandomStream


def test_build_three_cycle_single_bucket():
    dg = DynamicGraph(cycle_graph(3))
    assert dg.bucket_degrees() == [2]
    assert dg.bucket_contents() == {2: {0, 1, 2}}


def test_build_path_two_buckets():
    dg = DynamicGraph(path_graph(3))
    assert dg.bucket_contents() == {1: {0, 2}, 2: {1}}


def test_build_gab_4_2_bucket_degrees():
    # degrees by construction: cliques of size 2 give degree 2; both other
    # groups land at degree 5 when a=4 (2*ceil(sqrt(4))+1 = a+1 = 5)
    inst = gen_gab(4, 2)
    dg = DynamicGraph(inst.graph)
    contents = dg.bucket_contents()
    assert sorted(contents) == [2, 5]
    assert contents[2] == set(inst.labels["S2"])
    assert contents[5] == set(inst.labels["S1"]) | set(inst.labels["S3"])


def test_min_degree_node_policies():
    g = path_graph(3)
    dg = DynamicGraph(g)
    stream = RandomStream(0)
    seen = {dg.min_degree_node(stream=stream) for _ in range(50)}
    assert seen == {0, 2}
    assert dg.min_degree_node(LOWEST_ID) == 0
    dg3 = DynamicGraph(cycle_graph(3))
    first_stored = dg3.S[dg3.head.lo]
    assert dg3.min_degree_node(TiePolicy.stored_order(0)) == first_stored
    picked = dg3.min_degree_node(TiePolicy.callback(lambda cands: max(cands)))
    assert picked == 2


def test_min_degree_uniformity_star():
    # leaves only, each near 1/3 of draws
    g = star_graph(3)
    dg = DynamicGraph(g)
    stream = RandomStream(7)
    n_draws = 100_000
    counts = {1: 0, 2: 0, 3: 0}
    for _ in range(n_draws):
        u = dg.min_degree_node(stream=stream)
        assert u != 0
        counts[u] += 1
    for leaf in (1, 2, 3):
        assert abs(counts[leaf] / n_draws - 1 / 3) < 0.02


def test_random_neighbor_uniformity_k4():
    g = complete_graph(4)
    dg = DynamicGraph(g)
    stream = RandomStream(3)
    n_draws = 100_000
    counts = {1: 0, 2: 0, 3: 0}
    for _ in range(n_draws):
        counts[dg.random_neighbor(0, stream=stream)] += 1
    for v in (1, 2, 3):
        assert abs(counts[v] / n_draws - 1 / 3) < 0.02


def test_random_neighbor_after_deletion():
    dg = DynamicGraph(cycle_graph(3))
    dg.delete_edge(0, 1)
    assert dg.random_neighbor(0, stream=RandomStream(0)) == 2
    assert dg.random_neighbor(1, stream=RandomStream(0)) == 2


def test_unique_neighbor_forced():
    dg = DynamicGraph(path_graph(3))
    assert dg.random_neighbor(0, stream=RandomStream(0)) == 1


def test_delete_edge_triangle():
    dg = DynamicGraph(cycle_graph(3))
    dg.delete_edge(0, 1)
    dg.check_invariants()
    assert dg.degree(0) == 1 and dg.degree(1) == 1 and dg.degree(2) == 2
    assert dg.bucket_contents() == {1: {0, 1}, 2: {2}}


def test_delete_spoke_of_star():
    dg = DynamicGraph(star_graph(3))
    dg.delete_edge(0, 2)
    dg.check_invariants()
    assert dg.degree(2) == 0
    assert dg.bucket_contents() == {1: {1, 3}, 3 - 1: {0}}


def test_delete_missing_edge_raises():
    dg = DynamicGraph(path_graph(3))
    with pytest.raises(EdgeNotPresentError):
        dg.delete_edge(0, 2)
    dg.delete_edge(0, 1)
    with pytest.raises(EdgeNotPresentError):
        dg.delete_edge(0, 1)


def test_remove_matched_pair_triangle():
    dg = DynamicGraph(cycle_graph(3))
    removed = dg.remove_matched_pair(0, 1)
    assert {(min(x, y), max(x, y)) for x, y, _, _ in removed} == {(0, 1), (0, 2), (1, 2)}
    assert sum(1 for *_, is_m in removed if is_m) == 1
    assert dg.degree(2) == 0 and not dg.has_live_edges()


def test_remove_matched_pair_path4():
    dg = DynamicGraph(path_graph(4))
    removed = dg.remove_matched_pair(1, 2)
    assert {(min(x, y), max(x, y)) for x, y, _, _ in removed} == {(0, 1), (1, 2), (2, 3)}


def test_remove_matched_pair_k4():
    dg = DynamicGraph(complete_graph(4))
    removed = dg.remove_matched_pair(0, 1)
    assert len(removed) == 5
    assert dg.bucket_contents() == {1: {2, 3}}


def test_empty_graph_errors():
    dg = DynamicGraph(Graph(3, []))
    with pytest.raises(EmptyGraphError):
        dg.min_degree_node(stream=RandomStream(0))
    with pytest.raises(IsolatedNodeError):
        dg.random_neighbor(0, stream=RandomStream(0))
    oracle = NaiveDegreeOracle(Graph(3, []))
    with pytest.raises(EmptyGraphError):
        oracle.min_degree()


def test_single_edge_buckets_match_oracle():
    g = Graph(2, [(0, 1)])
    dg = DynamicGraph(g)
    oracle = NaiveDegreeOracle(g)
    assert dg.bucket_contents()[1] == oracle.min_degree_nodes() == {0, 1}


def _differential_trial(seed: int, n: int, m: int) -> None:
    inst = gen_erdos_renyi(n, m, seed)
    g = inst.graph
    dg = DynamicGraph(g)
    oracle = NaiveDegreeOracle(g)
    stream = RandomStream(seed, ("ops",))
    while oracle.has_live_edges():
        assert dg.min_degree_nodes() and set(dg.min_degree_nodes()) == oracle.min_degree_nodes()
        for u in range(g.n):
            assert dg.degree(u) == len(oracle.live_neighbors(u))
            assert set(dg.live_neighbors(u)) == oracle.live_neighbors(u)
        live = sorted(oracle.edges)
        u, v = live[stream.randrange(len(live))]
        if stream.randrange(2):
            dg.delete_edge(u, v)
            oracle.delete_edge(u, v)
        else:
            dg.remove_matched_pair(u, v)
            oracle.remove_matched_pair(u, v)
        dg.check_invariants()


def test_differential_vs_oracle_small():
    for seed in range(60):
        n = 4 + seed % 12
        m = min(n * (n - 1) // 2, 2 * n)
        _differential_trial(seed, n, m)


def test_differential_vs_oracle_n50():
    for seed in range(8):
        _differential_trial(1000 + seed, 50, 120)


def test_differential_vs_oracle_n100_m300():
    _differential_trial(4242, 100, 300)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_invariants_after_random_deletion_sequences(seed):
    inst = gen_erdos_renyi(10, 18, seed)
    dg = DynamicGraph(inst.graph)
    stream = RandomStream(seed)
    dg.check_invariants()
    while dg.has_live_edges():
        u = dg.min_degree_node(stream=stream)
        v = dg.random_neighbor(u, stream=stream)
        if stream.randrange(3):
            dg.remove_matched_pair(u, v)
        else:
            dg.delete_edge(u, v)
        dg.check_invariants()


def test_drain_removes_every_edge():
    inst = gen_erdos_renyi(60, 150, 5)
    dg = DynamicGraph(inst.graph)
    assert dg.drain() == 150
    assert not dg.has_live_edges()
    assert all(dg.degree(u) == 0 for u in range(60))


def test_random_live_node_spans_live_region():
    g = Graph(5, [(0, 1), (2, 3)])
    dg = DynamicGraph(g)
    stream = RandomStream(1)
    seen = {dg.random_live_node(stream) for _ in range(200)}
    assert seen == {0, 1, 2, 3}
