import json
import math

import pytest

from greedylab.errors import InfeasibleParametersError, ParameterError
from greedylab.instances import (gen_cycle, gen_erdos_renyi,
                                 gen_fig2_gadget, gen_ga2_bipartite, gen_gab,
                                 gen_gab_bipartite_double, gen_path,
                                 gen_random_regular, load_instance,
                                 save_instance)
from greedylab.matchers import MatcherConfig, run_edsm, run_mingreedy
from greedylab.oracle import max_matching_bruteforce
from greedylab.rng import derive_key


def test_gab_structure_and_degrees():
    inst = gen_gab(4, 2)
    g = inst.graph
    assert g.n == 12 and inst.optimum.size == 6
    s1, s2, s3 = inst.labels["S1"], inst.labels["S2"], inst.labels["S3"]
    assert [g.degree(u) for u in s2] == [2] * 4
    assert [g.degree(u) for u in s1] == [5] * 4  # 2*ceil(sqrt(4)) + 1
    assert [g.degree(u) for u in s3] == [5] * 4  # a + 1
    inst.validate()


def test_gab_degree_profile_closed_forms():
    for a, b in ((16, 4), (36, 6), (100, 10), (64, 4)):
        inst = gen_gab(a, b)
        g = inst.graph
        c = 2 * math.isqrt(a) if math.isqrt(a) ** 2 == a else 2 * (math.isqrt(a) + 1)
        assert all(g.degree(u) == b for u in inst.labels["S2"])
        assert all(g.degree(u) == c + 1 for u in inst.labels["S1"])
        assert all(g.degree(u) == a + 1 for u in inst.labels["S3"])


def test_gab_degrees_at_exact_square_parameter():
    inst = gen_gab(100, 10)
    g = inst.graph
    assert {g.degree(u) for u in inst.labels["S2"]} == {10}
    assert {g.degree(u) for u in inst.labels["S1"]} == {21}
    assert {g.degree(u) for u in inst.labels["S3"]} == {101}


def test_gab_parameter_validation():
    with pytest.raises(ParameterError):
        gen_gab(9, 3)  # odd clique size
    with pytest.raises(ParameterError):
        gen_gab(10, 4)  # non-divisor
    with pytest.raises(ParameterError):
        gen_gab(2, 2)


def test_gab_double_is_bipartite_with_certificate():
    inst = gen_gab_bipartite_double(4)
    inst.validate()
    assert inst.graph.two_coloring() is not None
    side0, side1 = inst.sides()
    assert inst.graph.is_bipartite_with(
        [0 if u in set(side0) else 1 for u in range(inst.graph.n)])
    assert inst.optimum.size == 2 * 4 + 2 * 2
    assert 2 * inst.optimum.size == inst.graph.n


def test_gab_double_s2_degree_increased_by_one():
    inst = gen_gab_bipartite_double(100)
    g = inst.graph
    a = 100
    s2_both = list(range(a, 2 * a)) + [inst.graph.n // 2 + u for u in range(a, 2 * a)]
    assert {g.degree(u) for u in s2_both} == {11}


def test_gab_double_parameter_validation():
    for bad in (9, 12, 8, 2):
        with pytest.raises(ParameterError):
            gen_gab_bipartite_double(bad)


def test_ga2_bipartite_structure():
    inst = gen_ga2_bipartite(16)
    inst.validate()
    g = inst.graph
    assert g.two_coloring() is not None
    s2 = list(range(16, 32))
    assert {g.degree(u) for u in s2} == {2}
    assert inst.optimum.source == "bipartite-solver"
    with pytest.raises(ParameterError):
        gen_ga2_bipartite(17)
    with pytest.raises(ParameterError):
        gen_ga2_bipartite(8)


def test_ga2_bipartite_edsm_ratio_bound():
    a = 100
    inst = gen_ga2_bipartite(a)
    bound = a // 2 + 4 * math.isqrt(a)
    assert inst.optimum.size >= a
    for t in range(5):
        m, _ = run_edsm(inst.graph, MatcherConfig(algorithm="edsm", seed=t))
        assert m.size <= bound
        assert m.size / inst.optimum.size <= (50 + 40) / 100


def test_fig2_gadget_degrees_and_optimum():
    inst = gen_fig2_gadget()
    g = inst.graph
    role = {name: nodes[0] for name, nodes in inst.labels.items()}
    assert g.degree(role["u"]) == 2 and g.degree(role["w"]) == 2
    assert g.degree(role["v"]) == 3 and g.degree(role["z"]) == 3
    assert g.degree(role["b"]) == 2 and g.degree(role["c"]) == 2
    assert sorted(g.degrees().tolist()) == [2, 2, 2, 2, 3, 3]
    assert max_matching_bruteforce(g).size == 3


def test_fig2_gadget_any_labeling():
    perms = [(5, 4, 3, 2, 1, 0), (2, 0, 5, 1, 4, 3), (1, 2, 3, 4, 5, 0)]
    for perm in perms:
        inst = gen_fig2_gadget(perm)
        inst.validate()
        assert max_matching_bruteforce(inst.graph).size == 3
    with pytest.raises(ParameterError):
        gen_fig2_gadget((0, 0, 1, 2, 3, 4))


def test_fig2_isolating_the_low_degree_node_caps_at_two():
    # removing the degree-2 gadget node leaves a maximum matching of 2
    from greedylab.graph import Graph
    inst = gen_fig2_gadget()
    u = inst.labels["u"][0]
    h = Graph(6, [e for e in inst.graph.edges() if u not in e])
    assert max_matching_bruteforce(h).size == 2


def test_erdos_renyi_certificates_and_errors():
    inst = gen_erdos_renyi(12, 20, 7)
    assert inst.graph.m == 20
    assert inst.optimum is not None and inst.optimum.source == "brute-force"
    big = gen_erdos_renyi(40, 60, 7)
    assert big.optimum is None
    with pytest.raises(InfeasibleParametersError):
        gen_erdos_renyi(4, 7, 0)


def test_random_regular_simple_and_regular():
    inst = gen_random_regular(20, 3, 5)
    g = inst.graph
    assert set(g.degrees().tolist()) == {3}
    assert g.m == 30
    with pytest.raises(InfeasibleParametersError):
        gen_random_regular(7, 3, 0)
    with pytest.raises(InfeasibleParametersError):
        gen_random_regular(4, 4, 0)


def test_random_regular_deterministic_per_seed():
    a = gen_random_regular(30, 3, 12).graph
    b = gen_random_regular(30, 3, 12).graph
    assert list(a.edges()) == list(b.edges())


def test_path_cycle_instances():
    assert gen_path(5).optimum.size == 2
    assert gen_path(1).graph.m == 0
    assert gen_cycle(6).optimum.size == 3
    with pytest.raises(ParameterError):
        gen_cycle(2)


def test_instance_serialization_round_trip(tmp_path):
    inst = gen_gab(16, 4)
    base = str(tmp_path / "gab16")
    save_instance(inst, base)
    loaded = load_instance(base)
    assert loaded.graph.to_text() == inst.graph.to_text()
    assert loaded.optimum.size == inst.optimum.size
    assert loaded.optimum.witness.pairs == inst.optimum.witness.pairs
    assert loaded.labels == {k: list(v) for k, v in inst.labels.items()}
    assert loaded.family == "gab" and loaded.params["a"] == 16
    meta = json.loads((tmp_path / "gab16.meta.json").read_text())
    assert meta["certificate"]["source"] == "generator-certified"
    loaded.validate()


def test_mingreedy_collapses_on_bipartite_double():
    inst = gen_gab_bipartite_double(2500)
    ratios = []
    for t in range(10):
        m, _ = run_mingreedy(inst.graph, MatcherConfig(seed=derive_key(3, t)))
        ratios.append(m.size / inst.optimum.size)
    assert sum(ratios) / len(ratios) <= 0.60
