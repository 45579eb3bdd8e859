import io

import pytest

from greedylab.errors import TraceMismatchError
from greedylab.graph import path_graph
from greedylab.matchers import MatcherConfig, run_mingreedy
from greedylab.policies import LOWEST_ID, UNIFORM, TiePolicy, policy_from_name
from greedylab.rng import RandomStream, derive_key
from greedylab.trace import ExecutionTrace, validate_trace


def test_streams_are_deterministic_and_split_independent():
    a = RandomStream(42)
    b = RandomStream(42)
    assert [a.randrange(1000) for _ in range(5)] == [b.randrange(1000) for _ in range(5)]
    # a split stream does not depend on how much the parent has drawn
    c = RandomStream(42)
    c.randrange(1000)
    assert RandomStream(42).split("x").randrange(10**9) == c.split("x").randrange(10**9)
    assert RandomStream(42).split("x").key != RandomStream(42).split("y").key


def test_derive_key_stable_and_sensitive():
    assert derive_key(1, "a", 2) == derive_key(1, "a", 2)
    assert derive_key(1, "a", 2) != derive_key(1, "a", 3)
    assert 0 <= derive_key("anything") < 2 ** 64


def test_stream_helpers():
    s = RandomStream(7)
    assert 0 <= s.randint(0, 5) <= 5
    assert 0.0 <= s.random() < 1.0
    seq = [1, 2, 3, 4]
    s.shuffle(seq)
    assert sorted(seq) == [1, 2, 3, 4]
    assert s.choice(("x", "y")) in ("x", "y")
    assert isinstance(s.numpy_seed(), int)


def test_tie_policy_construction():
    assert UNIFORM.kind == "uniform" and LOWEST_ID.kind == "lowest"
    assert TiePolicy.stored_order(2).index == 2
    assert TiePolicy.callback(max).fn is max
    assert policy_from_name("uniform") is UNIFORM
    assert policy_from_name("index:3").index == 3
    with pytest.raises(ValueError):
        policy_from_name("nope")
    with pytest.raises(ValueError):
        TiePolicy("weird")


def test_trace_jsonl_round_trip():
    g = path_graph(5)
    _, trace = run_mingreedy(g, MatcherConfig(seed=3, engine="python"))
    buf = io.StringIO()
    trace.to_jsonl(buf)
    buf.seek(0)
    loaded = ExecutionTrace.from_jsonl(buf)
    assert loaded.algorithm == trace.algorithm
    assert [s.removed for s in loaded] == [s.removed for s in trace]
    assert loaded.matched_pairs() == trace.matched_pairs()
    validate_trace(g, loaded)


def test_validate_trace_rejects_corruption():
    g = path_graph(4)
    _, trace = run_mingreedy(g, MatcherConfig(seed=1, engine="python"))
    # tamper: wrong recorded degree
    bad = ExecutionTrace("mingreedy")
    s0 = trace.step(0)
    bad.append_step(s0.selected, s0.degree + 1, s0.mate, s0.removed)
    with pytest.raises(TraceMismatchError):
        validate_trace(g, bad)
    # tamper: missing edges
    partial = ExecutionTrace("mingreedy")
    partial.append_step(s0.selected, s0.degree, s0.mate, s0.removed)
    with pytest.raises(TraceMismatchError):
        validate_trace(g, partial)


def test_trace_flags_non_min_degree_runs():
    g = path_graph(4)
    from greedylab.dynamic import DynamicGraph
    dg = DynamicGraph(g)
    trace = ExecutionTrace("mrg")
    d = dg.degree(1)
    removed = dg.remove_matched_pair(1, 2)  # degree-2 first pick: not min-degree
    trace.append_step(1, d, 2, removed)
    assert validate_trace(g, trace)["min_degree_respecting"] is False
