import pytest
from hypothesis import given, strategies as st

from mindstream.model import EngineParams, new_mindmap
from mindstream.dynamics import ingest_transaction
from mindstream.skeleton import derive_rules, extract_skeleton, strongest_subgraphs

from helpers import (
    replay,
    triangle_gap_threshold,
    txn,
    worked_example_transactions,
)


@pytest.fixture(scope="module")
def final_engine():
    return replay(worked_example_transactions())


def test_skeleton_in_the_gap_is_the_triangle(final_engine):
    theta = triangle_gap_threshold(final_engine)
    skel = extract_skeleton(final_engine.mmap, theta)
    assert skel.nodes == {"B", "C", "E"}
    assert {pair for pair, _ in skel.edges} == {("B", "C"), ("B", "E"), ("C", "E")}


def test_zero_thresholds_keep_whole_graph(final_engine):
    skel = extract_skeleton(final_engine.mmap, 0.0, 0.0)
    assert skel.nodes == set(final_engine.mmap.cells)
    assert len(skel.edges) == final_engine.mmap.edge_count


def test_threshold_above_one_empties_skeleton(final_engine):
    skel = extract_skeleton(final_engine.mmap, 1.0 + 1e-9, 0.0)
    assert not skel.nodes and not skel.edges


def test_activation_threshold_is_anded(final_engine):
    # D's activation decayed well below the others
    theta_a = final_engine.mmap.cells["D"].activation + 1e-9
    skel = extract_skeleton(final_engine.mmap, 0.0, theta_a)
    assert "D" not in skel.nodes


def test_six_rules_from_the_triangle(final_engine):
    theta = triangle_gap_threshold(final_engine)
    rules = derive_rules(extract_skeleton(final_engine.mmap, theta))
    got = {(r.antecedent, r.consequent) for r in rules}
    assert got == {
        ("E", "B"), ("B", "E"),
        ("E", "C"), ("C", "E"),
        ("C", "B"), ("B", "C"),
    }
    assert len(rules) == 6


def test_rules_empty_and_single_edge():
    assert derive_rules(extract_skeleton(new_mindmap(), 0.0)) == []
    engine = replay([txn(["X", "Y"])])
    rules = derive_rules(extract_skeleton(engine.mmap, 0.0))
    assert {(r.antecedent, r.consequent) for r in rules} == {("X", "Y"), ("Y", "X")}


def test_rule_symmetry_closure(final_engine):
    rules = derive_rules(extract_skeleton(final_engine.mmap, 0.0))
    got = {(r.antecedent, r.consequent) for r in rules}
    assert got == {(c, a) for a, c in got}
    assert all(r.antecedent != r.consequent for r in rules)


def test_strongest_subgraph_is_the_triangle(final_engine):
    theta = triangle_gap_threshold(final_engine)
    top = strongest_subgraphs(final_engine.mmap, theta, 1)
    assert len(top) == 1
    assert top[0].nodes == {"B", "C", "E"}


def test_strongest_subgraphs_empty_map():
    assert strongest_subgraphs(new_mindmap(), 0.5, 3) == []


def test_strongest_subgraphs_orders_by_mean_weight():
    m = new_mindmap()
    params = EngineParams(beta_w=0.0, beta_a=0.0, epsilon=0.0)
    m, _ = ingest_transaction(m, txn(["a", "b"]), params)  # w = 0.5
    m, _ = ingest_transaction(m, txn(["c", "d"]), params)  # w = 0.5
    m, _ = ingest_transaction(m, txn(["c", "d"]), params)  # reinforced > 0.5
    comps = strongest_subgraphs(m, 0.1, 2)
    assert [sorted(c.nodes) for c in comps] == [["c", "d"], ["a", "b"]]


def test_strongest_subgraphs_tie_break_is_deterministic():
    m = new_mindmap()
    params = EngineParams(beta_w=0.0, beta_a=0.0, epsilon=0.0)
    m, _ = ingest_transaction(m, txn(["a", "b"]), params)
    m, _ = ingest_transaction(m, txn(["x", "y"]), params)  # equal mean, equal size
    comps = strongest_subgraphs(m, 0.1, 2)
    assert [sorted(c.nodes) for c in comps] == [["a", "b"], ["x", "y"]]


@given(st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=1))
def test_raising_threshold_shrinks_skeleton(t1, t2):
    lo, hi = sorted((t1, t2))
    engine = replay(worked_example_transactions())
    big = extract_skeleton(engine.mmap, lo)
    small = extract_skeleton(engine.mmap, hi)
    assert small.nodes <= big.nodes
    assert set(small.edges) <= set(big.edges)
