import json

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from latticekit.errors import CapExceeded, InvalidParameter, NotTriangleFree, PipelineAssertionFailed
from latticekit.galois import DirectedGraph, lattice_from_galois
from latticekit.lattice import semidistributivity
from latticekit.tafs import (BOTH, EPI, MONO, PLAIN, DecoratedMultigraph, admits_tafs, classify_arrows,
                             counterexample_pipeline, grotzsch_edges, is_tafs, is_triangle_free,
                             load_counterexample, orientation_search)


def _graph(m, arrows):
    return DecoratedMultigraph(m, tuple((s, t, PLAIN) for s, t in arrows))


def test_single_arrow_is_both():
    G = classify_arrows(_graph(2, [(0, 1)]))
    assert G.arrows == ((0, 1, BOTH),)
    assert is_tafs(G).ok


def test_two_cycle_violates_order():
    result = is_tafs(classify_arrows(_graph(2, [(0, 1), (1, 0)])))
    assert not result.ok and result.violation.startswith("order")


def test_path_classification():
    # 0 -> 1 -> 2 plus 0 -> 2: every arrow into 1 also reaches 2
    G = classify_arrows(_graph(3, [(0, 1), (1, 2), (0, 2)]))
    decos = {(s, t): d for s, t, d in G.arrows}
    assert decos[(1, 2)] in (MONO, BOTH)
    assert decos[(0, 1)] in (EPI, BOTH)
    assert is_tafs(G).ok


def test_unfactored_plain_arrow():
    G = DecoratedMultigraph(3, ((0, 1, PLAIN),))
    result = is_tafs(G)
    assert not result.ok and result.violation.startswith("multiplication")


def test_multigraph_json_roundtrip():
    G = DecoratedMultigraph(3, ((0, 1, EPI), (1, 2, MONO)), ("a", "b", "c"))
    again = DecoratedMultigraph.from_dict(json.loads(json.dumps(G.to_dict())))
    assert again == G
    with pytest.raises(InvalidParameter):
        DecoratedMultigraph.from_dict({"m": 2, "arrows": [[0, 5]]})
    with pytest.raises(InvalidParameter):
        DecoratedMultigraph.from_dict({"m": 2, "arrows": [[0, 1, "weird"]]})


def test_cycle_and_grotzsch():
    c5 = [(i, (i + 1) % 5) for i in range(5)]
    assert admits_tafs(5, c5)
    assert admits_tafs(5, c5, mode="orientation_search")
    g = nx.mycielski_graph(4)
    assert nx.is_isomorphic(g, nx.Graph(grotzsch_edges()))
    assert not admits_tafs(11, grotzsch_edges())


def test_mode_errors():
    with pytest.raises(NotTriangleFree):
        admits_tafs(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(InvalidParameter):
        admits_tafs(2, [(0, 1)], mode="guess")
    with pytest.raises(CapExceeded):
        orientation_search(2, [(0, 1)] * 3)
    with pytest.raises(CapExceeded):
        orientation_search(8, [(i, j) for i in range(8) for j in range(i + 1, 8)], cap=10)


def test_parallel_edges_allowed_up_to_two():
    assert orientation_search(2, [(0, 1), (0, 1)]) is not None


def test_orientation_search_job_independence():
    edges = [(i, (i + 1) % 7) for i in range(7)] + [(0, 3), (3, 5), (1, 5), (2, 6), (4, 6)]
    assert (orientation_search(7, edges, jobs=1) is None) == (orientation_search(7, edges, jobs=2) is None)


def test_counterexample_data():
    G = load_counterexample()
    assert G.m == 12
    arrows = {(s, t) for s, t, _ in G.arrows if s != t}
    L, _ = lattice_from_galois(DirectedGraph.from_edges(G.m, sorted(arrows)))
    assert semidistributivity(L).is_sd
    # direct enumeration of maximal orthogonal pairs agrees on the size
    assert L.n == len(oracles.maximal_orthogonal_pairs(G.m, arrows)) == 168


def test_counterexample_pipeline_without_sweep():
    report = counterexample_pipeline(sweep=False, strict=False)
    assert report["sd"] and report["triangle_free"] and report["grotzsch"]
    assert report["chi"] == 4 and report["admits_tafs"] is False
    assert report["sweep_admits_tafs"] is None
    # the lattice has one element more than the recorded count
    assert report["elements"] == 168 and report["failed_stages"] == ["elements"]
    with pytest.raises(PipelineAssertionFailed):
        counterexample_pipeline(sweep=False, strict=True)


@settings(max_examples=40, deadline=None)
@given(m=st.integers(1, 7), data=st.data())
def test_chromatic_criterion_matches_orientation_search(m, data):
    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    edges = []
    for p in pairs:
        if len(edges) < 10 and data.draw(st.integers(0, 2)) == 0 and is_triangle_free(m, edges + [p]):
            edges.append(p)
    by_colour = admits_tafs(m, edges)
    assert by_colour == (oracles.chromatic_number(m, edges) <= 3)
    assert by_colour == admits_tafs(m, edges, mode="orientation_search")
