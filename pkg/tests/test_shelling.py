import pytest
from hypothesis import given, settings, strategies as st

import figures as fig
import oracles
from latticekit.doubling import random_script, run_script
from latticekit.errors import CapExceeded
from latticekit.galois import DirectedGraph
from latticekit.lattice import chain_lattice, extremality
from latticekit.shelling import (all_source_sets, brute_force_shelling, count_maximal_chains,
                                 disjoint_source_sets, facet_adjacency, maximal_chains,
                                 shellable_verdict, strongly_connected_components)


def _interior(L, chain):
    return "".join(L.label(x) for x in chain[1:-1])


def _named_graph(L, names=None):
    G = facet_adjacency(L)
    labels = [_interior(L, c) for c in G.chains]
    if names is not None:
        labels = [names[s] for s in labels]
    edges = {(labels[u], labels[v]) for u, v in G.edges()}
    return G, labels, edges


def test_chain_counts():
    assert maximal_chains(chain_lattice(3)) == [(0, 1, 2, 3)]
    assert len(maximal_chains(fig.b2())) == 2
    L = fig.not_extremal()
    assert {_interior(L, c) for c in maximal_chains(L)} == {"begi", "bdi", "bdh", "adi", "adh", "acfh"}
    assert count_maximal_chains(L) == 6
    with pytest.raises(CapExceeded):
        maximal_chains(L, cap=5)


def test_non_extremal_facet_graph():
    L = fig.not_extremal()
    G, labels, edges = _named_graph(L)
    one_way = {e for e in edges if e[::-1] not in edges}
    two_way = {frozenset(e) for e in edges if e[::-1] in edges}
    assert one_way == fig.NOT_EXTREMAL_FA["one_way"]
    assert two_way == {frozenset(e) for e in fig.NOT_EXTREMAL_FA["two_way"]}
    assert edges == {(labels[u], labels[v]) for u, v in oracles.facet_graph(G.chains)}
    report = disjoint_source_sets(G)
    assert {tuple(labels[v] for v in s) for s in report.found} == {("begi",), ("acfh",)}


def test_extremal_facet_graph():
    L = fig.extremal_cu()
    names = {v: k for k, v in fig.EXTREMAL_CHAINS.items()}
    G, labels, edges = _named_graph(L, names)
    assert sorted(labels) == sorted(fig.EXTREMAL_CHAINS)
    assert {e for e in edges if e[::-1] not in edges} == fig.EXTREMAL_FA_ONE_WAY
    assert {frozenset(e) for e in edges if e[::-1] in edges} == {frozenset(e) for e in fig.EXTREMAL_FA_TWO_WAY}
    report = disjoint_source_sets(G, enumerate_all=True)
    assert report.found is None
    found = {frozenset(labels[v] for v in s) for s in report.all_source_sets}
    assert found == {frozenset("IHG"), frozenset("IHGECA")}


def test_single_chain_graph():
    G = facet_adjacency(chain_lattice(2))
    assert G.m == 1 and not G.edges()
    assert disjoint_source_sets(G).found is None
    assert all_source_sets(G) == []


def test_verdicts():
    L, cert = run_script(fig.NOT_EXTREMAL_SCRIPT)
    assert shellable_verdict(L, cert).verdict == "NotShellable"
    assert shellable_verdict(L).verdict == "NotShellable"
    L, cert = run_script(fig.EXTREMAL_SCRIPT)
    assert shellable_verdict(L, cert).verdict == "Shellable"
    assert shellable_verdict(fig.n5()).verdict == "Shellable"
    assert shellable_verdict(fig.m3()).verdict == "Shellable"


def test_brute_force_shelling():
    order = brute_force_shelling(fig.b2())
    assert order is not None and oracles.is_shelling(order)
    assert brute_force_shelling(fig.not_extremal()) is None
    assert not oracles.has_shelling(maximal_chains(fig.not_extremal()))
    with pytest.raises(CapExceeded):
        brute_force_shelling(fig.extremal_cu(), cap_facets=8)


def test_scc_on_small_graph():
    G = DirectedGraph.from_edges(5, [(0, 1), (1, 0), (1, 2), (3, 4), (4, 3), (2, 3)])
    comps = sorted(sorted(c) for c in strongly_connected_components(G))
    assert comps == [[0, 1], [2], [3, 4]]


@settings(max_examples=60, deadline=None)
@given(m=st.integers(1, 7), data=st.data())
def test_source_sets_match_enumeration(m, data):
    arrows = {(u, v) for u in range(m) for v in range(m) if u != v and data.draw(st.integers(0, 3)) == 0}
    G = DirectedGraph.from_edges(m, sorted(arrows))
    expected = oracles.source_sets(range(m), arrows)
    assert {frozenset(s) for s in all_source_sets(G)} == set(expected)
    disjoint = any(not (a & b) for a in expected for b in expected)
    assert (disjoint_source_sets(G).found is not None) == disjoint


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), steps=st.integers(1, 6))
def test_brute_force_agrees_with_extremality(seed, steps):
    L, cert = run_script(random_script(steps, seed, "uniform_interval", max_size=12))
    if count_maximal_chains(L) > 7:
        return
    order = brute_force_shelling(L, cap_facets=7)
    assert (order is not None) == extremality(L).extremal
    assert (order is not None) == oracles.has_shelling(maximal_chains(L))
    assert shellable_verdict(L, cert).verdict == ("Shellable" if order else "NotShellable")
