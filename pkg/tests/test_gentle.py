import itertools
import json

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from latticekit.errors import InvalidParameter, NotGentle
from latticekit.families import parabolic_tamari
from latticekit.gentle import (GentleQuiver, gentle_strings, hom_dim, hom_orthogonality_graph,
                               torsion_dim, torsion_galois_graph, torsion_lattice)
from latticekit.galois import canonical_join_graph
from latticekit.lattice import are_isomorphic, semidistributivity


def relation_tree():
    """Arrows a: 1 -> 2, b: 2 -> 3, c: 2 -> 4 with ab = 0, vertices shifted to 0..3."""
    return GentleQuiver(4, [(0, 1), (1, 2), (1, 3)], [(0, 1)])


def test_relation_tree_strings():
    T = relation_tree()
    assert T.direction == ("E", "N", "E")
    walks = {s.walk for s in gentle_strings(T)}
    assert len(walks) == 9
    assert not any({0, 1, 2} <= set(w) for w in walks)
    assert (0, 1, 3) in walks


def test_a3_sink_orientation():
    T = GentleQuiver.path([True, False])
    strings = gentle_strings(T)
    assert len(strings) == 6
    assert torsion_lattice(T).n == 14
    assert torsion_dim(T) == 3


def test_single_vertex():
    T = GentleQuiver(1, [])
    assert len(gentle_strings(T)) == 1
    assert torsion_dim(T) == 1


def test_simples_and_shared_endpoints():
    T = GentleQuiver.path([True, True, False])
    strings = gentle_strings(T)
    simples = [s for s in strings if len(s) == 0]
    for a, b in itertools.product(simples, simples):
        assert hom_dim(T, a, b) == (1 if a == b else 0)
    for a, b in itertools.combinations(strings, 2):
        if a.right_endpoint == b.right_endpoint:
            assert hom_dim(T, a, b) or hom_dim(T, b, a)


@pytest.mark.parametrize("n", range(1, 6))
def test_every_path_orientation(n):
    for orientation in itertools.product([True, False], repeat=n - 1):
        T = GentleQuiver.path(orientation)
        strings = gentle_strings(T)
        assert len(strings) == n * (n + 1) // 2
        for a, b in itertools.product(strings, strings):
            assert hom_dim(T, a, b) == oracles.hom_dimension_numpy(T.arrows, a.support, b.support)
        L = torsion_lattice(T)
        assert L.n == oracles.catalan(n + 1)
        assert semidistributivity(L).is_sd
        assert torsion_dim(T) == n


@pytest.mark.parametrize("n", range(1, 5))
def test_linear_path_is_tamari(n):
    T = GentleQuiver.path([True] * (n - 1))
    assert are_isomorphic(torsion_lattice(T), parabolic_tamari((1,) * (n + 1))[1])


def test_orthogonality_graph_is_canonical_join_graph():
    T = relation_tree()
    graph, strings = hom_orthogonality_graph(T)
    cjg = canonical_join_graph(torsion_lattice(T))
    assert torsion_galois_graph(T).m == len(strings) == cjg.m
    mine, theirs = nx.Graph(graph.edges()), nx.Graph(cjg.edges())
    mine.add_nodes_from(range(graph.m))
    theirs.add_nodes_from(range(cjg.m))
    assert nx.is_isomorphic(mine, theirs)


@pytest.mark.parametrize("n, arrows, relations", [
    (3, [(0, 1)], []),
    (3, [(0, 1), (1, 2), (2, 0)], []),
    (2, [(0, 0)], []),
    (4, [(0, 3), (1, 3), (2, 3)], []),
    (3, [(0, 1), (1, 2)], [(1, 0)]),
    (4, [(0, 1), (1, 2), (1, 3)], []),
])
def test_invalid_quivers(n, arrows, relations):
    with pytest.raises(NotGentle):
        GentleQuiver(n, arrows, relations)


def test_quiver_json():
    T = GentleQuiver.from_json(json.dumps({"vertices": 4, "arrows": [[0, 1], [1, 2], [1, 3]],
                                           "relations": [[0, 1]]}))
    assert T.relations == frozenset({(0, 1)})
    with pytest.raises(InvalidParameter):
        GentleQuiver.from_dict({"arrows": []})


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 6), data=st.data())
def test_random_gentle_trees(n, data):
    """Random relation-free trees; draws that are not gentle are skipped."""
    parents = [data.draw(st.integers(0, v - 1)) for v in range(1, n)]
    arrows = [(p, v) if data.draw(st.booleans()) else (v, p) for v, p in zip(range(1, n), parents)]
    try:
        T = GentleQuiver(n, arrows, [])
    except NotGentle:
        return
    strings = gentle_strings(T)
    for a, b in itertools.product(strings, strings):
        assert hom_dim(T, a, b) == oracles.hom_dimension_numpy(T.arrows, a.support, b.support)
    assert torsion_dim(T) == n
