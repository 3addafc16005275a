import json
import random

import pytest
from hypothesis import given, settings, strategies as st

import figures as fig
import oracles
from latticekit import bits
from latticekit.doubling import (ConvexSet, DoublingScript, certify, double, heart, one_element_lattice,
                                 random_script, run_script)
from latticekit.errors import EmptyConvexSet, InvalidParameter, NotConvex
from latticekit.labelling import left_modular
from latticekit.lattice import Poset, chain_lattice, extremality, length_spine, semidistributivity
from latticekit.shelling import disjoint_source_sets, facet_adjacency


def day_doubling_oracle(L, C):
    """L[C] as the subposet (I x 0) + ((L - I) + C) x 1 of L x 2, where I is the down-closure of C."""
    I = set()
    for c in C:
        I |= set(bits.iter_bits(L.down[c]))
    # numbered along a linear extension of the product order
    elems = sorted([(x, 0) for x in I] + [(x, 1) for x in range(L.n) if x not in I or x in C],
                   key=lambda p: bits.popcount(L.down[p[0]]) + p[1])
    index = {p: i for i, p in enumerate(elems)}
    down = [sum(1 << index[q] for q in elems if L.leq(q[0], p[0]) and q[1] <= p[1]) for p in elems]
    return Poset.from_down_sets(down)


def test_one_element_start():
    L = one_element_lattice()
    assert L.n == 1
    assert run_script(DoublingScript([]))[0].n == 1


@pytest.mark.parametrize("make, C", [(fig.n5, [2]), (fig.b2, [1, 3]), (fig.n5, [1, 2, 3, 4]),
                                     (fig.extremal_cu, [4, 6]), (fig.not_extremal, [2, 3])])
def test_doubling_matches_product_construction(make, C):
    L = make()
    cs = ConvexSet.hull(L, C)
    D = double(L, cs)
    assert D.n == L.n + len(cs)
    assert oracles.nx_isomorphic(D, day_doubling_oracle(L, cs.elements))


def test_convex_set_errors():
    L = fig.n5()
    with pytest.raises(EmptyConvexSet):
        ConvexSet(L, [])
    with pytest.raises(NotConvex):
        ConvexSet(L, [0, 4])
    assert ConvexSet.hull(L, [0, 4]).elements == list(range(5))


def test_heart_of_interval_is_interval():
    L = fig.extremal_cu()
    C = ConvexSet.interval(L, 2, 9)
    assert heart(L, C) == frozenset(C.elements)
    assert heart(L, ConvexSet.hull(L, [1, 2])) == frozenset()


@pytest.mark.parametrize("script, make, extremal", [
    (fig.NOT_EXTREMAL_SCRIPT, fig.not_extremal, False),
    (fig.EXTREMAL_SCRIPT, fig.extremal_cu, True),
])
def test_figure_scripts(script, make, extremal):
    L, cert = run_script(script)
    assert oracles.nx_isomorphic(L, make())
    assert cert.congruence_uniform
    verdicts = certify(cert)
    assert verdicts.extremal is extremal and verdicts.left_modular is extremal
    assert extremality(L).extremal is extremal
    assert [s.hits_spine for s in cert.steps][-1] is extremal


def test_script_json_roundtrip_and_errors():
    script = random_script(5, 3)
    again = DoublingScript.from_json(script.to_json())
    assert again.steps == script.steps
    with pytest.raises(InvalidParameter):
        DoublingScript.from_dict({"steps": [{"interval": [0]}]})
    with pytest.raises(InvalidParameter):
        DoublingScript.from_dict({"moves": []})
    with pytest.raises(InvalidParameter):
        random_script(0, 1)
    with pytest.raises(InvalidParameter):
        random_script(3, 1, mode="sideways")
    with pytest.raises(NotConvex) as info:
        run_script(DoublingScript([{"interval": [0, 0]}, {"convex": [0, 2]}]))
    assert "2" in str(info.value)
    assert json.loads(script.to_json())["steps"]


def test_random_scripts_are_reproducible():
    assert random_script(6, 11).steps == random_script(6, 11).steps
    assert run_script(random_script(8, 4, max_size=15))[0].n <= 15


def test_chain_doubling_stays_a_chain():
    L = chain_lattice(3)
    D = double(L, ConvexSet(L, [3]))
    assert D.n == 5 and length_spine(D)[0] == 4


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), steps=st.integers(1, 9),
       mode=st.sampled_from(["uniform_interval", "force_spine", "normal"]))
def test_doubling_invariants(seed, steps, mode):
    L, cert = run_script(random_script(steps, seed, mode, max_size=28))
    # interval doublings keep semidistributivity
    if cert.congruence_uniform:
        assert semidistributivity(L).is_sd
    assert L.n == 1 + sum(len(s.convex) for s in cert.steps)
    verdicts = certify(cert)
    if cert.congruence_uniform:
        ext = extremality(L).extremal
        assert verdicts.extremal == ext
        assert (left_modular(L).lm_chain is not None) == ext
        assert (disjoint_source_sets(facet_adjacency(L)).found is None) == ext


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), steps=st.integers(1, 6))
def test_double_matches_oracle_on_random_sets(seed, steps):
    L, _ = run_script(random_script(steps, seed, "normal", max_size=14))
    rng = random.Random(seed)
    C = ConvexSet.hull(L, rng.sample(range(L.n), min(L.n, 2)))
    assert oracles.nx_isomorphic(double(L, C), day_doubling_oracle(L, C.elements))
