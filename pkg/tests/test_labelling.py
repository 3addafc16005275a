import pytest
from hypothesis import given, settings, strategies as st

import figures as fig
import oracles
from latticekit.doubling import (ConvexSet, DoublingScript, double, one_element_lattice, random_script,
                                 run_script)
from latticekit.labelling import (find_lm_chain, gamma_labellings, is_el_labelling,
                                  is_left_modular_element, left_modular, lm_witness,
                                  verify_labelling_theorem)
from latticekit.lattice import length_spine, longest_chains, semidistributivity


def _lattice(seed, steps, mode="normal", cap=20):
    return run_script(random_script(steps, seed, mode, max_size=cap), with_lm=False)[0]


@pytest.mark.parametrize("make, chain, expected", [
    (fig.n5, fig.LEFT_CHAIN, fig.LEFT_LABELS),
    (fig.labelling_right, fig.RIGHT_CHAIN, fig.RIGHT_LABELS),
])
def test_drawn_labels(make, chain, expected):
    L = make()
    labs = gamma_labellings(L, chain)
    assert {e: (labs.gamma1p[e], labs.gamma2p[e]) for e in L.covers} == expected
    assert labs.gamma1.labels == labs.gamma1p.labels
    assert labs.gamma2.labels == labs.gamma2p.labels


def test_left_figure_chain_is_left_modular():
    L = fig.n5()
    verdict = verify_labelling_theorem(L, fig.LEFT_CHAIN)
    assert verdict.equality and verdict.all_phi_lm
    assert is_el_labelling(L, gamma_labellings(L, fig.LEFT_CHAIN).gamma1)


def test_right_figure_breaks_equality_at_x1():
    L = fig.labelling_right()
    verdict = verify_labelling_theorem(L, fig.RIGHT_CHAIN)
    assert not verdict.equality and not verdict.all_phi_lm
    # the only failing chain element is x1, witnessed by the cover b < c
    assert [is_left_modular_element(L, x) for x in fig.RIGHT_CHAIN] == [True, False, True, True]
    assert lm_witness(L, 1) == (3, 5)


def test_pentagon_left_modular_elements():
    L = fig.n5()
    assert not is_left_modular_element(L, 3)
    assert [is_left_modular_element(L, x) for x in range(L.n)] == [oracles.is_left_modular(L, x)
                                                                  for x in range(L.n)]


def test_lm_chain_absent_in_left_modular_figure_sequence():
    L, _ = run_script(_script_from_labels(fig.LEFT_MODULAR_STEPS))
    assert L.n == 12
    report = left_modular(L)
    assert report.lm_chain is None
    assert {L.label(x) for x in report.lm_elements} == {"00000", "10101", "10111", "11111"}


def _script_from_labels(steps):
    """Replay label-named convex sets; each doubled element x becomes x0 and x1."""
    L = one_element_lattice()
    out = []
    for names in steps:
        index = {L.label(x): x for x in range(L.n)}
        ids = sorted(index[n] for n in names)
        out.append({"convex": ids})
        L = double(L, ConvexSet(L, ids))
    return DoublingScript(out)


def test_el_labelling_checker_rejects_a_bad_labelling():
    L = fig.b2()
    constant = {e: 1 for e in L.covers}
    assert not is_el_labelling(L, constant)
    assert is_el_labelling(L, {(0, 1): 1, (1, 3): 2, (0, 2): 2, (2, 3): 1})


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), steps=st.integers(1, 8))
def test_labelling_theorem_on_random_lattices(seed, steps):
    L = _lattice(seed, steps)
    for chain in longest_chains(L, limit=3):
        verdict = verify_labelling_theorem(L, chain)
        assert verdict.equality == all(oracles.is_left_modular(L, x) for x in chain)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), steps=st.integers(1, 7))
def test_left_modularity_matches_lattice_identity(seed, steps):
    L = _lattice(seed, steps, cap=16)
    assert [is_left_modular_element(L, x) for x in range(L.n)] == \
        [oracles.is_left_modular(L, x) for x in range(L.n)]


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), steps=st.integers(1, 8))
def test_semidistributive_labels_translate(seed, steps):
    L = _lattice(seed, steps, mode="uniform_interval")
    sd = semidistributivity(L)
    assert sd.is_sd
    labs = gamma_labellings(L)
    for e in L.covers:
        assert labs.gamma1[e] == labs.gamma1.delta[sd.gammaJ[e]]
        assert labs.gamma2[e] == labs.gamma2.beta[sd.gammaM[e]]


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), steps=st.integers(1, 8))
def test_maximal_left_modular_chain_is_longest(seed, steps):
    L = _lattice(seed, steps)
    report = left_modular(L)
    if report.lm_chain is not None:
        assert len(report.lm_chain) - 1 == length_spine(L)[0]
        assert all(oracles.is_left_modular(L, x) for x in report.lm_chain)
    mask = sum(1 << x for x in report.lm_elements)
    assert find_lm_chain(L, mask) == report.lm_chain

