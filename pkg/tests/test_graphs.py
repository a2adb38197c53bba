import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from deploygames.game_core import (Game, classic_stag_hunt, generalized_potential_example,
                                   random_game)
from deploygames.graphs import (GraphKind, GraphKindError, advancement_paths_from,
                                build_deployment_graph, is_incrementally_deployable,
                                maximality_report)

SH = classic_stag_hunt()
MS = generalized_potential_example()


def _named_arcs(game, kind):
    g = build_deployment_graph(game, kind)
    return {(game.profile_labels(u), game.profile_labels(v), pos) for u, v, pos in g.arc_set()}


def test_stag_hunt_strict_arcs():
    assert _named_arcs(SH, GraphKind.STRICT) == {
        (("A", "D"), ("D", "D"), True), (("A", "D"), ("A", "A"), True),
        (("D", "A"), ("D", "D"), True), (("D", "A"), ("A", "A"), True)}


def test_flat_one_player_game():
    g = Game.from_function([["a", "b"]], lambda ch: [0])
    assert build_deployment_graph(g, GraphKind.STRICT).arc_set() == set()
    assert build_deployment_graph(g, GraphKind.ORDINAL).arc_set() == {(0, 1, False), (1, 0, False)}


def test_gp_example_ordinal_arcs():
    assert _named_arcs(MS, "ordinal") == {
        (("T", "L"), ("B", "L"), True), (("B", "L"), ("B", "R"), True),
        (("B", "R"), ("T", "R"), True),
        (("T", "R"), ("T", "L"), False), (("T", "L"), ("T", "R"), False)}


def test_stag_hunt_condensation():
    cond = build_deployment_graph(SH, GraphKind.STRICT).condensation
    assert len(cond.classes) == 4
    assert sorted(cond.classes[k] for k in cond.sinks) == [(0,), (3,)]


def test_gp_example_single_class():
    cond = build_deployment_graph(MS, GraphKind.ORDINAL).condensation
    assert cond.classes == ((0, 1, 2, 3),) and cond.sinks == (0,)


def test_empty_graph_all_sinks():
    g = Game.from_function([["a", "b"], ["x", "y"]], lambda ch: [0, 0])
    cond = build_deployment_graph(g, GraphKind.STRICT).condensation
    assert len(cond.classes) == 4
    assert cond.sinks == tuple(range(len(cond.classes)))


def test_stag_hunt_maximality():
    r = maximality_report(SH)
    assert r.weakly_maximal == r.strongly_maximal == (0, 3)
    assert r.strongly_maximal_equilibrium_classes == ((0,), (3,))
    assert r.weakly_acyclic and r.weakly_ordinally_acyclic


def test_gp_example_maximality():
    r = maximality_report(MS)
    assert r.strongly_maximal == (0, 1, 2, 3)
    assert r.strongly_maximal_equilibrium_classes == ()
    assert not r.weakly_ordinally_acyclic


def test_one_player_maximal_states_are_argmax():
    g = Game.from_function([["a", "b", "c", "d"]], lambda ch: [(1, 4, 2, 4)[ch[0]]])
    r = maximality_report(g)
    assert r.weakly_maximal == r.strongly_maximal == (1, 3)


def test_incremental_deployability():
    g = build_deployment_graph(SH, GraphKind.STRICT)
    aa, ad, dd = SH.pid(("A", "A")), SH.pid(("A", "D")), SH.pid(("D", "D"))
    assert is_incrementally_deployable(g, aa, ad)
    assert not is_incrementally_deployable(g, dd, aa)
    assert is_incrementally_deployable(g, dd, dd)


def test_advancement_paths():
    g = build_deployment_graph(SH, GraphKind.ORDINAL)
    assert not advancement_paths_from(g, SH.pid(("A", "A")))
    assert advancement_paths_from(g, SH.pid(("A", "D")))
    lone = build_deployment_graph(Game.from_function([["a"]], lambda ch: [0]), GraphKind.ORDINAL)
    assert not advancement_paths_from(lone, 0)
    with pytest.raises(GraphKindError):
        advancement_paths_from(build_deployment_graph(SH, GraphKind.STRICT), 0)


games = st.builds(
    lambda seed, sizes: random_game(random.Random(seed), sizes, range(-2, 3)),
    st.integers(0, 10 ** 6), st.lists(st.integers(1, 3), min_size=1, max_size=3))


@settings(max_examples=150, deadline=None)
@given(games)
def test_maximal_states_match_closure_oracle(g):
    r = maximality_report(g)
    assert {g.decode(p) for p in r.weakly_maximal} == oracles.maximal(g, strict=True)
    assert {g.decode(p) for p in r.strongly_maximal} == oracles.maximal(g, strict=False)


@settings(max_examples=100, deadline=None)
@given(games)
def test_weakly_maximal_contains_equilibria(g):
    r = maximality_report(g)
    assert set(oracles.nash(g)) <= {g.decode(p) for p in r.weakly_maximal}
    assert r.weakly_acyclic == (set(oracles.nash(g)) == {g.decode(p) for p in r.weakly_maximal})
