import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from deploygames.game_core import Game, enumerate_pure_nash, classic_stag_hunt
from deploygames.graphs import maximality_report
from deploygames.potential import has_fip
from deploygames.staghunt import (A, D, NetworkAdoptionGame, StagHunt, StagHuntClass,
                                  StagHuntError, convergence_path, find_cycle_instance,
                                  network_to_game, random_stag_hunt, to_game, validate_stag_hunt)


def test_schedule_reproduces_classic_matrix():
    assert to_game(StagHunt.from_schedule([[-1, 10], [-1, 10]])) == classic_stag_hunt()


def test_three_player_payoff():
    sh = StagHunt.from_schedule([[-1, 1, 2]] * 3)
    assert sh.payoff((A, A, D)) == (1, 1, 0)


def test_universal_defection_pays_c():
    sh = StagHunt.from_schedule([[-3, 1, 4]] * 3, c=2)
    assert sh.payoff((D, D, D)) == (2, 2, 2)


def test_validate_classic_matrix():
    check = validate_stag_hunt(classic_stag_hunt())
    assert check.kind is StagHuntClass.STAG_HUNT
    assert check.stag_hunt.schedule == ((-1, 10), (-1, 10))


def test_prisoners_dilemma_is_not_a_stag_hunt():
    pd = Game.from_matrix([[(3, 3), (0, 5)], [(5, 0), (1, 1)]], ["A", "D"], ["A", "D"])
    check = validate_stag_hunt(pd)
    assert check.kind is StagHuntClass.NOT_STAG_HUNT
    assert "constant" in check.reason


def test_validate_needs_two_strategies():
    g = Game.from_function([["a", "b", "c"], ["x", "y"]], lambda ch: [0, 0])
    with pytest.raises(StagHuntError):
        validate_stag_hunt(g)


def test_disconnected_network_is_a_weak_variant():
    ng = NetworkAdoptionGame.create(4, [(0, 1), (2, 3)], [3] * 4, [1, 4, 6, 8])
    assert validate_stag_hunt(network_to_game(ng)).kind is StagHuntClass.WEAK_VARIANT


def test_network_payoffs():
    ng = NetworkAdoptionGame.create(3, [(0, 1), (1, 2)], [3] * 3, [2, 4, 6])
    assert ng.payoff((A, A, D)) == (1, 1, 0)
    assert ng.payoff((D, D, D)) == (0, 0, 0)
    assert ng.payoff((D, A, D))[1] == -1


def test_convergence_paths_on_classic_game():
    sh = StagHunt.from_schedule([[-1, 10], [-1, 10]])
    assert convergence_path(sh, (A, D)) == [(A, D), (D, D)]
    assert convergence_path(sh, (A, A)) == [(A, A)]
    assert convergence_path(sh, (D, D)) == [(D, D)]


def test_cycle_instance():
    sh = find_cycle_instance(3)
    g = to_game(sh)
    assert sh.classify()[0] is StagHuntClass.STAG_HUNT
    assert not has_fip(g)
    assert maximality_report(g).weakly_acyclic


def test_cycle_search_only_for_three_players():
    with pytest.raises(StagHuntError):
        find_cycle_instance(4)


def test_count_based_three_player_stag_hunts_have_fip():
    # Any improvement cycle needs some player to leave at a count where it
    # also joined, which a count-only schedule forbids.
    values = [-3, -2, -1, 1, 2, 3]
    schedules = [s for s in itertools.combinations(values, 3) if s[0] < 0 < s[2]]
    for triple in itertools.product(schedules, repeat=3):
        sh = StagHunt.from_schedule(triple, validate=False)
        assert has_fip(to_game(sh)), triple


@pytest.mark.parametrize("n", [2, 3])
def test_small_schedules_exhaustively_weakly_acyclic(n):
    values = [-2, -1, 1, 2, 3][: n + 2]
    schedules = [s for s in itertools.combinations(values, n) if s[0] < 0 < s[-1]]
    checked = 0
    for rows in itertools.product(schedules, repeat=n):
        sh = StagHunt.from_schedule(rows, validate=False)
        if sh.classify()[0] is not StagHuntClass.STAG_HUNT:
            continue
        g = to_game(sh)
        rep = maximality_report(g)
        assert rep.weakly_acyclic and rep.weakly_maximal == (0, g.num_profiles - 1), rows
        checked += 1
    assert checked > 0


def test_interior_equilibrium_is_not_a_stag_hunt():
    early, late = [-5, 1, 2, 3], [-5, -4, -3, 3]
    sh = StagHunt.from_schedule([early, early, late, late], validate=False)
    kind, reason = sh.classify()
    assert kind is StagHuntClass.NOT_STAG_HUNT and "equilibri" in reason
    g = to_game(sh)
    assert g.pid((A, A, D, D)) in {c.profile for c in enumerate_pure_nash(g)}
    # weak acyclicity survives even here
    assert maximality_report(g).weakly_acyclic


def test_identity_dependent_payoffs_have_no_schedule():
    sh = find_cycle_instance(3)
    assert sh.schedule is None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 4), st.booleans())
def test_random_stag_hunts_validate_and_converge(seed, n, identity):
    sh = random_stag_hunt(random.Random(seed), n, identity=identity)
    assert sh.classify()[0] is StagHuntClass.STAG_HUNT
    top, bottom = (A,) * n, (D,) * n
    for start in itertools.product((A, D), repeat=n):
        path = convergence_path(sh, start)
        assert path[-1] in (top, bottom)
        for a, b in zip(path, path[1:]):
            (mover,) = [i for i in range(n) if a[i] != b[i]]
            assert sh.payoff(b)[mover] > sh.payoff(a)[mover]


def test_set_function_constructor():
    sh = StagHunt.from_set_function(2, lambda i, s: Fraction(10) if len(s) == 2 else Fraction(-1))
    assert to_game(sh) == classic_stag_hunt()
