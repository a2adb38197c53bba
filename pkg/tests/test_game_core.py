import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from deploygames.game_core import (CoalitionError, Game, GameError, NashKind, ProfileCapError,
                                   as_fraction, check_profile_count, classify_profile,
                                   enumerate_pure_nash, generalized_potential_example,
                                   classic_stag_hunt, random_game, reduce, restrict, scale_payoffs,
                                   unilateral_deviations)


def test_classic_stag_hunt_equilibria():
    g = classic_stag_hunt()
    got = [(g.profile_labels(c.profile), c.kind) for c in enumerate_pure_nash(g)]
    assert got == [(("A", "A"), NashKind.STRICT), (("D", "D"), NashKind.STRICT)]


def test_one_player_argmax_is_strict():
    g = Game.from_function([["a", "b"]], lambda ch: [(3, 5)[ch[0]]])
    assert [(c.profile, c.kind) for c in enumerate_pure_nash(g)] == [(1, NashKind.STRICT)]


def test_gp_example_unique_weak_equilibrium():
    g = generalized_potential_example()
    (only,) = enumerate_pure_nash(g)
    assert g.profile_labels(only.profile) == ("T", "R")
    assert g.payoff(only.profile) == (2, 0)
    assert only.kind is NashKind.WEAK


def test_profile_ids_put_player_zero_first():
    g = Game.from_function([["a", "b"], ["x", "y", "z"]], lambda ch: [0, 0])
    assert [g.decode(p) for p in range(6)] == [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)]
    assert g.pid(("b", "z")) == 5
    assert g.pid((1, 2)) == 5


def test_deviations_from_universal_adoption():
    g = classic_stag_hunt()
    devs = unilateral_deviations(g, ("A", "A"))
    assert [(d.player, g.profile_labels(d.profile), d.delta) for d in devs] == [
        (0, ("D", "A"), -10), (1, ("A", "D"), -10)]


def test_deviations_from_universal_defection():
    g = classic_stag_hunt()
    assert [d.delta for d in unilateral_deviations(g, ("D", "D"))] == [-1, -1]


def test_deviation_count_formula():
    g = Game.from_function([["a", "b", "c"], ["x", "y"], ["p", "q", "r", "s"]], lambda ch: [0] * 3)
    assert len(unilateral_deviations(g, 0)) == 2 + 1 + 3


def test_reduce_examples():
    g = classic_stag_hunt()
    r = reduce(g, [1], ("A", "A"))
    assert r.labels == (("A", "D"),) and r.payoffs == ((10, 0),)
    r = reduce(g, [1], ("D", "D"))
    assert r.payoffs == ((-1, 0),)


def test_reduce_composes():
    rng = random.Random(3)
    g = random_game(rng, [2, 3, 2, 2])
    anchor = (1, 2, 0, 1)
    direct = reduce(g, [1, 3], anchor)
    mid = reduce(g, [0, 1, 3], anchor)
    nested = reduce(mid, [1, 2], (anchor[0], anchor[1], anchor[3]))
    assert direct == nested


@pytest.mark.parametrize("coalition", [[], [0, 1], [5]])
def test_reduce_rejects_bad_coalitions(coalition):
    with pytest.raises(CoalitionError):
        reduce(classic_stag_hunt(), coalition, 0)


def test_profile_cap_and_override(monkeypatch):
    with pytest.raises(ProfileCapError):
        check_profile_count([2] * 25)
    monkeypatch.setenv("DEPLOYGAMES_PROFILE_CAP", "8")
    with pytest.raises(ProfileCapError):
        check_profile_count([2] * 4)
    assert check_profile_count([2] * 3) == 8


def test_fraction_parsing():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction(-2) == -2
    with pytest.raises(GameError):
        as_fraction(0.5)
    with pytest.raises(GameError):
        as_fraction(True)


def test_restrict_picks_sub_table():
    g = classic_stag_hunt()
    sub = restrict(g, [[1], [0, 1]])
    assert sub.labels == (("D",), ("A", "D"))
    assert sub.payoffs == ((0, 0), (-1, 0))


games = st.builds(
    lambda seed, sizes: random_game(random.Random(seed), sizes, range(-2, 3)),
    st.integers(0, 10 ** 6), st.lists(st.integers(1, 3), min_size=1, max_size=3))


@settings(max_examples=150, deadline=None)
@given(games)
def test_nash_matches_brute_force(g):
    got = {g.decode(c.profile): c.kind.value for c in enumerate_pure_nash(g)}
    assert got == oracles.nash(g)


@settings(max_examples=100, deadline=None)
@given(games, st.data())
def test_encode_decode_round_trip(g, data):
    pid = data.draw(st.integers(0, g.num_profiles - 1))
    assert g.encode(g.decode(pid)) == pid


@settings(max_examples=100, deadline=None)
@given(games, st.lists(st.integers(1, 5), min_size=3, max_size=3))
def test_positive_scaling_keeps_equilibria(g, factors):
    scaled = scale_payoffs(g, factors[:g.n])
    assert [classify_profile(scaled, p) for p in range(g.num_profiles)] == \
        [classify_profile(g, p) for p in range(g.num_profiles)]
