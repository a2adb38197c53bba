import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from deploygames.game_core import (Game, classic_stag_hunt, generalized_potential_example,
                                   random_game)
from deploygames.potential import (NoPotentialError, PotentialCertificate, PotentialKind,
                                   construct_generalized_potential, construct_ordinal_potential,
                                   has_fip, is_ordinally_acyclic, verify_potential)
from deploygames.staghunt import find_cycle_instance, to_game

MS = generalized_potential_example()


def test_stag_hunt_is_ordinally_acyclic():
    assert is_ordinally_acyclic(classic_stag_hunt())


def test_gp_example_witness():
    check = is_ordinally_acyclic(MS)
    assert not check
    assert [MS.profile_labels(p) for p in check.witness] == [
        ("T", "L"), ("B", "L"), ("B", "R"), ("T", "R"), ("T", "L")]


def test_one_player_games_are_acyclic():
    g = Game.from_function([["a", "b", "c"]], lambda ch: [(2, 2, 1)[ch[0]]])
    assert is_ordinally_acyclic(g)


def test_stag_hunt_potential():
    g = classic_stag_hunt()
    cert = construct_ordinal_potential(g)
    assert verify_potential(g, cert)
    v = cert.values
    aa, ad, da, dd = (g.pid(p) for p in [("A", "A"), ("A", "D"), ("D", "A"), ("D", "D")])
    assert v[ad] < v[aa] and v[ad] < v[dd] and v[da] < v[aa] and v[da] < v[dd]


def test_flat_game_has_constant_potential():
    g = Game.from_function([["a", "b"], ["x", "y"]], lambda ch: [1, 1])
    assert len(set(construct_ordinal_potential(g).values)) == 1


def test_gp_example_has_no_ordinal_potential():
    with pytest.raises(NoPotentialError) as err:
        construct_ordinal_potential(MS)
    assert err.value.witness[0] == err.value.witness[-1]


def test_constant_potential_fails_with_positive_arc():
    cert = PotentialCertificate((Fraction(0),) * 4, PotentialKind.ORDINAL)
    assert not verify_potential(classic_stag_hunt(), cert)


def test_gp_example_generalized_potential():
    values = {("T", "L"): 0, ("B", "L"): 1, ("B", "R"): 2, ("T", "R"): 3}
    vec = [Fraction(0)] * 4
    for labels, v in values.items():
        vec[MS.pid(labels)] = Fraction(v)
    cert = PotentialCertificate(tuple(vec), PotentialKind.GENERALIZED_ORDINAL)
    assert verify_potential(MS, cert)
    assert not verify_potential(MS, PotentialCertificate(tuple(vec), PotentialKind.ORDINAL))


def test_fip_examples():
    assert has_fip(MS)
    assert has_fip(classic_stag_hunt())
    g = to_game(find_cycle_instance(3))
    check = has_fip(g)
    assert not check and len(check.witness) > 2


games = st.builds(
    lambda seed, sizes: random_game(random.Random(seed), sizes, range(-2, 3)),
    st.integers(0, 10 ** 6), st.lists(st.integers(1, 3), min_size=1, max_size=3))


@settings(max_examples=200, deadline=None)
@given(games)
def test_acyclicity_matches_oracle_and_certificates_verify(g):
    acyclic = bool(is_ordinally_acyclic(g))
    assert acyclic == oracles.ordinally_acyclic(g)
    if acyclic:
        assert verify_potential(g, construct_ordinal_potential(g))
    assert bool(has_fip(g)) == (not oracles.has_improvement_cycle(g))
    if has_fip(g):
        assert verify_potential(g, construct_generalized_potential(g))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-1, 1), min_size=8, max_size=8))
def test_two_by_two_potential_matches_exhaustive_search(vals):
    g = Game.from_function([["a", "b"], ["x", "y"]],
                           lambda ch: vals[2 * (ch[0] + 2 * ch[1]):2 * (ch[0] + 2 * ch[1]) + 2])
    assert bool(is_ordinally_acyclic(g)) == oracles.ordinal_potential_exists_2x2(g)
