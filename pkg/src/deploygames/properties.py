"""Per-instance checks of the structural results the analyses rely on.

Each function returns a list of named pass/fail ``Check`` records; the
randomized suites in :mod:`deploygames.verify` and the ``analyze`` report
both consume them.
"""
from __future__ import annotations

import itertools
from typing import NamedTuple

from .dominance import DominanceKind, ELECTION_ORDER, iterated_elimination
from .game_core import Game, NashKind, classify_profile, enumerate_pure_nash, reduce, restrict
from .graphs import (GraphKind, advancement_paths_from, build_deployment_graph,
                     maximality_report)
from .mechanisms import (ELECTION_LABELS, InsuranceParams, election_adopters,
                         election_transform, insurance_transform)
from .potential import (NoPotentialError, construct_generalized_potential,
                        construct_ordinal_potential, has_fip, is_ordinally_acyclic,
                        verify_potential)
from .staghunt import StagHunt, StagHuntClass, convergence_path, to_game, validate_stag_hunt


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str = ""


def _uniform(game: Game, label: str) -> int:
    return game.encode([labs.index(label) for labs in game.labels])


def generic_checks(game: Game, report=None, nash=None) -> list[Check]:
    report = report or maximality_report(game)
    nash = nash if nash is not None else enumerate_pure_nash(game)
    ne = {c.profile for c in nash}
    weak = set(report.weakly_maximal)
    return [
        Check("maximal states exist", bool(report.weakly_maximal) and bool(report.strongly_maximal)),
        Check("pure equilibria are weakly maximal", ne <= weak),
        Check("weakly acyclic iff weakly maximal states are pure equilibria",
              report.weakly_acyclic == (weak == ne)),
        Check("strongly maximal equilibria are pure equilibria",
              all(p in ne for cls in report.strongly_maximal_equilibrium_classes for p in cls)),
    ]


def stag_hunt_checks(sh: StagHunt) -> list[Check]:
    game = to_game(sh)
    strict = build_deployment_graph(game, GraphKind.STRICT)
    ordinal = build_deployment_graph(game, GraphKind.ORDINAL)
    rep = maximality_report(game, strict, ordinal)
    all_a, all_d = 0, game.num_profiles - 1
    nash = enumerate_pure_nash(game)
    paths_ok = True
    for pid in range(game.num_profiles):
        path = convergence_path(sh, game.decode(pid))
        if game.encode(path[-1]) not in (all_a, all_d):
            paths_ok = False
        for a, b in zip(path, path[1:]):
            mover = next(i for i in range(sh.n) if a[i] != b[i])
            if not game.payoffs[mover][game.encode(b)] > game.payoffs[mover][game.encode(a)]:
                paths_ok = False
    return [
        Check("stag hunt validates", validate_stag_hunt(game).kind is StagHuntClass.STAG_HUNT),
        Check("stag hunt is weakly acyclic", rep.weakly_acyclic),
        Check("stag hunt weakly maximal states are universal adoption and defection",
              rep.weakly_maximal == (all_a, all_d)),
        Check("stag hunt strict and ordinal graphs coincide", strict.arc_set() == ordinal.arc_set()),
        Check("stag hunt strongly maximal equals weakly maximal",
              rep.strongly_maximal == rep.weakly_maximal),
        Check("stag hunt pure equilibria are universal adoption and defection, both strict",
              [(c.profile, c.kind) for c in nash]
              == [(all_a, NashKind.STRICT), (all_d, NashKind.STRICT)]),
        Check("stag hunt convergence paths improve and end at a pure equilibrium", paths_ok),
    ]


def cycle_instance_checks(sh: StagHunt) -> list[Check]:
    game = to_game(sh)
    rep = maximality_report(game)
    return [
        Check("cyclic stag hunt validates", validate_stag_hunt(game).kind is StagHuntClass.STAG_HUNT),
        Check("cyclic stag hunt lacks the finite improvement property", not has_fip(game)),
        Check("cyclic stag hunt is still weakly acyclic", rep.weakly_acyclic),
    ]


def opt_out_check(name: str, induced: Game, basis: Game) -> Check:
    keep = [[labs.index("A"), labs.index("D")] for labs in induced.labels]
    sub = restrict(induced, keep)
    return Check(name, sub.payoffs == basis.payoffs)


def insurance_checks(sh: StagHunt, params: InsuranceParams) -> list[Check]:
    game = insurance_transform(sh, params)
    all_a = _uniform(game, "A")
    trace = iterated_elimination(game, DominanceKind.STRICT)
    rep = maximality_report(game)
    nash = enumerate_pure_nash(game)
    return [
        Check("insurance: strict iterated dominance solves to universal adoption",
              trace.survivors == tuple((0,) for _ in range(sh.n))),
        Check("insurance: elimination takes exactly two rounds", trace.num_rounds == 2),
        Check("insurance: universal adoption is the unique pure equilibrium",
              [c.profile for c in nash] == [all_a]),
        Check("insurance: universal adoption is the unique weakly and strongly maximal state",
              rep.weakly_maximal == (all_a,) and rep.strongly_maximal == (all_a,)),
        opt_out_check("insurance: opting out reproduces the basis game", game, to_game(sh)),
    ]


def election_checks(sh: StagHunt) -> list[Check]:
    game = election_transform(sh)
    n = sh.n
    everyone = (1 << n) - 1
    x, y = ELECTION_LABELS.index("X"), ELECTION_LABELS.index("Y")
    trace = iterated_elimination(game, DominanceKind.WEAK, ELECTION_ORDER)
    rep = maximality_report(game)
    all_a, all_d = _uniform(game, "A"), _uniform(game, "D")
    all_x, all_y = _uniform(game, "X"), _uniform(game, "Y")
    classes = rep.strongly_maximal_equilibrium_classes
    return [
        Check("election: weak elimination in election order leaves only vote strategies",
              all(set(s) <= {x, y} for s in trace.survivors)),
        Check("election: surviving profiles realize universal adoption",
              all(election_adopters(game.decode(p)) == everyone
                  for p in trace.surviving_profiles(game))),
        Check("election: induced game is weakly ordinally acyclic", rep.weakly_ordinally_acyclic),
        Check("election: strongly maximal equilibria realize universal adoption",
              bool(classes) and all(election_adopters(game.decode(p)) == everyone
                                    for cls in classes for p in cls)),
        Check("election: universal adoption, all-X and all-Y share one equilibrium class",
              any({all_a, all_x, all_y} <= set(cls) for cls in classes)),
        Check("election: universal defection is a weak, not strict, pure equilibrium",
              classify_profile(game, all_d) is NashKind.WEAK),
        Check("election: universal defection is not strongly maximal",
              all_d not in rep.strongly_maximal),
        opt_out_check("election: opting out reproduces the basis game", game, to_game(sh)),
    ]


def _is_positive_cycle(game: Game, cycle) -> bool:
    """Independent check that ``cycle`` is a closed path of non-harmful switches with a gain."""
    if cycle is None or len(cycle) < 3 or cycle[0] != cycle[-1]:
        return False
    gain = False
    for a, b in zip(cycle, cycle[1:]):
        ca, cb = game.decode(a), game.decode(b)
        diff = [i for i in range(game.n) if ca[i] != cb[i]]
        if len(diff) != 1:
            return False
        d = game.payoffs[diff[0]][b] - game.payoffs[diff[0]][a]
        if d < 0:
            return False
        gain = gain or d > 0
    return gain


def potential_checks(game: Game, consistency: bool = True) -> list[Check]:
    strict = build_deployment_graph(game, GraphKind.STRICT)
    ordinal = build_deployment_graph(game, GraphKind.ORDINAL)
    acyclic = is_ordinally_acyclic(game, ordinal)
    fip = has_fip(game, strict)
    try:
        cert = construct_ordinal_potential(game, ordinal)
        built = verify_potential(game, cert)
    except NoPotentialError as exc:
        built = False
        if not _is_positive_cycle(game, exc.witness):
            return [Check("ordinal acyclicity iff a verified ordinal potential exists", False,
                          "bad witness cycle")]
    try:
        gen_ok = verify_potential(game, construct_generalized_potential(game, strict))
    except NoPotentialError:
        gen_ok = False
    rep = maximality_report(game, strict, ordinal)
    out = [
        Check("ordinal acyclicity iff a verified ordinal potential exists", bool(acyclic) == built),
        Check("finite improvement property iff a verified generalized potential exists",
              bool(fip) == gen_ok),
        Check("an improvement cycle implies a positive ordinal cycle", bool(fip) or not acyclic),
        Check("ordinal potential games have a strongly maximal equilibrium class",
              not acyclic or bool(rep.strongly_maximal_equilibrium_classes)),
    ]
    if acyclic:
        strong = set(rep.strongly_maximal)
        out.append(Check("strongly maximal iff no advancement path starts there",
                         all((p in strong) == (not advancement_paths_from(ordinal, p))
                             for p in range(game.num_profiles))))
        if consistency:
            out.append(consistency_check(game, rep))
    return out


def consistency_check(game: Game, rep=None) -> Check:
    """Reduced games at strongly maximal equilibria stay ordinally acyclic and keep them."""
    rep = rep or maximality_report(game)
    for cls in rep.strongly_maximal_equilibrium_classes:
        for s in cls:
            choices = game.decode(s)
            for size in range(1, game.n):
                for coalition in itertools.combinations(range(game.n), size):
                    sub = reduce(game, coalition, s)
                    if not is_ordinally_acyclic(sub):
                        return Check("strongly maximal equilibria are consistent", False,
                                     f"reduced game at {s} for {coalition} has a positive cycle")
                    target = sub.encode([choices[j] for j in coalition])
                    if target not in maximality_report(sub).strongly_maximal:
                        return Check("strongly maximal equilibria are consistent", False,
                                     f"{s} restricted to {coalition} is not strongly maximal")
    return Check("strongly maximal equilibria are consistent", True)


def one_person_check(game: Game) -> Check:
    best = max(game.payoffs[0])
    argmax = tuple(p for p in range(game.num_profiles) if game.payoffs[0][p] == best)
    return Check("one-person games: strongly maximal states are the payoff maximizers",
                 maximality_report(game).strongly_maximal == argmax)
