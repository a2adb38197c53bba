"""Assemble analysis results into a JSON-ready report with stable field order."""
from __future__ import annotations

import json
from fractions import Fraction

from .dominance import DominanceKind, iterated_elimination
from .dynamics import DynamicsConfig, Recurrence, empirical_recurrence
from .game_core import Game, enumerate_pure_nash, format_fraction
from .gamefile import GameFile
from .graphs import GraphKind, build_deployment_graph, maximality_report
from .mechanisms import InsuranceParams
from .potential import NoPotentialError, construct_ordinal_potential, has_fip, \
    is_ordinally_acyclic
from .staghunt import StagHuntClass, validate_stag_hunt
from .properties import election_checks, generic_checks, insurance_checks, potential_checks, \
    stag_hunt_checks

CONSISTENCY_LIMIT = 1024


def profile_entry(game: Game, pid: int) -> dict:
    return {"id": pid, "profile": list(game.profile_labels(pid))}


def _profiles(game, pids):
    return [profile_entry(game, p) for p in pids]


def _rational(x: Fraction) -> str:
    return format_fraction(x)


def dynamics_summary(game: Game, rec: Recurrence, cfg: DynamicsConfig) -> dict:
    cond = build_deployment_graph(game, cfg.kind.graph_kind).condensation
    return {
        "kind": cfg.kind.value,
        "seed": cfg.seed,
        "trials": rec.trials,
        "max_steps": cfg.max_steps,
        "burn_in": cfg.burn_in,
        "classes": [
            {"class": k, "sink": k in cond.sink_set, "frequency": f"{freq:.6f}",
             "profiles": _profiles(game, cond.classes[k])}
            for k, freq in rec.frequencies.items()
        ],
        "absorbed_fraction": f"{rec.absorbed_fraction:.6f}",
        "sink_mass": f"{rec.sink_mass:.6f}",
        "sink_exits": rec.sink_exits,
        "sink_correspondence": rec.sink_exits == 0,
    }


def analyze(game: Game, source: GameFile | None = None, dominance: str = "strict",
            order: str = "simultaneous", dynamics: DynamicsConfig | None = None,
            trials: int = 0, force: bool = False) -> dict:
    strict = build_deployment_graph(game, GraphKind.STRICT)
    ordinal = build_deployment_graph(game, GraphKind.ORDINAL)
    nash = enumerate_pure_nash(game)
    rep = maximality_report(game, strict, ordinal)
    trace = iterated_elimination(game, DominanceKind(dominance), order)
    acyclic = is_ordinally_acyclic(game, ordinal)
    fip = has_fip(game, strict)
    try:
        values = [_rational(v) for v in construct_ordinal_potential(game, ordinal).values]
    except NoPotentialError:
        values = None

    out: dict = {"game": {
        "players": game.n,
        "strategies": [list(l) for l in game.labels],
        "profiles": game.num_profiles,
    }}
    if source is not None:
        out["game"]["format"] = source.format
        if source.mechanism is not None:
            out["game"]["mechanism"] = source.mechanism.kind
    out["pure_nash"] = [dict(profile_entry(game, c.profile), kind=c.kind.value) for c in nash]
    out["maximality"] = {
        "weakly_maximal": _profiles(game, rep.weakly_maximal),
        "strongly_maximal": _profiles(game, rep.strongly_maximal),
        "weak_sink_classes": [[p for p in cls] for cls in rep.weak_sink_classes],
        "strong_sink_classes": [[p for p in cls] for cls in rep.strong_sink_classes],
        "strongly_maximal_equilibrium_classes":
            [[p for p in cls] for cls in rep.strongly_maximal_equilibrium_classes],
        "weakly_acyclic": rep.weakly_acyclic,
        "weakly_ordinally_acyclic": rep.weakly_ordinally_acyclic,
    }
    out["dominance"] = {
        "kind": trace.kind.value,
        "order": order if isinstance(order, str) else "fixed",
        "eliminations": [
            {"round": e.round, "player": e.player,
             "strategy": game.labels[e.player][e.strategy],
             "dominated_by": game.labels[e.player][e.dominator]}
            for e in trace.rounds],
        "survivors": [[game.labels[i][s] for s in surv] for i, surv in enumerate(trace.survivors)],
        "verdict": trace.verdict.value,
    }
    out["potential"] = {
        "ordinally_acyclic": acyclic.ok,
        "positive_cycle": None if acyclic.ok else list(acyclic.witness),
        "ordinal_potential": values,
        "finite_improvement_property": fip.ok,
        "improvement_cycle": None if fip.ok else list(fip.witness),
    }
    if dynamics is not None and trials > 0:
        rec = empirical_recurrence(game, dynamics, trials)
        out["dynamics"] = dynamics_summary(game, rec, dynamics)

    checks = generic_checks(game, rep, nash)
    checks += potential_checks(game, consistency=game.num_profiles <= CONSISTENCY_LIMIT)
    checks += _mechanism_checks(game, source, force)
    out["checks"] = [{"name": c.name, "passed": c.passed} for c in checks]
    return out


def _mechanism_checks(game: Game, source: GameFile | None, force: bool):
    if source is None:
        return []
    if source.mechanism is None:
        if all(m == 2 for m in game.sizes) and game.n >= 2 and \
                validate_stag_hunt(game).kind is StagHuntClass.STAG_HUNT:
            return stag_hunt_checks(validate_stag_hunt(game).stag_hunt)
        return []
    sh = source.basis_stag_hunt(force)
    if sh.classify()[0] is not StagHuntClass.STAG_HUNT:
        # guarantees do not apply to forced weak variants
        return []
    if source.mechanism.kind == "insurance":
        params = InsuranceParams.uniform(sh.n, source.mechanism.premium, source.mechanism.floor)
        return insurance_checks(sh, params)
    return election_checks(sh)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
