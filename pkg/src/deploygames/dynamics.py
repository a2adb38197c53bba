"""Better-response and drift dynamics as a Markov chain on profiles.

At every step the chain follows an arc of the relevant deployment graph
chosen uniformly at random; a profile with no outgoing arc is absorbing.
Trial ``t`` draws from ``numpy.random.default_rng([seed, t])`` so runs are
reproducible and trials are independent of each other.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .game_core import Game, GameError
from .graphs import DeploymentGraph, GraphKind, build_deployment_graph


class DynamicsKind(enum.Enum):
    BETTER_RESPONSE = "better-response"
    DRIFT = "drift"

    @property
    def graph_kind(self) -> GraphKind:
        return GraphKind.STRICT if self is DynamicsKind.BETTER_RESPONSE else GraphKind.ORDINAL


@dataclass(frozen=True)
class DynamicsConfig:
    kind: DynamicsKind = DynamicsKind.BETTER_RESPONSE
    max_steps: int = 100
    seed: int = 0
    burn_in: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", DynamicsKind(self.kind))
        if self.max_steps < 1:
            raise GameError("max_steps must be positive")
        if not 0 <= self.burn_in < self.max_steps:
            raise GameError("burn_in must satisfy 0 <= burn_in < max_steps")
        if not 0 <= self.seed < 1 << 64:
            raise GameError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class Trajectory:
    states: tuple[int, ...]
    absorbed_class: int | None

    @property
    def final(self) -> int:
        return self.states[-1]


def _walk(out: list[list[int]], start: int, draws: list[float]) -> list[int]:
    states = [start]
    cur = start
    for u in draws:
        nxt = out[cur]
        if not nxt:
            break
        cur = nxt[int(u * len(nxt))]
        states.append(cur)
    return states


def _successor_lists(g: DeploymentGraph) -> list[list[int]]:
    return [[a.target for a in arcs] for arcs in g.arcs]


def simulate(game: Game, cfg: DynamicsConfig, start, trial: int = 0,
             graph: DeploymentGraph | None = None) -> Trajectory:
    """One trajectory of at most ``cfg.max_steps`` moves from ``start``.

    The trajectory stops early at an absorbing profile.
    """
    graph = graph or build_deployment_graph(game, cfg.kind.graph_kind)
    rng = np.random.default_rng([cfg.seed, trial])
    states = _walk(_successor_lists(graph), game.pid(start),
                   rng.random(cfg.max_steps).tolist())
    cond = graph.condensation
    k = cond.class_of[states[-1]]
    return Trajectory(tuple(states), k if k in cond.sink_set else None)


@dataclass(frozen=True)
class Recurrence:
    """Post-burn-in visit frequencies per condensation class, plus sink bookkeeping."""

    frequencies: dict[int, float]
    trials: int
    absorbed: int
    steps_checked: int
    sink_exits: int
    seed: int
    sink_classes: tuple[int, ...] = field(default=())

    @property
    def absorbed_fraction(self) -> float:
        return self.absorbed / self.trials

    @property
    def sink_mass(self) -> float:
        return sum(f for k, f in self.frequencies.items() if k in self.sink_classes)


def empirical_recurrence(game: Game, cfg: DynamicsConfig, trials: int,
                         graph: DeploymentGraph | None = None) -> Recurrence:
    """Run ``trials`` trajectories from uniformly random starts.

    An absorbing profile counts as visited for every remaining step, so each
    trial contributes ``max_steps + 1 - burn_in`` visits.
    """
    if trials < 1:
        raise GameError("trials must be positive")
    graph = graph or build_deployment_graph(game, cfg.kind.graph_kind)
    out = _successor_lists(graph)
    cond = graph.condensation
    class_of = cond.class_of
    sinks = cond.sink_set
    horizon = cfg.max_steps + 1
    visits: Counter[int] = Counter()
    absorbed = exits = checked = 0
    for t in range(trials):
        rng = np.random.default_rng([cfg.seed, t])
        start = int(rng.integers(game.num_profiles))
        states = _walk(out, start, rng.random(cfg.max_steps).tolist())
        entered = None
        for s in states:
            k = class_of[s]
            checked += 1
            if entered is not None and k != entered:
                exits += 1
            if entered is None and k in sinks:
                entered = k
        if class_of[states[-1]] in sinks:
            absorbed += 1
        for s in states[cfg.burn_in:]:
            visits[class_of[s]] += 1
        pad = horizon - max(len(states), cfg.burn_in)
        if pad > 0:
            visits[class_of[states[-1]]] += pad
    total = sum(visits.values())
    freqs = {k: visits[k] / total for k in sorted(visits)}
    return Recurrence(freqs, trials, absorbed, checked, exits, cfg.seed, tuple(sorted(sinks)))
