"""Ordinal acyclicity, the finite improvement property, and potential functions."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .game_core import Game, GameError, unilateral_deviations
from .graphs import Condensation, DeploymentGraph, GraphKind, build_deployment_graph


class PotentialKind(enum.Enum):
    ORDINAL = "ordinal"
    GENERALIZED_ORDINAL = "generalized-ordinal"


@dataclass(frozen=True)
class CycleCheck:
    """Verdict of an acyclicity test; ``witness`` is a closed profile cycle when it fails."""

    ok: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class PotentialCertificate:
    values: tuple[Fraction, ...]
    kind: PotentialKind


class NoPotentialError(GameError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


def _cycle_through(g: DeploymentGraph, cond: Condensation, u: int, v: int) -> tuple[int, ...]:
    """Close the arc u -> v into a cycle by a shortest path v ~> u inside their class."""
    cls = cond.class_of[u]
    parent = {v: None}
    queue = deque([v])
    while queue and u not in parent:
        x = queue.popleft()
        for a in g.arcs[x]:
            y = a.target
            if y not in parent and cond.class_of[y] == cls:
                parent[y] = x
                queue.append(y)
    back = []
    x = u
    while x is not None:
        back.append(x)
        x = parent[x]
    return (u,) + tuple(reversed(back))


def _first_internal_cycle(g: DeploymentGraph, positive_only: bool) -> tuple[int, ...] | None:
    cond = g.condensation
    for u, out in enumerate(g.arcs):
        for a in out:
            if positive_only and not a.positive:
                continue
            if cond.class_of[a.target] == cond.class_of[u]:
                return _cycle_through(g, cond, u, a.target)
    return None


def is_ordinally_acyclic(game: Game, ordinal: DeploymentGraph | None = None) -> CycleCheck:
    """True iff every mutual-reachability class of the ordinal graph has only neutral arcs."""
    ordinal = ordinal or build_deployment_graph(game, GraphKind.ORDINAL)
    witness = _first_internal_cycle(ordinal, positive_only=True)
    return CycleCheck(witness is None, witness)


def has_fip(game: Game, strict: DeploymentGraph | None = None) -> CycleCheck:
    """Finite improvement property: the strict graph has no cycle."""
    strict = strict or build_deployment_graph(game, GraphKind.STRICT)
    witness = _first_internal_cycle(strict, positive_only=False)
    return CycleCheck(witness is None, witness)


def _class_depths(cond: Condensation) -> list[int]:
    """Longest-path depth of every class, 0 on classes without predecessors."""
    indeg = [0] * len(cond.classes)
    for _, b in cond.dag_arcs:
        indeg[b] += 1
    depth = [0] * len(cond.classes)
    queue = deque(k for k, d in enumerate(indeg) if d == 0)
    while queue:
        a = queue.popleft()
        for b in cond.dag_successors[a]:
            depth[b] = max(depth[b], depth[a] + 1)
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    return depth


def construct_ordinal_potential(game: Game,
                                ordinal: DeploymentGraph | None = None) -> PotentialCertificate:
    """Ordinal potential from the topological depth of the ordinal condensation."""
    ordinal = ordinal or build_deployment_graph(game, GraphKind.ORDINAL)
    check = is_ordinally_acyclic(game, ordinal)
    if not check:
        raise NoPotentialError("game is not ordinally acyclic", check.witness)
    cond = ordinal.condensation
    depth = _class_depths(cond)
    return PotentialCertificate(tuple(Fraction(depth[k]) for k in cond.class_of),
                                PotentialKind.ORDINAL)


def construct_generalized_potential(game: Game,
                                    strict: DeploymentGraph | None = None) -> PotentialCertificate:
    strict = strict or build_deployment_graph(game, GraphKind.STRICT)
    check = has_fip(game, strict)
    if not check:
        raise NoPotentialError("game has an improvement cycle", check.witness)
    cond = strict.condensation
    depth = _class_depths(cond)
    return PotentialCertificate(tuple(Fraction(depth[k]) for k in cond.class_of),
                                PotentialKind.GENERALIZED_ORDINAL)


def verify_potential(game: Game, cert: PotentialCertificate) -> bool:
    """Check the potential condition over every unilateral deviation."""
    values = cert.values
    if len(values) != game.num_profiles:
        return False
    for pid in range(game.num_profiles):
        for dev in unilateral_deviations(game, pid):
            gain = dev.delta > 0
            rise = values[dev.profile] - values[pid] > 0
            if gain and not rise:
                return False
            if cert.kind is PotentialKind.ORDINAL and rise and not gain:
                return False
    return True
