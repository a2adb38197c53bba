"""Deployment graphs, their condensations, and maximal states.

The strict graph has an arc for every strictly profitable unilateral switch;
the ordinal graph also keeps the payoff-neutral ones. Maximal states of either
graph are the members of its sink components.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .game_core import Game, GameError, NashKind, check_profile_count, classify_profile


class GraphKind(enum.Enum):
    STRICT = "strict"
    ORDINAL = "ordinal"


class Arc(NamedTuple):
    target: int
    player: int
    positive: bool


class GraphKindError(GameError):
    pass


@dataclass(frozen=True)
class DeploymentGraph:
    kind: GraphKind
    arcs: tuple[tuple[Arc, ...], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.arcs)

    def successors(self, v: int) -> list[int]:
        return [a.target for a in self.arcs[v]]

    def arc_set(self) -> set[tuple[int, int, bool]]:
        return {(v, a.target, a.positive) for v, out in enumerate(self.arcs) for a in out}

    @cached_property
    def condensation(self) -> "Condensation":
        return condense(self)


def build_deployment_graph(game: Game, kind: GraphKind | str) -> DeploymentGraph:
    """Arcs for every strictly profitable (strict) or non-harmful (ordinal) switch."""
    kind = GraphKind(kind)
    check_profile_count(game.sizes)
    strides = game.strides()
    sizes = game.sizes
    n_prof = game.num_profiles
    out: list[tuple[Arc, ...]] = []
    for pid in range(n_prof):
        arcs = []
        rest = pid
        for i, m in enumerate(sizes):
            rest, c = divmod(rest, m)
            vec = game.payoffs[i]
            here = vec[pid]
            base = pid - c * strides[i]
            for alt in range(m):
                if alt == c:
                    continue
                q = base + alt * strides[i]
                if vec[q] > here:
                    arcs.append(Arc(q, i, True))
                elif vec[q] == here and kind is GraphKind.ORDINAL:
                    arcs.append(Arc(q, i, False))
        out.append(tuple(arcs))
    return DeploymentGraph(kind, tuple(out))


@dataclass(frozen=True)
class Condensation:
    """Mutual-reachability classes, numbered by their smallest member."""

    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    dag_arcs: frozenset[tuple[int, int]]
    sinks: tuple[int, ...]

    @cached_property
    def dag_successors(self) -> tuple[tuple[int, ...], ...]:
        succ: list[list[int]] = [[] for _ in self.classes]
        for a, b in sorted(self.dag_arcs):
            succ[a].append(b)
        return tuple(tuple(s) for s in succ)

    @cached_property
    def sink_set(self) -> frozenset[int]:
        return frozenset(self.sinks)

    def reachable_classes(self, start: int) -> set[int]:
        seen = {start}
        queue = deque([start])
        while queue:
            for b in self.dag_successors[queue.popleft()]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return seen


def condense(g: DeploymentGraph) -> Condensation:
    """Strongly connected components of ``g`` and the DAG between them."""
    nv = g.num_vertices
    src = [v for v, out in enumerate(g.arcs) for _ in out]
    dst = [a.target for out in g.arcs for a in out]
    mat = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(nv, nv))
    _, raw = connected_components(mat, directed=True, connection="strong")
    # renumber so class k is the k-th distinct label met in ProfileId order
    remap: dict[int, int] = {}
    class_of = []
    for lab in raw.tolist():
        class_of.append(remap.setdefault(lab, len(remap)))
    members: list[list[int]] = [[] for _ in remap]
    for v, k in enumerate(class_of):
        members[k].append(v)
    dag = {(class_of[v], class_of[a.target])
           for v, out in enumerate(g.arcs) for a in out
           if class_of[v] != class_of[a.target]}
    has_out = {a for a, _ in dag}
    sinks = tuple(k for k in range(len(members)) if k not in has_out)
    return Condensation(tuple(class_of), tuple(tuple(m) for m in members),
                        frozenset(dag), sinks)


def is_incrementally_deployable(g: DeploymentGraph, target: int, source: int) -> bool:
    """True iff ``g`` has a directed path from ``source`` to ``target``."""
    cond = g.condensation
    return cond.class_of[target] in cond.reachable_classes(cond.class_of[source])


def reachable_vertices(g: DeploymentGraph, source: int) -> set[int]:
    seen = {source}
    queue = deque([source])
    while queue:
        for a in g.arcs[queue.popleft()]:
            if a.target not in seen:
                seen.add(a.target)
                queue.append(a.target)
    return seen


def advancement_paths_from(g: DeploymentGraph, tail: int) -> bool:
    """Does some ordinal path starting at ``tail`` use at least one positive arc?"""
    if g.kind is not GraphKind.ORDINAL:
        raise GraphKindError("advancement paths are defined on the ordinal graph")
    return any(a.positive for v in reachable_vertices(g, tail) for a in g.arcs[v])


@dataclass(frozen=True)
class MaximalityReport:
    weakly_maximal: tuple[int, ...]
    strongly_maximal: tuple[int, ...]
    weak_sink_classes: tuple[tuple[int, ...], ...]
    strong_sink_classes: tuple[tuple[int, ...], ...]
    strongly_maximal_equilibrium_classes: tuple[tuple[int, ...], ...]
    weakly_acyclic: bool
    weakly_ordinally_acyclic: bool


def maximality_report(game: Game, strict: DeploymentGraph | None = None,
                      ordinal: DeploymentGraph | None = None) -> MaximalityReport:
    strict = strict or build_deployment_graph(game, GraphKind.STRICT)
    ordinal = ordinal or build_deployment_graph(game, GraphKind.ORDINAL)
    sc, oc = strict.condensation, ordinal.condensation
    weak_sinks = tuple(sc.classes[k] for k in sc.sinks)
    strong_sinks = tuple(oc.classes[k] for k in oc.sinks)
    nash = {pid: classify_profile(game, pid) is not NashKind.NOT_NE
            for cls in strong_sinks for pid in cls}
    eq_classes = tuple(cls for cls in strong_sinks if all(nash[p] for p in cls))
    return MaximalityReport(
        weakly_maximal=tuple(sorted(p for cls in weak_sinks for p in cls)),
        strongly_maximal=tuple(sorted(p for cls in strong_sinks for p in cls)),
        weak_sink_classes=weak_sinks,
        strong_sink_classes=strong_sinks,
        strongly_maximal_equilibrium_classes=eq_classes,
        # a singleton strict sink has no improving move out, i.e. it is a pure NE
        weakly_acyclic=all(len(cls) == 1 for cls in weak_sinks),
        weakly_ordinally_acyclic=len(eq_classes) == len(strong_sinks),
    )
