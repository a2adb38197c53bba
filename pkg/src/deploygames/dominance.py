"""Pure-strategy dominance and iterated elimination with a recorded history."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .game_core import Game, GameError

SIMULTANEOUS = "simultaneous"
ELECTION_ORDER = "paper-election-order"


class DominanceKind(enum.Enum):
    STRICT = "strict"
    WEAK = "weak"


class Verdict(enum.Enum):
    STRICTLY_SOLVABLE = "strictly-solvable"
    WEAKLY_REDUCED_TO_SET = "reduced-to-set"
    NOT_REDUCIBLE = "not-reducible"


class Elimination(NamedTuple):
    round: int
    player: int
    strategy: int
    dominator: int
    kind: DominanceKind


@dataclass(frozen=True)
class EliminationTrace:
    kind: DominanceKind
    rounds: tuple[Elimination, ...]
    survivors: tuple[tuple[int, ...], ...]
    verdict: Verdict

    @property
    def num_rounds(self) -> int:
        return max((e.round for e in self.rounds), default=0)

    def surviving_profiles(self, game: Game) -> list[int]:
        return [game.encode(ch) for ch in itertools.product(*self.survivors)]


def _full_restriction(game: Game):
    return tuple(tuple(range(m)) for m in game.sizes)


def dominates(game: Game, player: int, s: int, s_prime: int,
              kind: DominanceKind | str = DominanceKind.STRICT,
              restriction: Sequence[Sequence[int]] | None = None) -> bool:
    """Does ``s`` dominate ``s_prime`` for ``player`` against the restricted opponents?"""
    kind = DominanceKind(kind)
    restriction = _full_restriction(game) if restriction is None else restriction
    if any(len(r) == 0 for r in restriction):
        raise GameError("restriction must leave every player a strategy")
    allowed = restriction[player]
    for x in (s, s_prime):
        if x not in allowed:
            raise GameError(f"strategy {x} of player {player} is outside the restriction")
    vec = game.payoffs[player]
    strides = game.strides()
    others = [restriction[j] if j != player else (0,) for j in range(game.n)]
    somewhere = False
    for ch in itertools.product(*others):
        base = sum(c * st for c, st in zip(ch, strides))
        a = vec[base + s * strides[player]]
        b = vec[base + s_prime * strides[player]]
        if kind is DominanceKind.STRICT:
            if not a > b:
                return False
        else:
            if a < b:
                return False
            somewhere = somewhere or a > b
    return kind is DominanceKind.STRICT or somewhere


def _dominator(game, player, strategy, kind, restriction):
    for s in restriction[player]:
        if s != strategy and dominates(game, player, s, strategy, kind, restriction):
            return s
    return None


def election_order(game: Game) -> list[tuple[int, int]]:
    """Eliminate D for every player, then A for every player."""
    order = []
    for label in ("D", "A"):
        for i, labs in enumerate(game.labels):
            if label not in labs:
                raise GameError(f"player {i} has no strategy {label!r}")
            order.append((i, labs.index(label)))
    return order


def iterated_elimination(game: Game, kind: DominanceKind | str = DominanceKind.STRICT,
                         policy: str | Sequence[tuple[int, int]] = SIMULTANEOUS
                         ) -> EliminationTrace:
    """Eliminate dominated strategies until none remain.

    ``policy`` is ``"simultaneous"`` (every dominated strategy of every player
    goes in one round), ``"paper-election-order"``, or an explicit list of
    ``(player, strategy)`` attempts. Attempts are tried one per round, skipped
    when the strategy is not dominated at that point, and the run is finished
    with simultaneous rounds so the result is always a fixpoint.
    """
    kind = DominanceKind(kind)
    if policy == ELECTION_ORDER:
        policy = election_order(game)
    alive = [list(r) for r in _full_restriction(game)]
    history: list[Elimination] = []
    rnd = 0

    if policy != SIMULTANEOUS:
        for player, strategy in policy:
            if strategy not in alive[player] or len(alive[player]) == 1:
                continue
            dom = _dominator(game, player, strategy, kind, alive)
            if dom is None:
                continue
            rnd += 1
            alive[player].remove(strategy)
            history.append(Elimination(rnd, player, strategy, dom, kind))

    while True:
        frozen = [tuple(r) for r in alive]
        found = []
        for player in range(game.n):
            for strategy in frozen[player]:
                dom = _dominator(game, player, strategy, kind, frozen)
                if dom is not None:
                    found.append((player, strategy, dom))
        if not found:
            break
        rnd += 1
        for player, strategy, dom in found:
            alive[player].remove(strategy)
            history.append(Elimination(rnd, player, strategy, dom, kind))

    survivors = tuple(tuple(r) for r in alive)
    if not history:
        verdict = Verdict.NOT_REDUCIBLE
    elif kind is DominanceKind.STRICT and all(len(r) == 1 for r in survivors):
        verdict = Verdict.STRICTLY_SOLVABLE
    else:
        verdict = Verdict.WEAKLY_REDUCED_TO_SET
    return EliminationTrace(kind, tuple(history), survivors, verdict)
