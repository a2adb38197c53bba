"""Insurance and election mechanisms: games induced on top of a stag hunt basis."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .game_core import Game, GameError, as_fraction
from .staghunt import StagHunt, StagHuntClass

INSURANCE_LABELS = ("A", "D", "X")
ELECTION_LABELS = ("A", "D", "X", "Y")
A, D, X, Y = 0, 1, 2, 3


class MechanismParamError(GameError):
    pass


def _require_stag_hunt(sh: StagHunt, force: bool) -> None:
    kind, why = sh.classify()
    if kind is StagHuntClass.STAG_HUNT or (force and kind is StagHuntClass.WEAK_VARIANT):
        return
    hint = "" if kind is StagHuntClass.NOT_STAG_HUNT else " (use force to allow weak variants)"
    raise MechanismParamError(f"basis game is not a stag hunt: {why}{hint}")


def _per_player(value, n: int, name: str) -> tuple[Fraction, ...]:
    if isinstance(value, (list, tuple)):
        if len(value) != n:
            raise MechanismParamError(f"{name}: need {n} values, got {len(value)}")
        return tuple(as_fraction(v) for v in value)
    return (as_fraction(value),) * n


@dataclass(frozen=True)
class InsuranceParams:
    """Premium paid by an insured adopter and the payoff floor ``c + floor`` it buys."""

    premium: tuple[Fraction, ...]
    floor: tuple[Fraction, ...]

    @classmethod
    def uniform(cls, n: int, premium, floor) -> "InsuranceParams":
        return cls(_per_player(premium, n, "premium"), _per_player(floor, n, "floor"))

    def check(self, sh: StagHunt) -> None:
        if len(self.premium) != sh.n or len(self.floor) != sh.n:
            raise MechanismParamError(f"need insurance parameters for {sh.n} players")
        for i, (p, eps) in enumerate(zip(self.premium, self.floor)):
            top = sh.adoption[i][sh.full] - sh.c
            if not p > 0:
                raise MechanismParamError(f"player {i}: premium {p} must satisfy premium > 0")
            if not 0 < eps < top:
                raise MechanismParamError(
                    f"player {i}: floor {eps} must satisfy 0 < floor < u_i(A^n) - c = {top}")


def insurance_transform(sh: StagHunt, params: InsuranceParams, force: bool = False) -> Game:
    """Strategies A, D, X; X adopts with payoff ``max(adoption - premium, c + floor)``."""
    _require_stag_hunt(sh, force)
    params.check(sh)

    def payoff(ch):
        mask = sum(1 << i for i, s in enumerate(ch) if s in (A, X))
        out = []
        for i, s in enumerate(ch):
            if s == D:
                out.append(sh.c)
            elif s == A:
                out.append(sh.adoption[i][mask])
            else:
                out.append(max(sh.adoption[i][mask] - params.premium[i], sh.c + params.floor[i]))
        return out

    return Game.from_function([INSURANCE_LABELS] * sh.n, payoff)


class ElectionOutcome(NamedTuple):
    votes: frozenset[int]
    result: int

    @classmethod
    def of(cls, choices: Sequence[int]) -> "ElectionOutcome":
        votes = frozenset(i for i, s in enumerate(choices) if s in (X, Y))
        return cls(votes, int(len(votes) == len(choices)))


def election_adopters(choices: Sequence[int]) -> int:
    if ElectionOutcome.of(choices).result:
        return (1 << len(choices)) - 1
    return sum(1 << i for i, s in enumerate(choices) if s in (A, Y))


def election_transform(sh: StagHunt, force: bool = False) -> Game:
    """Strategies A, D, X (vote, adopt iff unanimous), Y (vote, adopt regardless)."""
    _require_stag_hunt(sh, force)

    def payoff(ch):
        mask = election_adopters(ch)
        return [sh.adoption[i][mask] if mask >> i & 1 else sh.c for i in range(sh.n)]

    return Game.from_function([ELECTION_LABELS] * sh.n, payoff)


def insurance_adopters(choices: Sequence[int]) -> int:
    return sum(1 << i for i, s in enumerate(choices) if s in (A, X))
