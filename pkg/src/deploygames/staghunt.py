"""Stag hunts: the parametric type, generators, validation, network adoption games.

Strategy 0 is A (adopt / hunt deer) and strategy 1 is D (defect / hunt hare).
Adopter sets are bitmasks over players.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .game_core import Game, GameError, as_fraction, check_profile_count
from .potential import has_fip

A, D = 0, 1
LABELS = ("A", "D")


class StagHuntError(GameError):
    pass


class SearchExhausted(StagHuntError):
    pass


class StagHuntClass(enum.Enum):
    STAG_HUNT = "stag-hunt"
    WEAK_VARIANT = "weak-variant"
    NOT_STAG_HUNT = "not-stag-hunt"


def _members(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


@dataclass(frozen=True)
class StagHunt:
    """Adoption payoffs per player and adopter set, plus the shared hare payoff ``c``.

    ``adoption[i][mask]`` is player i's payoff for adopting when ``mask`` is the
    adopter set; it is ``None`` when i is not in ``mask``.
    """

    c: Fraction
    adoption: tuple[tuple[Fraction | None, ...], ...]

    def __post_init__(self):
        n = len(self.adoption)
        if n < 2:
            raise StagHuntError("a stag hunt needs at least two players")
        check_profile_count([2] * n)
        for i, row in enumerate(self.adoption):
            if len(row) != 1 << n:
                raise StagHuntError(f"player {i}: adoption table has wrong size")
            for mask, v in enumerate(row):
                if (v is None) == bool(mask >> i & 1):
                    raise StagHuntError(
                        f"player {i}: adoption payoff must be given exactly on sets containing it")

    @property
    def n(self) -> int:
        return len(self.adoption)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @classmethod
    def from_schedule(cls, schedules: Sequence[Sequence], c=0, validate: bool = True) -> "StagHunt":
        """Count-based stag hunt: ``schedules[i][k-1]`` is i's payoff when k players adopt."""
        n = len(schedules)
        sched = [[as_fraction(v) for v in row] for row in schedules]
        for i, row in enumerate(sched):
            if len(row) != n:
                raise StagHuntError(f"player {i}: schedule needs {n} entries, got {len(row)}")
        table = tuple(
            tuple(sched[i][bin(mask).count("1") - 1] if mask >> i & 1 else None
                  for mask in range(1 << n))
            for i in range(n))
        sh = cls(as_fraction(c), table)
        if validate:
            sh.check()
        return sh

    @classmethod
    def from_set_function(cls, n: int, payoff, c=0, validate: bool = True) -> "StagHunt":
        """Build from ``payoff(i, adopters)`` where ``adopters`` is a frozenset of players."""
        table = tuple(
            tuple(as_fraction(payoff(i, frozenset(_members(mask, n))))
                  if mask >> i & 1 else None
                  for mask in range(1 << n))
            for i in range(n))
        sh = cls(as_fraction(c), table)
        if validate:
            sh.check()
        return sh

    @property
    def schedule(self) -> tuple[tuple[Fraction, ...], ...] | None:
        """Per-player payoff by adopter count, or None if payoffs depend on identities."""
        out = []
        for i, row in enumerate(self.adoption):
            by_count: dict[int, Fraction] = {}
            for mask, v in enumerate(row):
                if v is None:
                    continue
                k = bin(mask).count("1")
                if by_count.setdefault(k, v) != v:
                    return None
            out.append(tuple(by_count[k] for k in range(1, self.n + 1)))
        return tuple(out)

    def adopters(self, choices: Sequence[int]) -> int:
        return sum(1 << i for i, c in enumerate(choices) if c == A)

    def payoff(self, choices: Sequence[int]) -> tuple[Fraction, ...]:
        mask = self.adopters(choices)
        return tuple(self.adoption[i][mask] if c == A else self.c
                     for i, c in enumerate(choices))

    def classify(self) -> tuple[StagHuntClass, str | None]:
        return _classify_tables(self.n, self.c, self.adoption)

    def check(self) -> None:
        kind, why = self.classify()
        if kind is not StagHuntClass.STAG_HUNT:
            raise StagHuntError(f"not a stag hunt: {why}")


def _classify_tables(n, c, adoption) -> tuple[StagHuntClass, str | None]:
    full = (1 << n) - 1
    weak_reason = None
    for i in range(n):
        row = adoption[i]
        if not row[full] > c:
            return StagHuntClass.NOT_STAG_HUNT, f"player {i}: payoff at universal adoption is not above c"
        if not row[1 << i] < c:
            return StagHuntClass.NOT_STAG_HUNT, f"player {i}: adopting alone is not harmful"
        for mask in range(1 << n):
            if not mask >> i & 1:
                continue
            if row[mask] == c and weak_reason is None:
                weak_reason = f"player {i}: adoption payoff equals c at adopters {_members(mask, n)}"
            for j in range(n):
                if mask >> j & 1:
                    continue
                bigger = mask | 1 << j
                if row[bigger] < row[mask]:
                    return (StagHuntClass.NOT_STAG_HUNT,
                            f"player {i}: adoption payoff falls when player {j} joins {_members(mask, n)}")
                if row[bigger] == row[mask] and weak_reason is None:
                    weak_reason = (f"player {i}: adoption payoff unchanged when player {j} "
                                   f"joins {_members(mask, n)}")
    if weak_reason:
        return StagHuntClass.WEAK_VARIANT, weak_reason
    interior = _interior_equilibrium(n, c, adoption)
    if interior is not None:
        return (StagHuntClass.NOT_STAG_HUNT,
                f"adopters {_members(interior, n)} form a pure equilibrium besides "
                f"universal adoption and universal defection")
    return StagHuntClass.STAG_HUNT, None


def _interior_equilibrium(n, c, adoption) -> int | None:
    full = (1 << n) - 1
    for mask in range(1, full):
        if all(adoption[i][mask] >= c for i in range(n) if mask >> i & 1) and \
                all(adoption[j][mask | 1 << j] <= c for j in range(n) if not mask >> j & 1):
            return mask
    return None


def to_game(sh: StagHunt) -> Game:
    return Game.from_function([LABELS] * sh.n, sh.payoff)


@dataclass(frozen=True)
class StagHuntCheck:
    kind: StagHuntClass
    reason: str | None
    stag_hunt: StagHunt | None

    def __bool__(self):
        return self.kind is StagHuntClass.STAG_HUNT


def _adopt_index(game: Game, i: int) -> int:
    labs = game.labels[i]
    return labs.index("A") if set(labs) == {"A", "D"} else 0


def validate_stag_hunt(game: Game) -> StagHuntCheck:
    """Classify a two-strategy game against the stag hunt conditions.

    Adoption payoffs must be strictly increasing in the adopter set, the
    defect payoff a common constant ``c``, universal adoption above ``c`` and
    adopting alone below it, and no pure equilibrium other than universal
    adoption and universal defection. Non-strict increase, or an adoption
    payoff equal to ``c`` (a neutral switch), gives the weak variant.
    """
    if any(m != 2 for m in game.sizes):
        raise StagHuntError("stag hunt validation needs exactly two strategies per player")
    n = game.n
    if n < 2:
        return StagHuntCheck(StagHuntClass.NOT_STAG_HUNT, "fewer than two players", None)
    adopt = [_adopt_index(game, i) for i in range(n)]
    c = None
    adoption = [[None] * (1 << n) for _ in range(n)]
    for pid in range(game.num_profiles):
        choices = game.decode(pid)
        mask = sum(1 << i for i in range(n) if choices[i] == adopt[i])
        for i in range(n):
            u = game.payoffs[i][pid]
            if choices[i] == adopt[i]:
                adoption[i][mask] = u
            elif c is None:
                c = u
            elif u != c:
                return StagHuntCheck(StagHuntClass.NOT_STAG_HUNT,
                                     "defect payoff is not a common constant", None)
    kind, why = _classify_tables(n, c, adoption)
    sh = None
    if kind is not StagHuntClass.NOT_STAG_HUNT:
        sh = StagHunt(c, tuple(tuple(row) for row in adoption))
    return StagHuntCheck(kind, why, sh)


def convergence_path(sh: StagHunt, start: Sequence[int]) -> list[tuple[int, ...]]:
    """Improvement path from ``start`` to universal adoption or universal defection.

    Adopters who prefer to defect switch first, lowest index first; once none
    remain, the lowest-indexed defector who prefers to adopt switches.
    """
    state = list(start)
    path = [tuple(state)]
    for _ in range(2 * sh.n * sh.n + 2):
        mask = sh.adopters(state)
        mover = next((i for i in range(sh.n)
                      if state[i] == A and sh.adoption[i][mask] < sh.c), None)
        if mover is None:
            mover = next((i for i in range(sh.n)
                          if state[i] == D and sh.adoption[i][mask | 1 << i] > sh.c), None)
        if mover is None:
            return path
        state[mover] = D if state[mover] == A else A
        path.append(tuple(state))
    raise StagHuntError("convergence path did not terminate")


def random_stag_hunt(rng: random.Random, n: int, magnitude: int = 10,
                     identity: bool = False, c: int = 0) -> StagHunt:
    """Random integer stag hunt, redrawn until it validates.

    Count-based by default; with ``identity=True`` the adoption payoff is
    ``offset_i + sum of positive weights w_ij over adopters j``, which is
    strictly increasing in the adopter set.
    """
    while not identity:
        rows = []
        for _ in range(n):
            neg = rng.randint(1, n - 1)
            lows = sorted(rng.sample(range(-magnitude, 0), neg))
            highs = sorted(rng.sample(range(1, magnitude + 1), n - neg))
            rows.append([c + v for v in lows + highs])
        sh = StagHunt.from_schedule(rows, c, validate=False)
        if sh.classify()[0] is StagHuntClass.STAG_HUNT:
            return sh
    while True:
        weights = [[rng.randint(1, magnitude) for _ in range(n)] for _ in range(n)]
        # need offset + w_ii < 0 < offset + sum_j w_ij
        bounds = [(-sum(w) + 1, -w[i] - 1) for i, w in enumerate(weights)]
        if any(lo > hi for lo, hi in bounds):
            continue
        offsets = [rng.randint(lo, hi) for lo, hi in bounds]

        def pay(i, s):
            return c + offsets[i] + sum(weights[i][j] for j in s)

        sh = StagHunt.from_set_function(n, pay, c, validate=False)
        if sh.classify()[0] is StagHuntClass.STAG_HUNT:
            return sh


def _cycle_search_candidates(n: int, i: int, bound: int):
    masks = [m for m in range(1 << n) if m >> i & 1]
    values = [v for v in range(-bound, bound + 1) if v != 0]
    full = (1 << n) - 1
    for combo in itertools.product(values, repeat=len(masks)):
        table = dict(zip(masks, combo))
        if not (table[1 << i] < 0 < table[full]):
            continue
        if all(table[m] < table[m | 1 << j] for m in masks for j in range(n)
               if not m >> j & 1):
            yield table


def find_cycle_instance(n: int = 3, max_bound: int = 16) -> StagHunt:
    """Smallest-magnitude integer stag hunt (c = 0) whose improvement graph has a cycle.

    Payoff bounds grow from 1 to ``max_bound``; within a bound, candidates are
    tried in lexicographic order so the result is deterministic. Stag hunts
    whose payoffs depend only on the adopter count never cycle, so the search
    is over identity-dependent payoffs.
    """
    if n != 3:
        raise StagHuntError("cycle search is implemented for three players")
    from .graphs import GraphKind, build_deployment_graph

    for bound in range(1, max_bound + 1):
        cands = [list(_cycle_search_candidates(n, i, bound)) for i in range(n)]
        for tables in itertools.product(*cands):
            if bound > 1 and max(abs(v) for t in tables for v in t.values()) < bound:
                continue
            adoption = tuple(tuple(Fraction(t[m]) if m in t else None for m in range(1 << n))
                             for t in tables)
            sh = StagHunt(Fraction(0), adoption)
            game = to_game(sh)
            if not has_fip(game, build_deployment_graph(game, GraphKind.STRICT)):
                return sh
    raise SearchExhausted(f"no cyclic stag hunt with payoffs bounded by {max_bound}")


@dataclass(frozen=True)
class NetworkAdoptionGame:
    """Adopters earn ``beta[size - 1] - gamma[i]`` for their adopter component; defectors 0."""

    n: int
    edges: tuple[tuple[int, int], ...]
    gamma: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.gamma) != self.n:
            raise GameError("need one deployment cost per node")
        if any(g <= 0 for g in self.gamma):
            raise GameError("deployment costs must be positive")
        if len(self.beta) != self.n:
            raise GameError("beta needs one value per component size 1..n")
        if any(hi < lo for lo, hi in zip(self.beta, self.beta[1:])):
            raise GameError("beta must be non-decreasing")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise GameError(f"bad edge ({u}, {v})")

    @classmethod
    def create(cls, n, edges, gamma, beta) -> "NetworkAdoptionGame":
        return cls(n, tuple((int(u), int(v)) for u, v in edges),
                   tuple(as_fraction(g) for g in gamma), tuple(as_fraction(b) for b in beta))

    def component_sizes(self, adopters: Sequence[bool]) -> list[int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            if adopters[u] and adopters[v]:
                parent[find(u)] = find(v)
        counts: dict[int, int] = {}
        for i in range(self.n):
            if adopters[i]:
                counts[find(i)] = counts.get(find(i), 0) + 1
        return [counts[find(i)] if adopters[i] else 0 for i in range(self.n)]

    def payoff(self, choices: Sequence[int]) -> tuple[Fraction, ...]:
        adopting = [c == A for c in choices]
        sizes = self.component_sizes(adopting)
        return tuple(self.beta[sizes[i] - 1] - self.gamma[i] if adopting[i] else Fraction(0)
                     for i in range(self.n))


def network_to_game(ng: NetworkAdoptionGame) -> Game:
    check_profile_count([2] * ng.n)
    return Game.from_function([LABELS] * ng.n, ng.payoff)
