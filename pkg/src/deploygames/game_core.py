"""Finite strategic-form games with exact rational payoffs.

Profiles are addressed by a dense integer id in mixed radix, player 0 least
significant: ``id = c_0 + m_0 * (c_1 + m_1 * (c_2 + ...))`` where ``m_i`` is
player i's strategy count.
"""
from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence

DEFAULT_PROFILE_CAP = 1 << 20
CAP_ENV_VAR = "DEPLOYGAMES_PROFILE_CAP"


class GameError(ValueError):
    """Malformed game or invalid argument to a game operation."""


class ProfileCapError(GameError):
    """Profile space exceeds the configured cap."""


class CoalitionError(GameError):
    pass


def profile_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_PROFILE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise GameError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}")
    if cap < 1:
        raise GameError(f"{CAP_ENV_VAR} must be positive")
    return cap


def check_profile_count(sizes: Sequence[int], cap: int | None = None) -> int:
    """Return the profile count for ``sizes``, raising if it exceeds the cap."""
    cap = profile_cap() if cap is None else cap
    total = 1
    for m in sizes:
        total *= m
        if total > cap:
            raise ProfileCapError(
                f"profile space {'x'.join(map(str, sizes))} exceeds cap {cap}")
    return total


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings to Fraction; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise GameError(f"not a rational payoff: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise GameError(f"not a rational payoff: {value!r}")
    raise GameError(f"not a rational payoff: {value!r} (floats are not accepted)")


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Profile(NamedTuple):
    choices: tuple[int, ...]
    id: int


class NashKind(enum.Enum):
    STRICT = "strict"
    WEAK = "weak"
    NOT_NE = "none"


class NashClassification(NamedTuple):
    profile: int
    kind: NashKind


class Deviation(NamedTuple):
    player: int
    profile: int
    delta: Fraction


@dataclass(frozen=True, eq=False)
class Game:
    """Immutable strategic-form game.

    ``payoffs[i][pid]`` is player i's payoff at profile ``pid``.
    """

    labels: tuple[tuple[str, ...], ...]
    payoffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.labels:
            raise GameError("a game needs at least one player")
        for i, labs in enumerate(self.labels):
            if not labs:
                raise GameError(f"player {i} has no strategies")
            if len(set(labs)) != len(labs):
                raise GameError(f"player {i} has duplicate strategy labels")
        size = check_profile_count(self.sizes)
        if len(self.payoffs) != len(self.labels):
            raise GameError("need one payoff vector per player")
        for i, vec in enumerate(self.payoffs):
            if len(vec) != size:
                raise GameError(f"player {i}: expected {size} payoffs, got {len(vec)}")

    @classmethod
    def from_function(cls, labels: Sequence[Sequence[str]],
                      payoff: Callable[[tuple[int, ...]], Sequence]) -> "Game":
        """Build a game by evaluating ``payoff(choices)`` on every profile."""
        labels = tuple(tuple(str(s) for s in labs) for labs in labels)
        sizes = [len(labs) for labs in labels]
        check_profile_count(sizes)
        cols: list[list[Fraction]] = [[] for _ in labels]
        for choices in iter_choices(sizes):
            vec = payoff(choices)
            if len(vec) != len(labels):
                raise GameError(f"payoff at {choices} has wrong length")
            for i, v in enumerate(vec):
                cols[i].append(as_fraction(v))
        return cls(labels, tuple(tuple(c) for c in cols))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[Sequence]],
                    row_labels: Sequence[str] | None = None,
                    col_labels: Sequence[str] | None = None) -> "Game":
        """Two-player game from a bimatrix given as ``rows[r][c] = (u_row, u_col)``."""
        nr, nc = len(rows), len(rows[0])
        row_labels = row_labels or [f"r{k}" for k in range(nr)]
        col_labels = col_labels or [f"c{k}" for k in range(nc)]
        return cls.from_function([row_labels, col_labels],
                                 lambda ch: rows[ch[0]][ch[1]])

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(labs) for labs in self.labels)

    @property
    def num_profiles(self) -> int:
        total = 1
        for m in self.sizes:
            total *= m
        return total

    def strides(self) -> tuple[int, ...]:
        out, acc = [], 1
        for m in self.sizes:
            out.append(acc)
            acc *= m
        return tuple(out)

    def encode(self, choices: Sequence[int]) -> int:
        if len(choices) != self.n:
            raise GameError(f"profile needs {self.n} choices, got {len(choices)}")
        pid, acc = 0, 1
        for c, m in zip(choices, self.sizes):
            if not 0 <= c < m:
                raise GameError(f"strategy index {c} out of range")
            pid += c * acc
            acc *= m
        return pid

    def decode(self, pid: int) -> tuple[int, ...]:
        if not 0 <= pid < self.num_profiles:
            raise GameError(f"profile id {pid} out of range")
        out = []
        for m in self.sizes:
            pid, c = divmod(pid, m)
            out.append(c)
        return tuple(out)

    def profile(self, ref) -> Profile:
        """Normalize a profile id, choice tuple or label tuple to a Profile."""
        if isinstance(ref, Profile):
            return ref
        if isinstance(ref, int):
            return Profile(self.decode(ref), ref)
        ref = tuple(ref)
        if all(isinstance(x, str) for x in ref):
            ref = self.choices_from_labels(ref)
        return Profile(tuple(ref), self.encode(ref))

    def pid(self, ref) -> int:
        return ref if isinstance(ref, int) else self.profile(ref).id

    def choices_from_labels(self, names: Sequence[str]) -> tuple[int, ...]:
        if len(names) != self.n:
            raise GameError(f"profile needs {self.n} strategies, got {len(names)}")
        out = []
        for i, name in enumerate(names):
            try:
                out.append(self.labels[i].index(name))
            except ValueError:
                raise GameError(f"player {i} has no strategy {name!r}")
        return tuple(out)

    def profile_labels(self, pid: int) -> tuple[str, ...]:
        return tuple(self.labels[i][c] for i, c in enumerate(self.decode(pid)))

    def payoff(self, pid: int) -> tuple[Fraction, ...]:
        return tuple(vec[pid] for vec in self.payoffs)

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return self.labels == other.labels and self.payoffs == other.payoffs

    def __hash__(self):
        return hash((self.labels, self.payoffs))

    def __repr__(self):
        return f"Game(n={self.n}, sizes={self.sizes})"


def iter_choices(sizes: Sequence[int]) -> Iterable[tuple[int, ...]]:
    """All choice tuples in ProfileId order (player 0 varies fastest)."""
    for rev in itertools.product(*(range(m) for m in reversed(sizes))):
        yield rev[::-1]


def unilateral_deviations(game: Game, p) -> list[Deviation]:
    """Every single-player strategy switch from ``p`` with the mover's payoff change."""
    pid = game.pid(p)
    choices = game.decode(pid)
    strides = game.strides()
    out = []
    for i, (c, m) in enumerate(zip(choices, game.sizes)):
        vec = game.payoffs[i]
        base = pid - c * strides[i]
        for alt in range(m):
            if alt == c:
                continue
            q = base + alt * strides[i]
            out.append(Deviation(i, q, vec[q] - vec[pid]))
    return out


def classify_profile(game: Game, p) -> NashKind:
    deltas = [d.delta for d in unilateral_deviations(game, p)]
    if any(d > 0 for d in deltas):
        return NashKind.NOT_NE
    if all(d < 0 for d in deltas):
        return NashKind.STRICT
    return NashKind.WEAK


def enumerate_pure_nash(game: Game) -> list[NashClassification]:
    """Pure Nash equilibria in ProfileId order, tagged strict or weak."""
    out = []
    for pid in range(game.num_profiles):
        kind = classify_profile(game, pid)
        if kind is not NashKind.NOT_NE:
            out.append(NashClassification(pid, kind))
    return out


def reduce(game: Game, coalition: Iterable[int], anchor) -> Game:
    """Reduced game for ``coalition`` with everyone else pinned to ``anchor``.

    Coalition members keep their relative order, so player ``coalition[k]`` of
    the parent becomes player k of the result.
    """
    members = sorted(set(coalition))
    if not members or len(members) >= game.n:
        raise CoalitionError("coalition must be a nonempty proper subset of the players")
    if members[0] < 0 or members[-1] >= game.n:
        raise CoalitionError(f"coalition {members} names unknown players")
    base = list(game.profile(anchor).choices)

    def payoff(sub):
        full = list(base)
        for j, c in zip(members, sub):
            full[j] = c
        pid = game.encode(full)
        return [game.payoffs[j][pid] for j in members]

    return Game.from_function([game.labels[j] for j in members], payoff)


def scale_payoffs(game: Game, factors: Sequence) -> Game:
    """Multiply player i's payoffs by ``factors[i]``."""
    fs = [as_fraction(f) for f in factors]
    return Game(game.labels, tuple(tuple(v * f for v in vec)
                                   for vec, f in zip(game.payoffs, fs)))


def random_game(rng, sizes: Sequence[int], values: Sequence[int] = range(-3, 4)) -> Game:
    """Game with payoffs drawn uniformly from ``values``; ``rng`` is a ``random.Random``."""
    labels = [[f"s{k}" for k in range(m)] for m in sizes]
    n = len(sizes)
    return Game.from_function(labels, lambda ch: [rng.choice(values) for _ in range(n)])


def classic_stag_hunt() -> Game:
    """The two-player stag hunt with A = adopt, D = defect."""
    return Game.from_matrix([[(10, 10), (-1, 0)], [(0, -1), (0, 0)]],
                            ["A", "D"], ["A", "D"])


def generalized_potential_example() -> Game:
    """Generalized ordinal potential game with no ordinal potential."""
    return Game.from_matrix([[(1, 0), (2, 0)], [(2, 0), (0, 1)]],
                            ["T", "B"], ["L", "R"])


def restrict(game: Game, keep: Sequence[Sequence[int]]) -> Game:
    """Subgame in which player i may only use strategies ``keep[i]`` (in that order)."""
    keep = [list(k) for k in keep]
    if len(keep) != game.n or any(not k for k in keep):
        raise GameError("restriction needs a nonempty strategy list per player")
    labels = [[game.labels[i][s] for s in k] for i, k in enumerate(keep)]
    return Game.from_function(
        labels, lambda ch: game.payoff(game.encode([keep[i][c] for i, c in enumerate(ch)])))
