"""Reading and writing game files.

A game file is a YAML mapping with a ``format`` key:

``normal-form``
    ``strategies`` (one label list per player) and ``payoffs``, a list of
    ``[[label, ...], [payoff, ...]]`` rows covering every profile once.
``stag-hunt``
    ``c`` and either ``schedules`` (player i's payoff when k players adopt, k = 1..n)
    or ``adoption`` (per player, a list of ``[[adopters...], payoff]`` pairs).
``network-adoption``
    ``players``, ``edges``, ``gamma`` (costs) and ``beta`` (benefit by component size 1..n).

Any of them may carry a ``mechanism`` block: ``{kind: insurance, premium, floor}``
or ``{kind: election}``. Numbers are integers or ``"p/q"`` strings; floats are
rejected so payoffs stay exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import yaml

from .game_core import Game, GameError, ProfileCapError, as_fraction, check_profile_count, \
    format_fraction, iter_choices
from .mechanisms import InsuranceParams, MechanismParamError, election_transform, \
    insurance_transform
from .staghunt import NetworkAdoptionGame, StagHunt, StagHuntClass, network_to_game, \
    to_game, validate_stag_hunt

FORMATS = ("normal-form", "stag-hunt", "network-adoption")


class GameFileError(GameError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class _Float:
    def __init__(self, text):
        self.text = text


class _Doc:
    """Plain data converted from a YAML node tree, with a source mark per path."""

    def __init__(self, text: str):
        try:
            root = yaml.compose(text, Loader=yaml.SafeLoader)
        except yaml.MarkedYAMLError as exc:
            mark = exc.problem_mark
            raise GameFileError(f"invalid YAML: {exc.problem}",
                                mark.line + 1 if mark else None,
                                mark.column + 1 if mark else None)
        if root is None:
            raise GameFileError("empty game file", 1, 1)
        self.marks: dict[tuple, tuple[int, int]] = {}
        self.data = self._convert(root, ())

    def _convert(self, node, path):
        self.marks[path] = (node.start_mark.line + 1, node.start_mark.column + 1)
        if isinstance(node, yaml.MappingNode):
            out = {}
            for k, v in node.value:
                key = str(k.value)
                out[key] = self._convert(v, path + (key,))
            return out
        if isinstance(node, yaml.SequenceNode):
            return [self._convert(v, path + (i,)) for i, v in enumerate(node.value)]
        tag = node.tag
        if tag.endswith(":int"):
            return int(node.value.replace("_", ""), 0)
        if tag.endswith(":float"):
            return _Float(node.value)
        if tag.endswith(":null"):
            return None
        if tag.endswith(":bool"):
            return node.value.lower() in ("true", "yes", "on")
        return node.value

    def error(self, path, message) -> GameFileError:
        while path not in self.marks and path:
            path = path[:-1]
        line, col = self.marks.get(path, (None, None))
        return GameFileError(message, line, col)

    def get(self, path, default=...):
        cur = self.data
        for key in path:
            if isinstance(cur, dict) and key in cur:
                cur = cur[key]
            elif isinstance(cur, list) and isinstance(key, int) and key < len(cur):
                cur = cur[key]
            elif default is not ...:
                return default
            else:
                raise self.error(path[:-1], f"missing field {'.'.join(map(str, path))!r}")
        return cur

    def rational(self, path) -> Fraction:
        value = self.get(path)
        if isinstance(value, _Float):
            raise self.error(path, f"float {value.text} not allowed; write a rational like \"1/2\"")
        try:
            return as_fraction(value)
        except GameError as exc:
            raise self.error(path, str(exc))

    def seq(self, path, length: int | None = None) -> list:
        value = self.get(path)
        if not isinstance(value, list):
            raise self.error(path, f"{'.'.join(map(str, path))} must be a list")
        if length is not None and len(value) != length:
            raise self.error(path, f"expected {length} entries, got {len(value)}")
        return value

    def integer(self, path) -> int:
        value = self.get(path)
        if not isinstance(value, int) or isinstance(value, bool):
            raise self.error(path, f"{'.'.join(map(str, path))} must be an integer")
        return value


@dataclass(frozen=True)
class MechanismBlock:
    kind: str
    premium: Any = None
    floor: Any = None


@dataclass(frozen=True)
class GameFile:
    format: str
    basis: Game
    stag_hunt: StagHunt | None = None
    network: NetworkAdoptionGame | None = None
    mechanism: MechanismBlock | None = None

    def basis_stag_hunt(self, force: bool = False) -> StagHunt:
        if self.stag_hunt is not None:
            return self.stag_hunt
        check = validate_stag_hunt(self.basis) if all(m == 2 for m in self.basis.sizes) else None
        if check is None or check.stag_hunt is None:
            why = "needs two strategies per player" if check is None else check.reason
            raise MechanismParamError(f"basis game is not a stag hunt: {why}")
        if check.kind is StagHuntClass.WEAK_VARIANT and not force:
            raise MechanismParamError(
                f"basis game is a weak stag hunt variant ({check.reason}); use --force")
        return check.stag_hunt

    def induced(self, mechanism: MechanismBlock | None = None, force: bool = False) -> Game:
        """The game to analyze: the basis, or the mechanism-induced game."""
        mech = mechanism or self.mechanism
        if mech is None:
            return self.basis
        sh = self.basis_stag_hunt(force)
        if mech.kind == "insurance":
            if mech.premium is None or mech.floor is None:
                raise MechanismParamError("insurance needs premium and floor")
            params = InsuranceParams.uniform(sh.n, mech.premium, mech.floor)
            return insurance_transform(sh, params, force=force)
        if mech.kind == "election":
            return election_transform(sh, force=force)
        raise MechanismParamError(f"unknown mechanism {mech.kind!r}")


def loads(text: str) -> GameFile:
    doc = _Doc(text)
    if not isinstance(doc.data, dict):
        raise doc.error((), "game file must be a mapping")
    fmt = doc.get(("format",))
    if fmt not in FORMATS:
        raise doc.error(("format",), f"format must be one of {', '.join(FORMATS)}")
    if fmt == "normal-form":
        out = GameFile(fmt, _load_normal_form(doc))
    elif fmt == "stag-hunt":
        sh = _load_stag_hunt(doc)
        out = GameFile(fmt, to_game(sh), stag_hunt=sh)
    else:
        ng = _load_network(doc)
        out = GameFile(fmt, network_to_game(ng), network=ng)
    mech = doc.get(("mechanism",), None)
    if mech is not None:
        out = GameFile(out.format, out.basis, out.stag_hunt, out.network, _load_mechanism(doc))
    return out


def load(path) -> GameFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _load_mechanism(doc: _Doc) -> MechanismBlock:
    kind = doc.get(("mechanism", "kind"))
    if kind == "election":
        return MechanismBlock("election")
    if kind != "insurance":
        raise doc.error(("mechanism", "kind"), "mechanism kind must be insurance or election")
    vals = {}
    for key in ("premium", "floor"):
        raw = doc.get(("mechanism", key))
        if isinstance(raw, list):
            vals[key] = tuple(doc.rational(("mechanism", key, i)) for i in range(len(raw)))
        else:
            vals[key] = doc.rational(("mechanism", key))
    return MechanismBlock("insurance", vals["premium"], vals["floor"])


def _load_normal_form(doc: _Doc) -> Game:
    strategies = doc.seq(("strategies",))
    if not strategies:
        raise doc.error(("strategies",), "need at least one player")
    labels = []
    for i in range(len(strategies)):
        labs = doc.seq(("strategies", i))
        if not labs:
            raise doc.error(("strategies", i), f"player {i} has no strategies")
        labels.append(tuple(str(x) for x in labs))
        if len(set(labels[-1])) != len(labels[-1]):
            raise doc.error(("strategies", i), f"player {i} has duplicate strategy labels")
    declared = doc.get(("players",), None)
    if declared is not None and declared != len(labels):
        raise doc.error(("players",), f"players is {declared} but {len(labels)} strategy lists given")
    sizes = [len(l) for l in labels]
    total = check_profile_count(sizes)
    index = [{lab: k for k, lab in enumerate(labs)} for labs in labels]
    n = len(labels)
    rows = doc.seq(("payoffs",))
    table: dict[tuple[int, ...], tuple[Fraction, ...]] = {}
    for r in range(len(rows)):
        row = doc.seq(("payoffs", r))
        if len(row) != 2:
            raise doc.error(("payoffs", r), "payoff row must be [profile, payoffs]")
        prof = doc.seq(("payoffs", r, 0), n)
        doc.seq(("payoffs", r, 1), n)
        choices = []
        for i, lab in enumerate(prof):
            if str(lab) not in index[i]:
                raise doc.error(("payoffs", r, 0, i), f"player {i} has no strategy {lab!r}")
            choices.append(index[i][str(lab)])
        key = tuple(choices)
        if key in table:
            raise doc.error(("payoffs", r), f"duplicate payoff row for profile {list(prof)}")
        table[key] = tuple(doc.rational(("payoffs", r, 1, i)) for i in range(n))
    if len(table) != total:
        missing = next(ch for ch in iter_choices(sizes) if ch not in table)
        raise doc.error(("payoffs",), f"{total - len(table)} profiles lack payoffs, e.g. "
                        f"{[labels[i][c] for i, c in enumerate(missing)]}")
    return Game.from_function(labels, lambda ch: table[ch])


def _load_stag_hunt(doc: _Doc) -> StagHunt:
    c = doc.rational(("c",)) if doc.get(("c",), None) is not None else Fraction(0)
    has_sched = doc.get(("schedules",), None) is not None
    has_sets = doc.get(("adoption",), None) is not None
    if has_sched == has_sets:
        raise doc.error((), "stag-hunt needs exactly one of schedules or adoption")
    try:
        if has_sched:
            sched = doc.seq(("schedules",))
            n = len(sched)
            check_profile_count([2] * n)
            rows = [[doc.rational(("schedules", i, k)) for k in range(len(doc.seq(("schedules", i), n)))]
                    for i in range(n)]
            sh = StagHunt.from_schedule(rows, c, validate=False)
        else:
            per_player = doc.seq(("adoption",))
            n = len(per_player)
            check_profile_count([2] * n)
            tables = [dict() for _ in range(n)]
            for i in range(n):
                for r in range(len(doc.seq(("adoption", i)))):
                    doc.seq(("adoption", i, r), 2)
                    members = doc.seq(("adoption", i, r, 0))
                    if not all(isinstance(m, int) and 0 <= m < n for m in members):
                        raise doc.error(("adoption", i, r, 0), "adopters must be player indices")
                    if i not in members:
                        raise doc.error(("adoption", i, r, 0), f"adopter set must contain player {i}")
                    mask = sum(1 << m for m in set(members))
                    tables[i][mask] = doc.rational(("adoption", i, r, 1))
                need = [m for m in range(1 << n) if m >> i & 1]
                if len(tables[i]) != len(need):
                    raise doc.error(("adoption", i), f"player {i}: need a payoff for each of the "
                                    f"{len(need)} adopter sets containing it")
            sh = StagHunt(c, tuple(tuple(t.get(m) for m in range(1 << n)) for t in tables))
    except ProfileCapError:
        raise
    except GameFileError:
        raise
    except GameError as exc:
        raise doc.error(("schedules",) if has_sched else ("adoption",), str(exc))
    if sh.classify()[0] is StagHuntClass.NOT_STAG_HUNT:
        raise doc.error((), f"not a stag hunt: {sh.classify()[1]}")
    return sh


def _load_network(doc: _Doc) -> NetworkAdoptionGame:
    n = doc.integer(("players",))
    check_profile_count([2] * n)
    edges = []
    for e in range(len(doc.seq(("edges",)))):
        pair = doc.seq(("edges", e), 2)
        if not all(isinstance(x, int) for x in pair):
            raise doc.error(("edges", e), "edge endpoints must be node indices")
        edges.append(tuple(pair))
    gamma = [doc.rational(("gamma", i)) for i in range(len(doc.seq(("gamma",), n)))]
    beta = [doc.rational(("beta", k)) for k in range(len(doc.seq(("beta",), n)))]
    try:
        return NetworkAdoptionGame.create(n, edges, gamma, beta)
    except GameError as exc:
        raise doc.error((), str(exc))


def _q(x: Fraction) -> str:
    return json.dumps(format_fraction(x))


def dumps_normal_form(game: Game, comment: str | None = None) -> str:
    """Explicit normal form of ``game``, rows in ProfileId order."""
    lines = []
    if comment:
        lines += [f"# {line}" for line in comment.splitlines()]
    lines.append("format: normal-form")
    lines.append(f"players: {game.n}")
    lines.append("strategies:")
    lines += [f"- {json.dumps(list(labs))}" for labs in game.labels]
    lines.append("payoffs:")
    for pid in range(game.num_profiles):
        prof = json.dumps(list(game.profile_labels(pid)))
        vals = ", ".join(_q(v) for v in game.payoff(pid))
        lines.append(f"- [{prof}, [{vals}]]")
    return "\n".join(lines) + "\n"


def dumps_stag_hunt(sh: StagHunt) -> str:
    lines = ["format: stag-hunt", f"c: {_q(sh.c)}"]
    sched = sh.schedule
    if sched is not None:
        lines.append("schedules:")
        lines += [f"- [{', '.join(_q(v) for v in row)}]" for row in sched]
    else:
        lines.append("adoption:")
        for i, row in enumerate(sh.adoption):
            lines.append("-")
            for mask, v in enumerate(row):
                if v is not None:
                    members = [j for j in range(sh.n) if mask >> j & 1]
                    lines.append(f"  - [{json.dumps(members)}, {_q(v)}]")
    return "\n".join(lines) + "\n"


def dumps_network(ng: NetworkAdoptionGame) -> str:
    return "\n".join([
        "format: network-adoption",
        f"players: {ng.n}",
        f"edges: {json.dumps([list(e) for e in ng.edges])}",
        f"gamma: [{', '.join(_q(g) for g in ng.gamma)}]",
        f"beta: [{', '.join(_q(b) for b in ng.beta)}]",
    ]) + "\n"
