"""Brute-force reference computations used as test oracles.

These deliberately avoid the library's graph, equilibrium and potential code:
profiles are plain tuples, reachability is a transitive closure over a matrix.
"""
from __future__ import annotations

import itertools
from functools import lru_cache


def table(game):
    """Map choice tuple -> payoff tuple, using an independent mixed-radix index."""
    sizes = [len(l) for l in game.labels]
    out = {}
    for rev in itertools.product(*[range(m) for m in reversed(sizes)]):
        ch = tuple(reversed(rev))
        pid, stride = 0, 1
        for c, m in zip(ch, sizes):
            pid += c * stride
            stride *= m
        out[ch] = tuple(game.payoffs[i][pid] for i in range(len(sizes)))
    return out


def pid_of(game, ch):
    pid, stride = 0, 1
    for c, labs in zip(ch, game.labels):
        pid += c * stride
        stride *= len(labs)
    return pid


def neighbours(game, ch):
    for i, labs in enumerate(game.labels):
        for s in range(len(labs)):
            if s != ch[i]:
                yield i, ch[:i] + (s,) + ch[i + 1:]


def nash(game):
    """{profile: 'strict'|'weak'} for every pure equilibrium."""
    t = table(game)
    out = {}
    for ch, u in t.items():
        deltas = [t[q][i] - u[i] for i, q in neighbours(game, ch)]
        if all(d <= 0 for d in deltas):
            out[ch] = "strict" if all(d < 0 for d in deltas) else "weak"
    return out


def arcs(game, strict=True):
    """Set of (from, to, positive) over choice tuples."""
    t = table(game)
    out = set()
    for ch, u in t.items():
        for i, q in neighbours(game, ch):
            d = t[q][i] - u[i]
            if d > 0 or (not strict and d == 0):
                out.add((ch, q, d > 0))
    return out


def closure(game, strict=True):
    """Reflexive-transitive reachability as {profile: set of reachable profiles}."""
    t = table(game)
    reach = {p: {p} for p in t}
    for a, b, _ in arcs(game, strict):
        reach[a].add(b)
    changed = True
    while changed:
        changed = False
        for p in reach:
            new = set().union(*(reach[q] for q in reach[p]))
            if new != reach[p]:
                reach[p] = new
                changed = True
    return reach


def maximal(game, strict=True):
    """Profiles from which every reachable profile can reach back."""
    reach = closure(game, strict)
    return {p for p in reach if all(p in reach[q] for q in reach[p])}


def ordinally_acyclic(game):
    reach = closure(game, strict=False)
    return not any(a in reach[b] for a, b, pos in arcs(game, strict=False) if pos)


def has_improvement_cycle(game):
    reach = closure(game, strict=True)
    return any(a in reach[b] for a, b, _ in arcs(game, strict=True))


def _sign(x):
    return (x > 0) - (x < 0)


@lru_cache(maxsize=None)
def _potential_exists(signs):
    """``signs`` lists (a, b, sign of the mover's gain) for every deviation in a 4-profile game."""
    for values in itertools.product(range(4), repeat=4):
        if all(_sign(values[b] - values[a]) == s for a, b, s in signs):
            return True
    return False


def ordinal_potential_exists_2x2(game):
    """Search every assignment of ranks 0..3 for an exact sign-matching potential."""
    assert [len(l) for l in game.labels] == [2, 2]
    t = table(game)
    signs = []
    for ch, u in t.items():
        for i, q in neighbours(game, ch):
            signs.append((pid_of(game, ch), pid_of(game, q), _sign(t[q][i] - u[i])))
    return _potential_exists(tuple(sorted(signs)))
