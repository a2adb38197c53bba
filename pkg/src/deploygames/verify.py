"""Randomized property suites run by ``deploygames verify``."""
from __future__ import annotations

import random
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction

from .game_core import random_game
from .mechanisms import InsuranceParams
from .staghunt import StagHunt, find_cycle_instance, random_stag_hunt
from .properties import (Check, cycle_instance_checks, election_checks, insurance_checks,
                       one_person_check, potential_checks, stag_hunt_checks)

SUITES = ("staghunt-theorems", "mechanism-theorems", "potential-theorems")


@dataclass
class Tally:
    passed: int = 0
    failed: int = 0
    first_failure: str = ""

    @property
    def ok(self) -> bool:
        return self.failed == 0


class Ledger(OrderedDict):
    """Check name -> Tally, in first-seen order."""

    def add(self, checks: list[Check], instance: str) -> None:
        for c in checks:
            t = self.setdefault(c.name, Tally())
            if c.passed:
                t.passed += 1
            else:
                t.failed += 1
                if not t.first_failure:
                    t.first_failure = f"{instance}{': ' + c.detail if c.detail else ''}"

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.values())

    def lines(self) -> list[str]:
        out = []
        for name, t in self.items():
            status = "PASS" if t.ok else "FAIL"
            line = f"{status}  {name}  ({t.passed}/{t.passed + t.failed})"
            if not t.ok:
                line += f"  first failure: {t.first_failure}"
            out.append(line)
        return out


def random_stag_hunt_mix(rng: random.Random, n: int) -> StagHunt:
    """Alternate count-based and identity-dependent stag hunts with a random hare payoff."""
    return random_stag_hunt(rng, n, magnitude=10, identity=rng.random() < 0.5,
                            c=rng.randint(-3, 3))


def random_insurance_params(rng: random.Random, sh: StagHunt) -> InsuranceParams:
    premium, floor = [], []
    for i in range(sh.n):
        top = sh.adoption[i][sh.full] - sh.c
        premium.append(Fraction(rng.randint(1, 20), rng.randint(1, 4)))
        floor.append(top * Fraction(rng.randint(1, 99), 100))
    return InsuranceParams(tuple(premium), tuple(floor))


def staghunt_suite(seed: int, count: int) -> Ledger:
    rng = random.Random(seed)
    ledger = Ledger()
    ledger.add(cycle_instance_checks(find_cycle_instance(3)), "cycle instance")
    for k in range(count):
        sh = random_stag_hunt_mix(rng, rng.randint(2, 5))
        ledger.add(stag_hunt_checks(sh), f"stag hunt #{k}")
    return ledger


def mechanism_suite(seed: int, count: int) -> Ledger:
    rng = random.Random(seed)
    ledger = Ledger()
    for k in range(count):
        sh = random_stag_hunt_mix(rng, rng.randint(2, 4))
        ledger.add(insurance_checks(sh, random_insurance_params(rng, sh)), f"stag hunt #{k}")
        ledger.add(election_checks(sh), f"stag hunt #{k}")
    return ledger


def potential_suite(seed: int, count: int) -> Ledger:
    rng = random.Random(seed)
    ledger = Ledger()
    for k in range(count):
        n = rng.randint(1, 3)
        sizes = [rng.randint(1, 3) for _ in range(n)]
        game = random_game(rng, sizes, values=range(-2, 3))
        if n == 1:
            ledger.add([one_person_check(game)], f"game #{k}")
        ledger.add(potential_checks(game), f"game #{k} sizes={sizes}")
    return ledger


def run_suite(name: str, seed: int = 0, count: int = 100) -> Ledger:
    runners = {"staghunt-theorems": staghunt_suite, "mechanism-theorems": mechanism_suite,
               "potential-theorems": potential_suite}
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return runners[name](seed, count)
