"""Command line interface: ``deploygames {analyze,transform,simulate,gen,verify}``.

Exit codes: 0 success, 1 a verification check failed, 2 the input could not be
parsed, 3 the profile space exceeds the cap, 4 invalid mechanism parameters.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import gamefile, report
from .dynamics import DynamicsConfig, DynamicsKind, empirical_recurrence
from .game_core import GameError, ProfileCapError, generalized_potential_example, random_game
from .gamefile import GameFileError, MechanismBlock
from .mechanisms import MechanismParamError
from .staghunt import NetworkAdoptionGame, StagHunt, StagHuntError, find_cycle_instance, \
    random_stag_hunt
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_CAP, EXIT_PARAMS = 0, 1, 2, 3, 4


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _mechanism_from_args(args) -> MechanismBlock | None:
    if not getattr(args, "mechanism", None):
        return None
    if args.mechanism == "insurance":
        if args.premium is None or args.floor is None:
            raise MechanismParamError("insurance needs --premium and --floor")
        return MechanismBlock("insurance", _rationals(args.premium), _rationals(args.floor))
    return MechanismBlock("election")


def _rationals(text: str):
    parts = [p.strip() for p in text.split(",")]
    return parts[0] if len(parts) == 1 else tuple(parts)


def _dynamics_config(args) -> DynamicsConfig:
    return DynamicsConfig(DynamicsKind(args.kind), args.max_steps, args.seed, args.burn_in)


def cmd_analyze(args) -> int:
    src = gamefile.load(args.input)
    game = src.induced(force=args.force)
    cfg = _dynamics_config(args) if args.trials else None
    rep = report.analyze(game, src, dominance=args.dominance, order=args.order,
                         dynamics=cfg, trials=args.trials, force=args.force)
    _emit(report.dumps(rep), args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    src = gamefile.load(args.input)
    mech = _mechanism_from_args(args) or src.mechanism
    if mech is None:
        raise MechanismParamError("no mechanism given (use --mechanism or a mechanism block)")
    game = src.induced(mech, force=args.force)
    _emit(gamefile.dumps_normal_form(game, comment=f"{mech.kind}-induced game"), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    src = gamefile.load(args.input)
    game = src.induced(force=args.force)
    cfg = _dynamics_config(args)
    rec = empirical_recurrence(game, cfg, args.trials)
    _emit(report.dumps(report.dynamics_summary(game, rec, cfg)), args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    what = args.what
    if what == "classic-staghunt":
        text = gamefile.dumps_stag_hunt(StagHunt.from_schedule([[-1, 10], [-1, 10]]))
    elif what == "generalized-potential-example":
        text = gamefile.dumps_normal_form(generalized_potential_example())
    elif what == "staghunt":
        sh = random_stag_hunt(rng, args.players, args.magnitude, identity=args.identity)
        text = gamefile.dumps_stag_hunt(sh)
    elif what == "cycle-instance":
        text = gamefile.dumps_stag_hunt(find_cycle_instance(3))
    elif what == "network":
        edges = [tuple(int(x) for x in e.split("-")) for e in args.edges.split(",") if e]
        gamma = _rationals(args.gamma)
        gamma = list(gamma) if isinstance(gamma, tuple) else [gamma] * args.players
        beta = list(_rationals(args.beta)) if "," in args.beta else [args.beta]
        text = gamefile.dumps_network(NetworkAdoptionGame.create(args.players, edges, gamma, beta))
    else:
        sizes = [int(x) for x in args.sizes.split(",")]
        text = gamefile.dumps_normal_form(random_game(rng, sizes, range(-args.magnitude,
                                                                       args.magnitude + 1)))
    mech = _mechanism_from_args(args)
    if mech is not None:
        text += f"mechanism:\n  kind: {mech.kind}\n"
        if mech.kind == "insurance":
            for key in ("premium", "floor"):
                val = getattr(mech, key)
                val = list(val) if isinstance(val, tuple) else val
                text += f"  {key}: {json.dumps(val)}\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    ledger = run_suite(args.suite, args.seed, args.count)
    lines = [f"suite {args.suite} seed={args.seed} count={args.count}"] + ledger.lines()
    lines.append("ALL PASS" if ledger.ok else "FAILURES")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ledger.ok else EXIT_VERIFY


def _add_dynamics_flags(p, trials_default):
    p.add_argument("--kind", default="better-response", choices=[k.value for k in DynamicsKind],
                   help="better-response follows strict arcs, drift also neutral ones")
    p.add_argument("--trials", type=int, default=trials_default)
    p.add_argument("--max-steps", type=int, default=100)
    p.add_argument("--burn-in", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)


def _add_mechanism_flags(p, required=False):
    p.add_argument("--mechanism", choices=["insurance", "election"], required=required)
    p.add_argument("--premium", help="insurance premium, one value or a comma list per player")
    p.add_argument("--floor", help="insured payoff floor above c, one value or a comma list")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deploygames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="equilibria, maximal states, dominance, potentials")
    p.add_argument("input")
    p.add_argument("--dominance", choices=["strict", "weak"], default="strict")
    p.add_argument("--order", choices=["simultaneous", "paper-election-order"],
                   default="simultaneous")
    p.add_argument("--force", action="store_true",
                   help="apply a mechanism to a weak stag hunt variant")
    p.add_argument("--out")
    _add_dynamics_flags(p, trials_default=0)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("transform", help="emit the mechanism-induced game in normal form")
    p.add_argument("input")
    _add_mechanism_flags(p)
    p.add_argument("--force", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("simulate", help="better-response or drift dynamics")
    p.add_argument("input")
    p.add_argument("--force", action="store_true")
    p.add_argument("--out")
    _add_dynamics_flags(p, trials_default=1000)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gen", help="write a generated game file")
    p.add_argument("what", choices=["classic-staghunt", "generalized-potential-example", "staghunt",
                                    "cycle-instance", "network", "random"])
    p.add_argument("--players", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--magnitude", type=int, default=10)
    p.add_argument("--identity", action="store_true",
                   help="stag hunt payoffs depend on who adopts, not just how many")
    p.add_argument("--edges", default="", help="network edges as 0-1,1-2")
    p.add_argument("--gamma", default="1", help="deployment cost, one value or a comma list")
    p.add_argument("--beta", default="1", help="benefit by component size 1..n, comma list")
    p.add_argument("--sizes", default="2,2", help="strategy counts for a random game")
    _add_mechanism_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run a randomized property suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GameFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ProfileCapError as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (MechanismParamError, StagHuntError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
