"""Command line entry point: ``revpebble <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import game, machine, simulator, solvability, strategies


def _write(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_strategy(args, parser) -> int:
    if args.n < 0 or args.s < 0:
        parser.error("-n and -s must be non-negative")
    if args.kind == "bennett":
        strat = strategies.bennett_pebble(args.s, args.n)
    else:
        if args.m is None or args.m < 1:
            parser.error("erasure strategy needs -m >= 1")
        if args.s:
            parser.error("-s only applies to bennett")
        strat = strategies.erasure_strategy(args.n, args.m)
    trace = strat.verify()
    top = max(trace.final.occupied, default=0)
    summary = (
        f"# length={len(strat)} moves peak={trace.peak_pebbles} pebbles "
        f"erasures={trace.erasures_used} top_node={top}\n"
    )
    _write(args, strat.to_text() + summary)
    if args.output:
        sys.stdout.write(summary)
    return 0


def _verify_trace(args) -> int:
    try:
        parsed = game.parse_trace(Path(args.trace).read_text())
    except ValueError as exc:
        print(f"ERROR {exc}", file=sys.stderr)
        return 2
    try:
        trace = game.replay(parsed.initial, parsed.moves, parsed.budget)
    except game.IllegalMoveAt as exc:
        print(f"ILLEGAL index={exc.index} move={exc.move} reason={exc.reason}")
        return 1
    print(
        f"OK length={len(trace)} moves peak={trace.peak_pebbles} pebbles "
        f"erasures={trace.erasures_used} final={game.format_config(trace.final)}"
    )
    return 0


def _verify_config(args, parser) -> int:
    try:
        config = game.parse_config(args.realizable, args.game_length, args.n)
    except ValueError as exc:
        parser.error(str(exc))
    chooser = None
    if args.seed is not None:
        chooser = solvability.random_chooser(random.Random(args.seed))
    result = solvability.is_weakly_solvable(config, chooser)
    if not result:
        stuck = config.with_occupied(config.occupied - set(result.removal_order))
        print(f"NOT REALIZABLE {game.format_config(config)} stuck_at={game.format_config(stuck)}")
        return 1
    numbering = result.numbering(config.free)
    print(f"REALIZABLE {game.format_config(config)}")
    print("removal_order=" + ",".join(map(str, result.removal_order)))
    print("numbering=" + ",".join(f"{node}:{rank}" for node, rank in sorted(numbering.items())))
    return 0


def cmd_verify(args, parser) -> int:
    if (args.trace is None) == (args.realizable is None):
        parser.error("give either a trace file or --realizable CONFIG")
    if args.trace is not None:
        return _verify_trace(args)
    return _verify_config(args, parser)


def cmd_enumerate(args, parser) -> int:
    if args.game_length < 0 or args.n < 0:
        parser.error("-t and -n must be non-negative")
    try:
        reach = solvability.enumerate_reachable(args.game_length, args.n, args.cap)
    except solvability.InstanceTooLarge as exc:
        parser.error(str(exc))
    lines = [f"game T_G={args.game_length} n={args.n}", *reach.lines()]
    lines.append(f"# configs={len(reach)} max_node={reach.max_node}")
    _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_simulate(args, parser) -> int:
    try:
        spec = machine.parse_machine(Path(args.machine).read_text())
    except machine.MachineError as exc:
        parser.error(f"bad machine file: {exc}")
    tape_input = "" if args.input == "-" else args.input
    events: list[str] = []
    try:
        direct, steps = machine.run(spec, tape_input, args.step_cap)
        if args.unknown_time:
            final, report = simulator.simulate_unknown_T(
                spec, tape_input, args.segment_length, events=events
            )
        else:
            prof = machine.profile(spec, tape_input, args.step_cap)
            plan = simulator.plan(
                max(1, prof.steps), prof.space, args.plan, spec, args.segment_length
            )
            space = plan.segment_length
            events.append(
                f"PLAN steps={prof.steps} space={prof.space} cells segment_length={space} steps "
                f"pebbles={plan.strategy.declared_pebbles} game_length={plan.strategy.declared_game_length} segments"
            )
            events.append(
                f"PREDICT simulated_steps<={plan.predicted.simulated_steps} "
                f"peak_checkpoints={plan.predicted.peak_checkpoints} "
                f"erasures={plan.predicted.erasures} bits_erased<={plan.predicted.bits_erased}"
            )
            final, report = simulator.simulate_with_strategy(
                spec, tape_input, plan.strategy, space, events=events
            )
    except simulator.InvalidParameters as exc:
        parser.error(str(exc))
    except (machine.MachineError, simulator.SimulationError) as exc:
        print(f"ERROR {exc}", file=sys.stderr)
        return 1
    x, fx = machine.io_pair(machine.initial_desc(spec, tape_input), final)
    events.append(f"OUTPUT x={x} fx={fx} direct_steps={steps}")
    ok = final == direct
    events.append("MATCH direct run" if ok else "MISMATCH direct run")
    _write(args, "\n".join(events) + "\n")
    return 0 if ok else 1


def cmd_tradeoff(args, parser) -> int:
    if not 1 <= args.k_min <= args.k_max < args.n:
        parser.error("need 1 <= k-min <= k-max < n")
    rows = strategies.tradeoff_table(args.n, range(args.k_min, args.k_max + 1), args.segment_space)
    lines = [strategies.TRADEOFF_CSV_HEADER, *(r.csv() for r in rows)]
    _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_machine(args, parser) -> int:
    try:
        spec = machine.parse_machine(Path(args.machine).read_text())
    except machine.MachineError as exc:
        print(f"INVALID {exc}")
        return 1
    out = [machine.format_machine(spec).rstrip("\n")]
    det = machine.check_deterministic(spec)
    out.append(f"# deterministic={'yes' if det else 'no'}")
    if det:
        out.append(f"# reversible={'yes' if machine.check_reversible(spec) else 'no'}")
    bad = sorted(machine.irreversible_quadruples(spec))
    out.append("# irreversible_quadruples=" + ",".join(map(str, bad)))
    _write(args, "\n".join(out) + "\n")
    return 0 if det else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revpebble", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("strategy", help="emit a pebbling strategy as a trace")
    p.add_argument("kind", choices=["bennett", "erasure"])
    p.add_argument("-n", type=int, required=True, help="recursion depth (pebbles)")
    p.add_argument("-m", type=int, help="springboard rounds (erasure only)")
    p.add_argument("-s", type=int, default=0, help="start node (bennett only)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_strategy)

    p = sub.add_parser("verify", help="replay a trace or decide realizability")
    p.add_argument("trace", nargs="?")
    p.add_argument("--realizable", metavar="CONFIG", help="e.g. 'f=0;occ=2,3' or 'occ=3'")
    p.add_argument("-n", type=int, help="pool size when CONFIG omits f")
    p.add_argument("-t", "--game-length", type=int)
    p.add_argument("--seed", type=int, help="randomize the greedy removal choice")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list every reachable configuration")
    p.add_argument("-t", "--game-length", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--cap", type=int, default=solvability.DEFAULT_ENUMERATION_CAP)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("simulate", help="reversibly simulate a machine file")
    p.add_argument("machine")
    p.add_argument("input", help="input tape, '-' for empty")
    p.add_argument("--plan", default="min_space", help="min_space or erasure:<k>")
    p.add_argument("--unknown-time", action="store_true")
    p.add_argument("--segment-length", type=int)
    p.add_argument("--step-cap", type=int, default=machine.DEFAULT_STEP_CAP)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("tradeoff", help="space/erasure/time table as CSV")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--segment-space", type=float, default=1.0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("machine", help="validate a machine file and echo it canonically")
    p.add_argument("machine")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_machine)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
