"""Command-line interface: generate, solve, reduce, winners, experiment.

Exit codes: 0 on success, 2 on input errors (bad flags, unreadable or
invalid files, inadmissible starting strategies), 3 on internal invariant
violations (a solver run that breaks its own guarantees).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import families, pgsolver, reduction, traces
from .game import PLAYER0, PLAYER1, ParityGame, Strategy, validate_game
from .rules import make_rule
from .solvers import SolverInvariantError, run_gssi, run_si, run_ssi
from .valuation import NotAdmissibleError, valuate


class InputError(Exception):
    """User-facing input problem; maps to exit code 2."""


def _positive(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if number < 1:
        raise argparse.ArgumentTypeError("value must be at least 1")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sinkgames",
        description="Generate, solve, and reduce sink parity games; reproduce "
        "worst-case iteration counts of the symmetric improvement solvers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a worst-case family instance")
    gen.add_argument("family", choices=("table1", "table2"))
    gen.add_argument("--n", type=_positive, required=True, help="family size parameter")
    gen.add_argument("--out", help="output file (default: stdout)")
    gen.add_argument("--sigma0-out", help="also write the start strategy of player 0")
    gen.add_argument("--tau0-out", help="also write the start strategy of player 1")
    gen.set_defaults(handler=cmd_generate)

    solve = sub.add_parser("solve", help="run an improvement solver on a game")
    solve.add_argument("--algo", choices=("si", "ssi", "gssi"), required=True)
    solve.add_argument("--rule", choices=("all", "single", "random"), default="all")
    solve.add_argument("--seed", type=int, default=None, help="seed for the random rule")
    solve.add_argument("--game", help="PGSolver-format game file")
    solve.add_argument("--family", choices=("table1", "table2"))
    solve.add_argument("--n", type=_positive, help="family size (with --family)")
    solve.add_argument("--sigma0", help="initial player 0 strategy file")
    solve.add_argument("--tau0", help="initial player 1 strategy file")
    solve.add_argument("--player", type=int, choices=(0, 1), default=None,
                       help="which player improves (si only, default 0)")
    solve.add_argument("--trace", help="write the iteration trace (.csv or .json)")
    solve.add_argument("--sigma-out", help="write the final player 0 strategy")
    solve.add_argument("--tau-out", help="write the final player 1 strategy")
    solve.set_defaults(handler=cmd_solve)

    red = sub.add_parser("reduce", help="turn any parity game into a sink game")
    red.add_argument("--game", required=True)
    red.add_argument("--out", required=True)
    red.set_defaults(handler=cmd_reduce)

    win = sub.add_parser("winners", help="winning sets of an arbitrary parity game")
    win.add_argument("--game", required=True)
    win.add_argument("--sigma-out", help="write player 0's winning strategy")
    win.add_argument("--tau-out", help="write player 1's winning strategy")
    win.set_defaults(handler=cmd_winners)

    exp = sub.add_parser("experiment", help="reproduction experiments")
    exp_sub = exp.add_subparsers(dest="experiment", required=True)
    table = exp_sub.add_parser(
        "iteration-table", help="measured vs closed-form iteration counts"
    )
    table.add_argument("--family", choices=("table1", "table2"), required=True)
    table.add_argument("--algo", choices=("ssi", "gssi"), required=True)
    table.add_argument("--n-max", type=_positive, required=True)
    table.set_defaults(handler=cmd_iteration_table)

    return parser


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def _load_game(path: str) -> ParityGame:
    return pgsolver.parse_pgsolver(_read_text(path))


def _sink_distances(game: ParityGame) -> dict[int, int]:
    from collections import deque

    reverse: dict[int, list[int]] = {v: [] for v in game.node_ids}
    for v in game.node_ids:
        for w in game.successors(v):
            reverse[w].append(v)
    dist = {game.sink: 0}
    queue = deque([game.sink])
    while queue:
        w = queue.popleft()
        for v in reverse[w]:
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    return dist


def _default_strategy(game: ParityGame, player: int) -> Strategy:
    """An admissible starting strategy found by simple sink-seeking
    heuristics; admissibility is checked, not assumed."""
    dist = _sink_distances(game)
    far = game.num_nodes + 1

    def greedy(tie_high: bool) -> Strategy:
        choice = {}
        for v in game.nodes_of(player):
            succs = game.successors(v)
            key = lambda w: (dist.get(w, far), -w if tie_high else w)
            choice[v] = min(succs, key=key)
        return Strategy(player, choice)

    candidates = [greedy(tie_high=False), greedy(tie_high=True)]
    for candidate in candidates:
        try:
            valuate(game, candidate)
        except NotAdmissibleError:
            continue
        return candidate
    raise InputError(
        f"no admissible default strategy found for player {player}; "
        f"provide one with {'--sigma0' if player == PLAYER0 else '--tau0'}"
    )


def _check_admissible(game: ParityGame, strategy: Strategy, name: str) -> None:
    try:
        valuate(game, strategy)
    except NotAdmissibleError as exc:
        raise InputError(f"{name} is not admissible: {exc}") from exc
    except ValueError as exc:
        raise InputError(f"{name} is invalid: {exc}") from exc


def cmd_generate(args: argparse.Namespace) -> int:
    inst = families.generate(args.family, args.n)
    text = pgsolver.write_pgsolver(inst.game)
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    if args.sigma0_out:
        _write_text(args.sigma0_out, traces.write_strategy_text(inst.sigma0))
    if args.tau0_out:
        _write_text(args.tau0_out, traces.write_strategy_text(inst.tau0))
    return 0


def _resolve_solve_inputs(args: argparse.Namespace):
    if bool(args.game) == bool(args.family):
        raise InputError("choose exactly one of --game or --family")
    if args.family:
        if args.n is None:
            raise InputError("--family needs --n")
        inst = families.generate(args.family, args.n)
        game = inst.game
        game_id = f"{args.family}-n{args.n}"
        sigma0, tau0 = inst.sigma0, inst.tau0
    else:
        game = _load_game(args.game)
        game_id = Path(args.game).name
        violations = validate_game(game, require_sink=True)
        if violations:
            raise InputError("; ".join(str(v) for v in violations))
        sigma0 = _default_strategy(game, PLAYER0)
        tau0 = _default_strategy(game, PLAYER1)
    if args.sigma0:
        sigma0 = traces.parse_strategy_text(_read_text(args.sigma0), game)
        if sigma0.player != PLAYER0:
            raise InputError("--sigma0 file describes a player 1 strategy")
    if args.tau0:
        tau0 = traces.parse_strategy_text(_read_text(args.tau0), game)
        if tau0.player != PLAYER1:
            raise InputError("--tau0 file describes a player 0 strategy")
    return game, game_id, sigma0, tau0


def cmd_solve(args: argparse.Namespace) -> int:
    game, game_id, sigma0, tau0 = _resolve_solve_inputs(args)
    if args.player is not None and args.algo != "si":
        raise InputError("--player only applies to --algo si")
    try:
        rule = make_rule(args.rule, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    if args.algo == "si":
        player = PLAYER0 if args.player in (None, 0) else PLAYER1
        start = sigma0 if player == PLAYER0 else tau0
        _check_admissible(game, start, "the initial strategy")
        result = run_si(game, start, rule)
    else:
        _check_admissible(game, sigma0, "the initial player 0 strategy")
        _check_admissible(game, tau0, "the initial player 1 strategy")
        runner = run_ssi if args.algo == "ssi" else run_gssi
        result = runner(game, sigma0, tau0, rule)

    status = traces.certificate_status(game, result)
    print(f"algorithm: {args.algo}")
    print(f"rule: {args.rule}")
    print(f"seed: {'-' if args.seed is None else args.seed}")
    print(f"iterations: {result.iterations}")
    print(f"certificate: {status}")
    if result.sigma is not None:
        print("sigma: " + " ".join(f"{v}->{w}" for v, w in sorted(result.sigma.choice.items())))
    if result.tau is not None:
        print("tau: " + " ".join(f"{v}->{w}" for v, w in sorted(result.tau.choice.items())))

    if args.sigma_out:
        if result.sigma is None:
            raise InputError("run produced no player 0 strategy for --sigma-out")
        _write_text(args.sigma_out, traces.write_strategy_text(result.sigma))
    if args.tau_out:
        if result.tau is None:
            raise InputError("run produced no player 1 strategy for --tau-out")
        _write_text(args.tau_out, traces.write_strategy_text(result.tau))
    if args.trace:
        trace = traces.build_trace_file(game, result, game_id, args.algo, args.rule, args.seed)
        if args.trace.endswith(".csv"):
            _write_text(args.trace, traces.to_csv(trace))
        elif args.trace.endswith(".json"):
            _write_text(args.trace, traces.to_json(trace))
        else:
            raise InputError("--trace file must end in .csv or .json")
    if status != "verified":
        raise SolverInvariantError("run terminated at a non-optimal strategy")
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    game = _load_game(args.game)
    reduced, _ = reduction.reduce_game(game)
    _write_text(args.out, pgsolver.write_pgsolver(reduced))
    return 0


def cmd_winners(args: argparse.Namespace) -> int:
    game = _load_game(args.game)
    result = reduction.solve_winners(game)
    print("W0: " + " ".join(str(v) for v in sorted(result.w0)))
    print("W1: " + " ".join(str(v) for v in sorted(result.w1)))
    for v, w in sorted(result.strategy0.items()):
        print(f"win0 {v} {w}")
    for v, w in sorted(result.strategy1.items()):
        print(f"win1 {v} {w}")
    if args.sigma_out:
        _write_text(
            args.sigma_out,
            "".join(f"{v} {w}\n" for v, w in sorted(result.strategy0.items())),
        )
    if args.tau_out:
        _write_text(
            args.tau_out,
            "".join(f"{v} {w}\n" for v, w in sorted(result.strategy1.items())),
        )
    return 0


def cmd_iteration_table(args: argparse.Namespace) -> int:
    runner = run_ssi if args.algo == "ssi" else run_gssi
    rule = make_rule("all")
    print(f"{'n':>3} {'iterations':>12} {'expected':>12} {'match':>6}")
    mismatch = False
    for n in range(1, args.n_max + 1):
        inst = families.generate(args.family, n)
        result = runner(inst.game, inst.sigma0, inst.tau0, rule)
        expected = families.expected_iterations(args.family, args.algo, n)
        if expected is None:
            expected_text, match = "-", "-"
        else:
            match = "yes" if result.iterations == expected else "no"
            mismatch = mismatch or match == "no"
            expected_text = str(expected)
        print(f"{n:>3} {result.iterations:>12} {expected_text:>12} {match:>6}")
    if mismatch:
        raise SolverInvariantError("measured iteration counts deviate from the closed form")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.handler(args)
    except (InputError, pgsolver.ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotAdmissibleError, SolverInvariantError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
