"""Trace files (CSV and JSON) and plain-text strategy files.

A trace file records one row per applied switch: iteration index, owner,
source, target. The header identifies the run (game id, algorithm, rule,
seed, game size); the footer carries the switching-iteration count and the
optimality certificate status. Both serializations hold the same rows.

Strategy files are one ``<node-id> <successor-id>`` pair per line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .game import ParityGame, Strategy, check_strategy
from .solvers import SolveResult, verify_optimal
from .valuation import improving_moves, valuate

Row = tuple[int, int, int, int]  # iteration, owner, from, to


@dataclass(frozen=True)
class TraceHeader:
    game_id: str
    algorithm: str
    rule: str
    seed: int | None
    nodes: int
    edges: int


@dataclass(frozen=True)
class TraceFile:
    header: TraceHeader
    rows: tuple[Row, ...]
    iterations: int
    certificate: str


def certificate_status(game: ParityGame, result: SolveResult) -> str:
    """"verified" when the run's terminal strategies are optimal: the pair
    check for two-strategy runs, no improving moves for one-strategy runs."""
    if result.sigma is not None and result.tau is not None:
        return "verified" if verify_optimal(game, result.sigma, result.tau).ok else "failed"
    strategy = result.sigma if result.sigma is not None else result.tau
    assert strategy is not None
    xi = valuate(game, strategy)
    return "verified" if not improving_moves(game, strategy, xi) else "failed"


def build_trace_file(
    game: ParityGame,
    result: SolveResult,
    game_id: str,
    algorithm: str,
    rule: str,
    seed: int | None = None,
) -> TraceFile:
    header = TraceHeader(game_id, algorithm, rule, seed, game.num_nodes, game.num_edges)
    rows = tuple(
        (record.index, owner, source, target)
        for record in result.trace.iterations
        for owner, source, target in record.switches
    )
    return TraceFile(header, rows, result.iterations, certificate_status(game, result))


def to_csv(trace: TraceFile) -> str:
    h = trace.header
    seed = "-" if h.seed is None else str(h.seed)
    lines = [
        f"# game={h.game_id} algorithm={h.algorithm} rule={h.rule} seed={seed}"
        f" nodes={h.nodes} edges={h.edges}",
        "iteration,owner,from,to",
    ]
    lines.extend(f"{it},{owner},{src},{dst}" for it, owner, src, dst in trace.rows)
    lines.append(f"# iterations={trace.iterations} certificate={trace.certificate}")
    return "\n".join(lines) + "\n"


def from_csv(text: str) -> TraceFile:
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) < 3 or not lines[0].startswith("#") or not lines[-1].startswith("#"):
        raise ValueError("not a trace CSV: missing header or footer comment lines")

    def fields(comment: str) -> dict[str, str]:
        return dict(part.split("=", 1) for part in comment.lstrip("# ").split())

    head = fields(lines[0])
    foot = fields(lines[-1])
    if lines[1] != "iteration,owner,from,to":
        raise ValueError("unexpected trace CSV column header")
    rows = []
    for line in lines[2:-1]:
        it, owner, src, dst = line.split(",")
        rows.append((int(it), int(owner), int(src), int(dst)))
    header = TraceHeader(
        head["game"],
        head["algorithm"],
        head["rule"],
        None if head["seed"] == "-" else int(head["seed"]),
        int(head["nodes"]),
        int(head["edges"]),
    )
    return TraceFile(header, tuple(rows), int(foot["iterations"]), foot["certificate"])


def to_json(trace: TraceFile) -> str:
    h = trace.header
    payload = {
        "header": {
            "game": h.game_id,
            "algorithm": h.algorithm,
            "rule": h.rule,
            "seed": h.seed,
            "nodes": h.nodes,
            "edges": h.edges,
        },
        "rows": [list(row) for row in trace.rows],
        "footer": {"iterations": trace.iterations, "certificate": trace.certificate},
    }
    return json.dumps(payload, indent=2) + "\n"


def from_json(text: str) -> TraceFile:
    payload = json.loads(text)
    h = payload["header"]
    header = TraceHeader(
        h["game"], h["algorithm"], h["rule"], h["seed"], h["nodes"], h["edges"]
    )
    rows = tuple(tuple(row) for row in payload["rows"])
    footer = payload["footer"]
    return TraceFile(header, rows, footer["iterations"], footer["certificate"])


def write_strategy_text(strategy: Strategy) -> str:
    lines = [f"{v} {w}" for v, w in sorted(strategy.choice.items())]
    return "\n".join(lines) + "\n"


def parse_strategy_text(text: str, game: ParityGame) -> Strategy:
    """Read a strategy file against a game; the owning player is inferred
    from the listed nodes and the choice map must be total for that player."""
    choice: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ValueError(f"strategy line {lineno} must be '<node-id> <successor-id>'")
        v, w = int(parts[0]), int(parts[1])
        if v in choice:
            raise ValueError(f"strategy line {lineno} repeats node {v}")
        choice[v] = w
    if not choice:
        raise ValueError("strategy file lists no choices")
    for v in choice:
        if v not in game:
            raise ValueError(f"strategy names node {v} which is not in the game")
    owners = {game.owner(v) for v in choice}
    if len(owners) != 1:
        raise ValueError("strategy file mixes nodes of both players")
    strategy = Strategy(owners.pop(), choice)
    check_strategy(game, strategy)
    return strategy
