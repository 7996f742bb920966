"""Reduction of arbitrary parity games to sink games and winner extraction.

Any parity game can be solved by (1) subdividing every same-owner edge so
no cycle stays within one player's nodes, (2) adding a sink with an escape
edge from every player 0 node and a high even-priority node ``w`` with an
escape from every player 1 node, (3) finding the optimal strategy pair of
the resulting sink game, and (4) reading each original node's winner off
whether the optimal play from it passes ``w``.

All priorities may be shifted upward by an even amount to stay nonnegative;
an even shift changes no cycle parities and no value comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass

from .game import PLAYER0, PLAYER1, NodeRecord, ParityGame, Strategy
from .rules import ImprovementRule, switch_all_rule
from .solvers import IterationTrace, SolveResult, SolverInvariantError, run_si, verify_optimal
from .valuation import valuate


@dataclass(frozen=True)
class ReductionMap:
    """Correspondence between an original game and its sink-game form.

    Original node ids are preserved; ``breakers`` maps each inserted
    cycle-breaker node to the (source, target) edge it subdivides. ``pw``
    is the priority of ``w`` in the reduced game (after any shift).
    """

    original: ParityGame
    original_ids: frozenset[int]
    breakers: dict[int, tuple[int, int]]
    w: int
    sink: int
    pw: int


@dataclass(frozen=True)
class WinnerResult:
    """Winning starting sets of the original game plus winning strategies
    (partial maps, meaningful on the respective winning regions)."""

    w0: frozenset[int]
    w1: frozenset[int]
    strategy0: dict[int, int]
    strategy1: dict[int, int]


def _shift_nonnegative(
    nodes: list[NodeRecord],
) -> list[NodeRecord]:
    """Shift all priorities up by an even amount so the minimum is >= 0."""
    low = min(rec.priority for rec in nodes)
    if low >= 0:
        return nodes
    shift = -low if low % 2 == 0 else -low + 1
    return [
        NodeRecord(rec.id, rec.owner, rec.priority + shift, rec.label) for rec in nodes
    ]


def break_same_owner_cycles(game: ParityGame) -> tuple[ParityGame, dict[int, tuple[int, int]]]:
    """Subdivide every same-owner edge with an opposite-owner node whose
    priority lies strictly below every original priority.

    The result has no cycle within either player's node set and the winner
    of every original node is unchanged: the inserted nodes have a single
    outgoing edge and are never the top priority of a cycle.
    """
    same_owner = [
        (u, w)
        for u in game.node_ids
        for w in game.successors(u)
        if w in game and game.owner(u) == game.owner(w)
    ]
    if not same_owner:
        return game, {}
    low_priority = min(game.priority(v) for v in game.node_ids) - 1
    next_id = max(game.node_ids) + 1
    breakers: dict[int, tuple[int, int]] = {}
    nodes = list(game.nodes)
    edges: dict[int, list[int]] = {v: list(game.successors(v)) for v in game.node_ids}
    for u in game.node_ids:
        rewired = []
        for w in edges[u]:
            if w in game and game.owner(u) == game.owner(w):
                x = next_id
                next_id += 1
                breakers[x] = (u, w)
                nodes.append(NodeRecord(x, 1 - game.owner(u), low_priority, None))
                edges[x] = [w]
                rewired.append(x)
            else:
                rewired.append(w)
        edges[u] = rewired
    nodes = _shift_nonnegative(nodes)
    return ParityGame(nodes, {v: tuple(ws) for v, ws in edges.items()}), breakers


def _same_owner_cycle(game: ParityGame) -> list[int] | None:
    """A cycle whose nodes all share one owner, or None."""
    for player in (PLAYER0, PLAYER1):
        owned = set(game.nodes_of(player))
        color = {v: 0 for v in owned}  # 0 new, 1 on stack, 2 done
        for root in owned:
            if color[root] != 0:
                continue
            stack = [(root, iter(game.successors(root)))]
            color[root] = 1
            trail = [root]
            while stack:
                v, it = stack[-1]
                advanced = False
                for w in it:
                    if w not in owned:
                        continue
                    if color[w] == 1:
                        return trail[trail.index(w):]
                    if color[w] == 0:
                        color[w] = 1
                        stack.append((w, iter(game.successors(w))))
                        trail.append(w)
                        advanced = True
                        break
                if not advanced:
                    color[v] = 2
                    stack.pop()
                    trail.pop()
    return None


def to_sink_game(
    game: ParityGame,
    breakers: dict[int, tuple[int, int]] | None = None,
    original: ParityGame | None = None,
) -> tuple[ParityGame, ReductionMap]:
    """Attach the sink and the high even-priority escape node ``w``.

    Requires a game with no same-owner cycles (run
    :func:`break_same_owner_cycles` first); ``breakers`` and ``original``
    thread that step's correspondence through to the returned map.
    """
    cycle = _same_owner_cycle(game)
    if cycle is not None:
        raise ValueError(f"game has a same-owner cycle through nodes {cycle}")
    breakers = dict(breakers or {})
    base = original if original is not None else game
    top_id = max(game.node_ids) + 1
    w_id = top_id + 1
    low = min(game.priority(v) for v in game.node_ids)
    high = max(game.priority(v) for v in game.node_ids)
    pw = high + 1 if (high + 1) % 2 == 0 else high + 2
    nodes = list(game.nodes)
    nodes.append(NodeRecord(top_id, PLAYER0, low - 1, "top"))
    nodes.append(NodeRecord(w_id, PLAYER1, pw, "w"))
    edges: dict[int, tuple[int, ...]] = {}
    for v in game.node_ids:
        extra = top_id if game.owner(v) == PLAYER0 else w_id
        edges[v] = game.successors(v) + (extra,)
    edges[top_id] = (top_id,)
    edges[w_id] = (top_id,)
    shifted = _shift_nonnegative(nodes)
    delta = shifted[0].priority - nodes[0].priority
    reduced = ParityGame(shifted, edges, sink=top_id)
    rmap = ReductionMap(
        original=base,
        original_ids=frozenset(base.node_ids),
        breakers=breakers,
        w=w_id,
        sink=top_id,
        pw=pw + delta,
    )
    return reduced, rmap


def reduce_game(game: ParityGame) -> tuple[ParityGame, ReductionMap]:
    """Full pipeline: break same-owner cycles, then build the sink game."""
    broken, breakers = break_same_owner_cycles(game)
    return to_sink_game(broken, breakers, original=game)


def trivial_strategies(reduced: ParityGame, rmap: ReductionMap) -> tuple[Strategy, Strategy]:
    """The canonical admissible pair of a reduced game: player 0 exits to
    the sink everywhere, player 1 exits to ``w``."""
    sigma = {v: rmap.sink for v in reduced.nodes_of(PLAYER0)}
    sigma[rmap.sink] = rmap.sink
    tau = {v: rmap.w for v in reduced.nodes_of(PLAYER1)}
    tau[rmap.w] = rmap.sink
    return Strategy(PLAYER0, sigma), Strategy(PLAYER1, tau)


def extract_winners(
    reduced: ParityGame, rmap: ReductionMap, optimal: SolveResult
) -> WinnerResult:
    """Winning sets and strategies of the original game, read off a
    verified-optimal solve of the reduced game.

    An original node belongs to player 0's winning set exactly when the
    optimal play from it passes ``w`` once. Strategy choices that exit to
    the sink or ``w`` have no original counterpart and are omitted; on the
    winning regions the optimal choices never exit.
    """
    if optimal.sigma is None or optimal.tau is None:
        raise ValueError("winner extraction needs both final strategies")
    certificate = verify_optimal(reduced, optimal.sigma, optimal.tau)
    if not certificate.ok:
        raise SolverInvariantError(f"strategies are not optimal: {certificate.describe()}")
    xi = valuate(reduced, optimal.sigma)
    w0 = frozenset(v for v in rmap.original_ids if xi.values[v].count(rmap.pw) == 1)
    w1 = rmap.original_ids - w0

    def compose(choice: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for v, target in choice.items():
            if v not in rmap.original_ids:
                continue
            if target in rmap.breakers:
                target = rmap.breakers[target][1]
            if target in rmap.original_ids:
                out[v] = target
        return out

    return WinnerResult(w0, frozenset(w1), compose(optimal.sigma.choice), compose(optimal.tau.choice))


def solve_winners(game: ParityGame, rule: ImprovementRule | None = None) -> WinnerResult:
    """End-to-end winner computation for an arbitrary parity game: reduce,
    solve each player's side by plain strategy improvement, verify the pair,
    and extract."""
    rule = rule if rule is not None else switch_all_rule()
    reduced, rmap = reduce_game(game)
    sigma0, tau0 = trivial_strategies(reduced, rmap)
    result_sigma = run_si(reduced, sigma0, rule)
    result_tau = run_si(reduced, tau0, rule)
    combined = SolveResult(
        sigma=result_sigma.sigma,
        tau=result_tau.tau,
        xi_sigma=result_sigma.xi_sigma,
        xi_tau=result_tau.xi_tau,
        iterations=result_sigma.iterations + result_tau.iterations,
        trace=IterationTrace((), result_sigma.sigma, result_tau.tau),
    )
    return extract_winners(reduced, rmap, combined)
