"""Strategy valuations, improving-move sets, and weak candidate sets.

The valuation of a strategy assigns every node the play value it guarantees
against a best-responding opponent, together with one optimal response. It
is computed as the unique finite fixpoint of a local relaxation over the
strategy subgraph: each node's value is its own priority added to the
opponent-optimal successor value.

The fixpoint runs on integer-encoded play values (see
:class:`sinkgames.playvalues.ValueCodec`) so that relaxation is plain
integer arithmetic; results are decoded at the boundary. Any relaxation
schedule reaches the same fixpoint, which is what makes runs reproducible.
"""

from __future__ import annotations

import weakref
from collections import deque
from dataclasses import dataclass

from .game import PLAYER0, ParityGame, Strategy, check_strategy
from .playvalues import GREATER, LESS, PlayValue, ValueCodec, compare


class NotAdmissibleError(Exception):
    """The valued strategy admits an opponent-favorable cycle (or cuts the
    sink off entirely), so no finite valuation exists."""


@dataclass(frozen=True)
class Valuation:
    """Node values of one player's strategy plus the optimal response that
    witnesses them."""

    player: int
    values: dict[int, PlayValue]
    counter: Strategy


class GameIndex:
    """Dense per-game arrays used by the fixpoint engine and solver loops.

    Indexes are positions in the ascending node-id order, so index order and
    id order agree for tie-breaking purposes.
    """

    __slots__ = (
        "game",
        "ids",
        "index",
        "owner0",
        "adj",
        "adj_unique",
        "weight",
        "codec",
        "sink",
        "order",
        "nodes0",
        "nodes1",
        "finite_bound",
        "pos_init",
        "neg_init",
    )

    def __init__(self, game: ParityGame):
        if game.sink is None:
            raise ValueError("game has no designated sink node")
        self.game = game
        ids = game.node_ids
        n = len(ids)
        self.ids = ids
        self.index = {v: i for i, v in enumerate(ids)}
        self.owner0 = [game.owner(v) == PLAYER0 for v in ids]
        self.adj = [tuple(self.index[w] for w in game.successors(v)) for v in ids]
        self.adj_unique = [tuple(dict.fromkeys(succs)) for succs in self.adj]
        # intermediate relaxation values never accumulate more than one
        # priority per node update, over at most |V| sweeps
        self.codec = ValueCodec(game.priorities(), max_count=(n + 2) * (n + 2))
        self.weight = [self.codec.weight(game.priority(v)) for v in ids]
        self.sink = self.index[game.sink]
        self.nodes0 = tuple(i for i in range(n) if self.owner0[i])
        self.nodes1 = tuple(i for i in range(n) if not self.owner0[i])
        self.finite_bound = 2 * self.codec.base ** len(self.codec.priorities)
        self.pos_init = 4 * self.codec.base ** (len(self.codec.priorities) + 1)
        self.neg_init = -self.pos_init
        self.order = self._eval_order()

    def _eval_order(self) -> tuple[int, ...]:
        """Sink-BFS order over reversed edges: nodes near the sink relax
        first, which converges in few sweeps on sink-directed graphs."""
        n = len(self.ids)
        reverse: list[list[int]] = [[] for _ in range(n)]
        for v in range(n):
            for w in self.adj[v]:
                reverse[w].append(v)
        seen = [False] * n
        seen[self.sink] = True
        queue = deque([self.sink])
        order: list[int] = []
        while queue:
            w = queue.popleft()
            for v in reverse[w]:
                if not seen[v]:
                    seen[v] = True
                    order.append(v)
                    queue.append(v)
        order.extend(v for v in range(n) if not seen[v])
        return tuple(order)

    def subgraph_arrays(
        self, strat: list[int | None], player: int
    ) -> tuple[list[int], list[tuple[int, ...]]]:
        """Per-node (first, rest) successor split for the strategy subgraph:
        nodes of ``player`` keep only their chosen edge."""
        first: list[int] = [0] * len(self.ids)
        rest: list[tuple[int, ...]] = [()] * len(self.ids)
        for v in range(len(self.ids)):
            if self.owner0[v] == (player == PLAYER0):
                choice = strat[v]
                assert choice is not None
                first[v] = choice
            else:
                succs = self.adj[v]
                first[v] = succs[0]
                rest[v] = succs[1:]
        return first, rest

    def strategy_array(self, strategy: Strategy) -> list[int | None]:
        arr: list[int | None] = [None] * len(self.ids)
        for v, w in strategy.choice.items():
            arr[self.index[v]] = self.index[w]
        return arr

    def cold_values(self, minimize: bool) -> list[int]:
        init = self.pos_init if minimize else self.neg_init
        values = [init] * len(self.ids)
        values[self.sink] = 0
        return values


# identity-keyed: games are value-comparable but the index binds to one object
_INDEX_CACHE: dict[int, GameIndex] = {}


def game_index(game: ParityGame) -> GameIndex:
    key = id(game)
    gi = _INDEX_CACHE.get(key)
    if gi is None or gi.game is not game:
        gi = GameIndex(game)
        _INDEX_CACHE[key] = gi
        weakref.finalize(game, _INDEX_CACHE.pop, key, None)
    return gi


def sweep_to_fixpoint(
    gi: GameIndex,
    succ_first: list[int],
    succ_rest: list[tuple[int, ...]],
    values: list[int],
    minimize: bool,
    max_sweeps: int,
) -> bool:
    """Relax ``values`` in place until a full sweep changes nothing.

    Returns False when ``max_sweeps`` full sweeps did not stabilize, which
    for a cold start means the strategy is not admissible.
    """
    order = gi.order
    weight = gi.weight
    if minimize:
        for _ in range(max_sweeps):
            changed = False
            for v in order:
                m = values[succ_first[v]]
                for w in succ_rest[v]:
                    x = values[w]
                    if x < m:
                        m = x
                nv = weight[v] + m
                if nv != values[v]:
                    values[v] = nv
                    changed = True
            if not changed:
                return True
    else:
        for _ in range(max_sweeps):
            changed = False
            for v in order:
                m = values[succ_first[v]]
                for w in succ_rest[v]:
                    x = values[w]
                    if x > m:
                        m = x
                nv = weight[v] + m
                if nv != values[v]:
                    values[v] = nv
                    changed = True
            if not changed:
                return True
    return False


def solve_values(
    gi: GameIndex,
    succ_first: list[int],
    succ_rest: list[tuple[int, ...]],
    minimize: bool,
) -> list[int]:
    """Encoded valuation of a strategy subgraph; raises NotAdmissibleError.

    Starts from the appropriate sentinel everywhere: approaching the
    fixpoint from that side stabilizes within |V| sweeps exactly when the
    strategy is admissible, so the sweep budget doubles as the
    admissibility decision.
    """
    budget = max(len(gi.ids), 2)
    values = gi.cold_values(minimize)
    if not sweep_to_fixpoint(gi, succ_first, succ_rest, values, minimize, budget):
        raise NotAdmissibleError("valuation fixpoint did not stabilize")
    bound = gi.finite_bound
    for v, code in enumerate(values):
        if not -bound < code < bound:
            raise NotAdmissibleError(
                f"node {gi.ids[v]} cannot reach the sink under this strategy"
            )
    return values


def counter_choices(
    gi: GameIndex, values: list[int], minimize: bool, nodes: tuple[int, ...]
) -> dict[int, int]:
    """Opponent-optimal successor per node (index-keyed), smallest node id
    on ties."""
    out: dict[int, int] = {}
    for v in nodes:
        best = None
        best_x = 0
        for w in gi.adj_unique[v]:
            x = values[w]
            if (
                best is None
                or (x < best_x if minimize else x > best_x)
                or (x == best_x and w < best)
            ):
                best = w
                best_x = x
        assert best is not None
        out[v] = best
    return out


def valuation_from_codes(gi: GameIndex, values: list[int], player: int) -> Valuation:
    """Decode an encoded value array into a full Valuation with its
    tie-break-deterministic counterstrategy."""
    minimize = player == PLAYER0
    opponent_nodes = gi.nodes1 if minimize else gi.nodes0
    counter_idx = counter_choices(gi, values, minimize, opponent_nodes)
    codec = gi.codec
    decoded = {gi.ids[v]: codec.decode(code) for v, code in enumerate(values)}
    counter = Strategy(1 - player, {gi.ids[v]: gi.ids[w] for v, w in counter_idx.items()})
    return Valuation(player, decoded, counter)


def valuate(game: ParityGame, strategy: Strategy) -> Valuation:
    """Value every node of the strategy subgraph against a best-responding
    opponent; the returned counterstrategy attains the optimum everywhere.

    Raises NotAdmissibleError when the opponent can force a cycle of their
    own parity (or trap the pebble away from the sink).
    """
    check_strategy(game, strategy)
    gi = game_index(game)
    minimize = strategy.player == PLAYER0
    strat = gi.strategy_array(strategy)
    succ_first, succ_rest = gi.subgraph_arrays(strat, strategy.player)
    values = solve_values(gi, succ_first, succ_rest, minimize)
    return valuation_from_codes(gi, values, strategy.player)


def improving_moves(
    game: ParityGame, strategy: Strategy, xi: Valuation
) -> frozenset[tuple[int, int]]:
    """Edges whose target strictly improves on the current choice's target
    under the player's own valuation."""
    better = GREATER if strategy.player == PLAYER0 else LESS
    out = set()
    for v in game.nodes_of(strategy.player):
        current = xi.values[strategy.choice[v]]
        for w in game.successors(v):
            if compare(xi.values[w], current) == better:
                out.add((v, w))
    return frozenset(out)


def j_set(
    game: ParityGame, strategy: Strategy, xi_opponent: Valuation
) -> frozenset[tuple[int, int]]:
    """Edges whose target is weakly better for the player than the current
    choice under the *opponent's* valuation; always contains the current
    choices themselves."""
    player = strategy.player
    out = set()
    for v in game.nodes_of(player):
        current = xi_opponent.values[strategy.choice[v]]
        for w in game.successors(v):
            order = compare(xi_opponent.values[w], current)
            keep = order >= 0 if player == PLAYER0 else order <= 0
            if keep:
                out.add((v, w))
    return frozenset(out)
