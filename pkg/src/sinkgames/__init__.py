"""Sink parity games: strategy improvement solvers, worst-case instance
generators, a brute-force oracle, and file-format tooling."""

from .game import (
    PLAYER0,
    PLAYER1,
    NodeRecord,
    ParityGame,
    Strategy,
    StrategySubgraph,
    Violation,
    check_strategy,
    infer_sink,
    is_admissible,
    strategy_subgraph,
    validate_game,
)
from .playvalues import NEG_INF, POS_INF, PlayValue, ValueCodec, add_priority, compare
from .valuation import (
    NotAdmissibleError,
    Valuation,
    improving_moves,
    j_set,
    valuate,
)
from .rules import (
    ImprovementRule,
    make_rule,
    random_subset_rule,
    rule_random_subset,
    rule_single_lowest,
    rule_switch_all,
    single_lowest_rule,
    switch_all_rule,
)
from .solvers import (
    IterationRecord,
    IterationTrace,
    OptimalityCertificate,
    SolveResult,
    SolverInvariantError,
    replay_trace,
    run_gssi,
    run_si,
    run_ssi,
    verify_optimal,
)
from .families import (
    LabeledInstance,
    expected_iterations,
    gen_table1,
    gen_table2,
    generate,
    optimal_table1,
)
from .reduction import (
    ReductionMap,
    WinnerResult,
    break_same_owner_cycles,
    extract_winners,
    reduce_game,
    solve_winners,
    to_sink_game,
    trivial_strategies,
)
from .oracle import (
    BudgetExceededError,
    EnumerationBudget,
    brute_force_winners,
    enumerate_optimal_response,
    enumerate_optimal_strategy,
    is_admissible_bruteforce,
    play_values,
)
from .pgsolver import ParseError, parse_pgsolver, write_pgsolver
from .traces import (
    TraceFile,
    TraceHeader,
    build_trace_file,
    from_csv,
    from_json,
    parse_strategy_text,
    to_csv,
    to_json,
    write_strategy_text,
)

__version__ = "0.1.0"
