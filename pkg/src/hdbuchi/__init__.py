"""Games and determinisation for history-deterministic Büchi automata."""

from .automaton import (
    Lasso,
    ParityAutomaton,
    delay,
    delay_k,
    is_complete,
    is_deterministic,
    lasso_accepts,
    parse_automaton,
    reachability_lift,
    reachable_pairs,
    serialize_automaton,
    trim,
    universalize,
)
from .arena import (
    ADAM,
    EVE,
    GameArena,
    Player,
    build_g1,
    build_joker,
    build_k_token,
    build_lookahead,
    build_simulation,
    build_sprint,
    build_stepahead,
)
from .solver import Solution, rank_monotonicity_check, solve_01, solve_02
from .analysis import (
    GoodnessReport,
    TransitionStrategy,
    check_sd,
    eve_wins_g1,
    eve_wins_joker,
    eve_wins_k_token,
    goodness,
    is_hd_buchi,
    is_sd,
    make_good,
    sprint_deterministic_witness,
    sprint_simulates,
    state_equiv,
    verify_adam_letter_strategy,
    verify_fixed_joker_strategy,
)
from .determinize import (
    OptRanks,
    PipelineTrace,
    Verdict,
    build_d,
    determinize_hd,
    normalize,
    opt_ranks,
    promote_step,
    prune_step,
    verify_determinization,
)
from .oracles import GenSpec, bounded_lasso_equiv, brute_force_02_winner, gen, hd_exact_given_dba

__version__ = "0.1.0"

__all__ = [
    "ADAM",
    "EVE",
    "GameArena",
    "GenSpec",
    "GoodnessReport",
    "Lasso",
    "OptRanks",
    "ParityAutomaton",
    "PipelineTrace",
    "Player",
    "Solution",
    "TransitionStrategy",
    "Verdict",
    "bounded_lasso_equiv",
    "brute_force_02_winner",
    "build_d",
    "build_g1",
    "build_joker",
    "build_k_token",
    "build_lookahead",
    "build_simulation",
    "build_sprint",
    "build_stepahead",
    "check_sd",
    "delay",
    "delay_k",
    "determinize_hd",
    "eve_wins_g1",
    "eve_wins_joker",
    "eve_wins_k_token",
    "gen",
    "goodness",
    "hd_exact_given_dba",
    "is_complete",
    "is_deterministic",
    "is_hd_buchi",
    "is_sd",
    "lasso_accepts",
    "make_good",
    "normalize",
    "opt_ranks",
    "parse_automaton",
    "promote_step",
    "prune_step",
    "rank_monotonicity_check",
    "reachability_lift",
    "reachable_pairs",
    "serialize_automaton",
    "solve_01",
    "solve_02",
    "sprint_deterministic_witness",
    "sprint_simulates",
    "state_equiv",
    "trim",
    "universalize",
    "verify_adam_letter_strategy",
    "verify_determinization",
    "verify_fixed_joker_strategy",
]
