"""Perpetual Motion: a deterministic simulator and statistics toolkit
for the classic solitaire game of the same name.

The game deals a shuffled pack four cards at a time onto four piles,
discards value-quads, and restacks; it either completes (everything
discarded) or falls into a provably detectable cycle. This package
plays the game exactly, reproducibly, and in bulk:

- `engine` — the rules state machine (deal, consolidate, discard,
  recombine) with per-card move counting and full event traces.
- `cycles` — end-of-round state ledger; detects the first recurrence,
  so reported cycle lengths are minimal.
- `simulate` — seeded shuffles and Monte Carlo experiments that are
  bit-identical for any worker count.
- `stats` — completion confidence intervals, histograms, play-time
  estimates, and the delimited file formats.
- `explore` — exhaustive/sampled pattern searches: single-round-cycle
  (fixed point) certificates and an orbit atlas by deck size.
- `cli` — the `perpetual-motion` command wrapping all of the above.
"""

from .cycles import CycleReport, SeenLedger
from .engine import (
    COMPLETED,
    CYCLED,
    DEFAULT_RECOMBINE_MODE,
    EVENT_CONSOLIDATE,
    EVENT_DEAL,
    EVENT_DISCARD,
    RANK_TOKENS,
    RECOMBINE_FLIP,
    RECOMBINE_MODES,
    RECOMBINE_NOFLIP,
    GameResult,
    GameState,
    RoundEnd,
    TurnEvent,
    deal_turn,
    format_card,
    format_hand,
    new_game,
    parse_card,
    parse_hand,
    play_game,
    play_round,
    recombine,
    validate_deck,
)
from .explore import (
    OrbitReport,
    canonical_pattern,
    count_patterns,
    enumerate_patterns,
    find_single_round_cycles,
    is_fixed_point,
    orbit_atlas,
    pattern_to_ranks,
    pattern_to_values,
    round_map,
    sample_pattern,
    sample_single_round_search,
)
from .simulate import (
    FULL_DECK,
    GENERATOR_NAME,
    ExperimentConfig,
    SplitMix64,
    game_seed,
    mix64,
    run_experiment,
    shuffled_deck,
)
from .stats import (
    SECONDS_PER_MOVE,
    SECONDS_PER_RECOMBINE,
    Histogram,
    Summary,
    build_histograms,
    completion_ci,
    estimate_play_time,
    read_results_csv,
    summarize,
    summary_to_dict,
    t_quantile,
    write_results_csv,
    write_summary_json,
)

__version__ = "0.1.0"

__all__ = [
    "COMPLETED",
    "CYCLED",
    "CycleReport",
    "DEFAULT_RECOMBINE_MODE",
    "EVENT_CONSOLIDATE",
    "EVENT_DEAL",
    "EVENT_DISCARD",
    "ExperimentConfig",
    "FULL_DECK",
    "GENERATOR_NAME",
    "GameResult",
    "GameState",
    "Histogram",
    "OrbitReport",
    "RANK_TOKENS",
    "RECOMBINE_FLIP",
    "RECOMBINE_MODES",
    "RECOMBINE_NOFLIP",
    "RoundEnd",
    "SECONDS_PER_MOVE",
    "SECONDS_PER_RECOMBINE",
    "SeenLedger",
    "SplitMix64",
    "Summary",
    "TurnEvent",
    "build_histograms",
    "canonical_pattern",
    "completion_ci",
    "count_patterns",
    "deal_turn",
    "enumerate_patterns",
    "estimate_play_time",
    "find_single_round_cycles",
    "format_card",
    "format_hand",
    "game_seed",
    "is_fixed_point",
    "mix64",
    "new_game",
    "orbit_atlas",
    "parse_card",
    "parse_hand",
    "pattern_to_ranks",
    "pattern_to_values",
    "play_game",
    "play_round",
    "read_results_csv",
    "recombine",
    "round_map",
    "run_experiment",
    "sample_pattern",
    "sample_single_round_search",
    "shuffled_deck",
    "summarize",
    "summary_to_dict",
    "t_quantile",
    "validate_deck",
    "write_results_csv",
    "write_summary_json",
    "__version__",
]
