"""Command-line entry point.

Four subcommands: `simulate` plays a seeded batch of shuffled games
and writes the report files; `analyze` recomputes the summary from a
previous run's raw results at any significance level; `replay` prints
one game's trace for hand-checking; `explore` searches small decks for
single-round cycles and maps achievable cycle lengths.

Every run is a pure function of its flags (plus input files): repeat
the flags, get byte-identical outputs. Exit codes: 0 success, 1
runtime or I/O failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .engine import (
    CYCLED,
    DEFAULT_RECOMBINE_MODE,
    EVENT_CONSOLIDATE,
    EVENT_DEAL,
    RECOMBINE_MODES,
    RoundEnd,
    format_card,
    format_hand,
    parse_hand,
    play_game,
)
from .explore import (
    DEFAULT_SAMPLE_BUDGET,
    atlas_rows,
    count_patterns,
    is_fixed_point,
    orbit_atlas,
    pattern_to_ranks,
    write_atlas_csv,
    write_fixed_points,
)
from .simulate import (
    GENERATOR_NAME,
    ExperimentConfig,
    run_experiment,
    shuffled_deck,
)
from .stats import (
    build_histograms,
    echo_line,
    read_results_csv,
    summarize,
    summary_to_dict,
    write_histogram_csv,
    write_results_csv,
    write_summary_json,
)


class UsageError(ValueError):
    """Bad flag values; reported with exit code 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perpetual-motion",
        description="Simulator and statistics toolkit for the Perpetual "
                    "Motion solitaire game.")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="{simulate,analyze,replay,explore}")

    sim = sub.add_parser(
        "simulate",
        help="play a seeded batch of shuffled games and write report files",
        description="Plays --games shuffled games, deterministically from "
                    "--seed, and writes summary.json, results.csv, "
                    "rounds.csv, moves.csv, cycle_lengths.csv and matching "
                    "PNG figures into --out.")
    sim.add_argument("--games", type=int, default=10000,
                     help="number of games to play (default %(default)s)")
    sim.add_argument("--batches", type=int, default=10,
                     help="equal batches for the confidence interval; must "
                          "divide --games (default %(default)s)")
    sim.add_argument("--seed", type=int, default=42,
                     help="master seed (default %(default)s)")
    sim.add_argument("--recombine", choices=RECOMBINE_MODES,
                     default=DEFAULT_RECOMBINE_MODE,
                     help="pile recombination orientation (default %(default)s)")
    sim.add_argument("--moves-bin-width", type=int, default=250,
                     help="bin width of the moves histogram (default %(default)s)")
    sim.add_argument("--workers", type=int, default=1,
                     help="worker processes; results are identical for any "
                          "count (default %(default)s)")
    sim.add_argument("--no-figures", action="store_true",
                     help="skip PNG rendering, write only delimited files")
    sim.add_argument("--out", default=".",
                     help="output directory (default current directory)")
    sim.set_defaults(func=_cmd_simulate)

    ana = sub.add_parser(
        "analyze",
        help="recompute the summary from a results.csv without re-simulating",
        description="Reads the raw per-game records written by simulate and "
                    "rebuilds summary.json, optionally at a different "
                    "significance level.")
    ana.add_argument("--in", dest="infile", required=True,
                     help="results.csv produced by simulate")
    ana.add_argument("--alpha", type=float, default=0.05,
                     help="significance level for the completion interval "
                          "(default %(default)s)")
    ana.add_argument("--out", default=".",
                     help="directory for summary.json (default current directory)")
    ana.set_defaults(func=_cmd_analyze)

    rep = sub.add_parser(
        "replay",
        help="print one game's trace for hand-checking",
        description="Replays game --index of master seed --seed and prints "
                    "the end-of-round sequences plus the final result; "
                    "--verbose adds every deal, consolidation and discard.")
    rep.add_argument("--seed", type=int, default=42,
                     help="master seed (default %(default)s)")
    rep.add_argument("--index", type=int, default=0,
                     help="game index within the seed's stream (default %(default)s)")
    rep.add_argument("--recombine", choices=RECOMBINE_MODES,
                     default=DEFAULT_RECOMBINE_MODE,
                     help="pile recombination orientation (default %(default)s)")
    rep.add_argument("--verbose", action="store_true",
                     help="include per-turn deal/consolidate/discard events")
    rep.add_argument("--deck", help=argparse.SUPPRESS)
    rep.set_defaults(func=_cmd_replay)

    exp = sub.add_parser(
        "explore",
        help="search small decks for single-round cycles and map cycle lengths",
        description="For each deck size 4, 8, ... up to --max-length, "
                    "classifies every card pattern (exhaustively while the "
                    "pattern count fits --budget, else by uniform sampling) "
                    "and writes atlas.csv plus fixed_points.txt into --out.")
    exp.add_argument("--max-length", type=int, default=8,
                     help="largest deck size to search; multiple of 4 "
                          "(default %(default)s)")
    exp.add_argument("--mode", choices=RECOMBINE_MODES,
                     default=DEFAULT_RECOMBINE_MODE,
                     help="pile recombination orientation (default %(default)s)")
    exp.add_argument("--budget", type=int, default=DEFAULT_SAMPLE_BUDGET,
                     help="max patterns per length before switching from "
                          "exhaustive to sampled (default %(default)s)")
    exp.add_argument("--seed", type=int, default=0,
                     help="seed for sampled lengths; exhaustive lengths "
                          "ignore it (default %(default)s)")
    exp.add_argument("--out", default=".",
                     help="output directory (default current directory)")
    exp.set_defaults(func=_cmd_explore)

    return parser


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise UsageError(message)


def _cmd_simulate(args) -> int:
    try:
        config = ExperimentConfig(games=args.games, batches=args.batches,
                                  master_seed=args.seed,
                                  recombine_mode=args.recombine)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _require(args.seed >= 0, "--seed must be >= 0")
    _require(args.moves_bin_width >= 1, "--moves-bin-width must be >= 1")
    _require(args.workers >= 1, "--workers must be >= 1")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    def progress(done: int, total: int) -> None:
        print(f"played {done}/{total} games", file=sys.stderr)

    results = run_experiment(config, workers=args.workers, progress=progress)
    summary = summarize(results, batches=config.batches,
                        recombine_mode=config.recombine_mode,
                        master_seed=config.master_seed)
    rounds, moves, cycles = build_histograms(
        results, moves_bin_width=args.moves_bin_width)

    echo = echo_line(v=1, generator=GENERATOR_NAME, seed=config.master_seed,
                     mode=config.recombine_mode, games=config.games,
                     batches=config.batches)
    moves_echo = echo_line(v=1, generator=GENERATOR_NAME,
                           seed=config.master_seed, mode=config.recombine_mode,
                           games=config.games, batches=config.batches,
                           bin_width=args.moves_bin_width)
    write_results_csv(results, out / "results.csv", echo)
    write_summary_json(summary, out / "summary.json")
    write_histogram_csv(rounds, out / "rounds.csv", echo)
    write_histogram_csv(moves, out / "moves.csv", moves_echo)
    write_histogram_csv(cycles, out / "cycle_lengths.csv", echo)
    written = ["results.csv", "summary.json", "rounds.csv", "moves.csv",
               "cycle_lengths.csv"]
    if not args.no_figures:
        from .plots import render_run_figures

        figures = render_run_figures(rounds, moves, cycles, out)
        written.extend(p.name for p in figures)

    d = summary_to_dict(summary)
    ci = "n/a" if d["ci_halfwidth_pct"] is None else f"{d['ci_halfwidth_pct']}%"
    print(f"completed {d['completed']}/{d['games']} games "
          f"({d['completion_pct']}% +/- {ci} at alpha={d['alpha']})")
    print(f"mean rounds {d['mean_rounds']}, mean moves {d['mean_moves']}, "
          f"mean first discard round {d['mean_first_discard_round']}")
    print(f"estimated human play time {d['play_time_s']} s per game")
    print(f"wrote {', '.join(written)} in {out}")
    return 0


def _cmd_analyze(args) -> int:
    _require(0.0 < args.alpha < 1.0, "--alpha must be strictly between 0 and 1")
    results, meta = read_results_csv(args.infile)
    for key in ("batches", "mode", "seed"):
        if key not in meta:
            raise ValueError(f"{args.infile}: config echo is missing {key!r}")
    try:
        batches = int(meta["batches"])
        seed = int(meta["seed"])
    except ValueError:
        raise ValueError(f"{args.infile}: non-numeric batches/seed in config echo") from None
    if meta["mode"] not in RECOMBINE_MODES:
        raise ValueError(f"{args.infile}: unknown mode {meta['mode']!r} in config echo")
    summary = summarize(results, batches=batches, recombine_mode=meta["mode"],
                        master_seed=seed, alpha=args.alpha)
    if "generator" in meta:
        summary = dataclasses.replace(summary, generator=meta["generator"])
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_summary_json(summary, out / "summary.json")
    d = summary_to_dict(summary)
    ci = "n/a" if d["ci_halfwidth_pct"] is None else f"{d['ci_halfwidth_pct']}%"
    print(f"completed {d['completed']}/{d['games']} games "
          f"({d['completion_pct']}% +/- {ci} at alpha={d['alpha']})")
    print(f"wrote summary.json in {out}")
    return 0


def _cmd_replay(args) -> int:
    if args.deck is not None:
        try:
            deck = parse_hand(args.deck)
        except ValueError as exc:
            raise UsageError(f"--deck: {exc}") from None
        print(echo_line(v=1, mode=args.recombine, deck="fixed"))
    else:
        _require(args.seed >= 0, "--seed must be >= 0")
        _require(args.index >= 0, "--index must be >= 0")
        deck = shuffled_deck(args.seed, args.index)
        print(echo_line(v=1, generator=GENERATOR_NAME, seed=args.seed,
                        index=args.index, mode=args.recombine))
    print(f"pack: {format_hand(deck)}")

    trace: list = []
    result = play_game(deck, args.recombine, trace=trace, game_index=args.index)
    for event in trace:
        if isinstance(event, RoundEnd):
            hand = format_hand(event.hand) if event.hand else "(empty)"
            print(f"round {event.round_no} end: {hand}")
        elif args.verbose:
            if event.kind == EVENT_DEAL:
                print(f"  deal {format_hand(event.cards)}")
            elif event.kind == EVENT_CONSOLIDATE:
                print(f"    move {format_card(event.cards[0])} "
                      f"from pile {event.src} onto pile {event.dst}")
            else:
                print(f"    discard {format_hand(event.cards)}")
    first = ("none" if result.first_discard_round is None
             else result.first_discard_round)
    tail = "" if result.completed else f" cycle_length={result.cycle_length}"
    print(f"result: {result.outcome} rounds={result.rounds} "
          f"moves={result.moves} first_discard_round={first}{tail}")
    return 0


def _cmd_explore(args) -> int:
    _require(args.max_length >= 4 and args.max_length % 4 == 0,
             "--max-length must be a positive multiple of 4")
    _require(args.max_length <= 52, "--max-length must be at most 52")
    _require(args.budget >= 1, "--budget must be >= 1")
    _require(args.seed >= 0, "--seed must be >= 0")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rows = []
    fixed_points = []
    exhaustive: list[int] = []
    sampled: list[int] = []
    for length in range(4, args.max_length + 1, 4):
        total = count_patterns(length)
        if total <= args.budget:
            exhaustive.append(length)
            scope = f"exhaustive over {total} patterns"
        else:
            sampled.append(length)
            scope = f"sampled {args.budget} of {total} patterns"
        print(f"length {length}: {scope}", file=sys.stderr)
        reports = orbit_atlas(length, args.mode, args.budget, seed=args.seed)
        rows.extend(atlas_rows(length, args.mode, reports))
        for report in reports:
            # pre-period 0 with cycle length 1 is exactly a fixed point
            # of the round map; re-verify before reporting.
            if (report.outcome == CYCLED and report.cycle_length == 1
                    and report.pre_period == 0
                    and is_fixed_point(report.pattern, args.mode)):
                fixed_points.append(report.pattern)

    echo = echo_line(v=1, mode=args.mode, max_length=args.max_length,
                     budget=args.budget, seed=args.seed,
                     exhaustive_lengths=",".join(map(str, exhaustive)) or "none",
                     sampled_lengths=",".join(map(str, sampled)) or "none")
    write_atlas_csv(rows, out / "atlas.csv", echo)
    write_fixed_points(fixed_points, out / "fixed_points.txt", echo)

    if fixed_points:
        print(f"found {len(fixed_points)} single-round cycle(s):")
        for pattern in fixed_points:
            print(f"  {pattern_to_ranks(pattern)}")
    elif exhaustive:
        bounds = ", ".join(map(str, exhaustive))
        print(f"no single-round cycles exist at deck sizes {bounds} "
              f"(exhaustive, mode={args.mode})")
        if sampled:
            print(f"sampled sizes {', '.join(map(str, sampled))} "
                  f"found none either (not a proof)")
    else:
        print("no single-round cycles found in the sampled patterns "
              "(not a proof)")
    print(f"wrote atlas.csv, fixed_points.txt in {out}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, int):
            return exc.code
        return 0 if exc.code is None else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
