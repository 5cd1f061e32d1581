"""Aggregation of game results into report quantities and files.

Counts and sums are integer-exact, so summaries never depend on
accumulation order. Percentages are reported to 2 decimal places and
means to 1, which keeps repeated runs byte-identical and diffable.
The delimited files are the data contract; figures are rendered from
the same histograms by `plots`.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .engine import GameResult
from .simulate import GENERATOR_NAME

SECONDS_PER_MOVE = 1.0
SECONDS_PER_RECOMBINE = 5.0

# Two-sided critical values of Student's t, the standard table. Keyed
# by alpha, then degrees of freedom 1..30; anything else falls back to
# scipy at runtime.
_T_TABLE = {
    0.05: {
        1: 12.706, 2: 4.303, 3: 3.182, 4: 2.776, 5: 2.571,
        6: 2.447, 7: 2.365, 8: 2.306, 9: 2.262, 10: 2.228,
        11: 2.201, 12: 2.179, 13: 2.160, 14: 2.145, 15: 2.131,
        16: 2.120, 17: 2.110, 18: 2.101, 19: 2.093, 20: 2.086,
        21: 2.080, 22: 2.074, 23: 2.069, 24: 2.064, 25: 2.060,
        26: 2.056, 27: 2.052, 28: 2.048, 29: 2.045, 30: 2.042,
    },
    0.01: {
        1: 63.657, 2: 9.925, 3: 5.841, 4: 4.604, 5: 4.032,
        6: 3.707, 7: 3.499, 8: 3.355, 9: 3.250, 10: 3.169,
        11: 3.106, 12: 3.055, 13: 3.012, 14: 2.977, 15: 2.947,
        16: 2.921, 17: 2.898, 18: 2.878, 19: 2.861, 20: 2.845,
        21: 2.831, 22: 2.819, 23: 2.807, 24: 2.797, 25: 2.787,
        26: 2.779, 27: 2.771, 28: 2.763, 29: 2.756, 30: 2.750,
    },
}


def t_quantile(alpha: float, df: int) -> float:
    """Two-sided t critical value for the given alpha and df."""
    if df < 1:
        raise ValueError("df must be >= 1")
    table = _T_TABLE.get(alpha)
    if table is not None and df in table:
        return table[df]
    from scipy.stats import t as student_t

    return float(student_t.ppf(1.0 - alpha / 2.0, df))


def completion_ci(batch_completion_counts, batch_size: int,
                  alpha: float = 0.05) -> tuple[float, float]:
    """Mean completion percentage and its t-interval halfwidth.

    The interval treats the per-batch completion counts as normally
    distributed samples: halfwidth = t * s / sqrt(batches), with s the
    sample standard deviation of the counts, converted to percent of
    the batch size. Needs at least two batches to estimate dispersion.
    """
    counts = list(batch_completion_counts)
    n = len(counts)
    if n < 2:
        raise ValueError("need at least 2 batches for a confidence interval")
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    for c in counts:
        if not 0 <= c <= batch_size:
            raise ValueError(f"batch count {c} outside [0, {batch_size}]")
    total = sum(counts)
    mean_pct = 100.0 * total / (n * batch_size)
    mean_count = total / n
    variance = sum((c - mean_count) ** 2 for c in counts) / (n - 1)
    halfwidth_counts = t_quantile(alpha, n - 1) * math.sqrt(variance) / math.sqrt(n)
    return mean_pct, 100.0 * halfwidth_counts / batch_size


@dataclass(frozen=True)
class Histogram:
    """Frequency counts, `bins` as (bin, count) pairs ascending.

    Bins are lower edges: value v lands in (v // bin_width) * bin_width.
    Only non-empty bins are kept.
    """

    name: str
    bin_width: int
    bins: tuple[tuple[int, int], ...]

    def total(self) -> int:
        return sum(count for _, count in self.bins)


def _histogram(name: str, values, bin_width: int) -> Histogram:
    counter = Counter((v // bin_width) * bin_width for v in values)
    return Histogram(name, bin_width, tuple(sorted(counter.items())))


def build_histograms(results, moves_bin_width: int = 250
                     ) -> tuple[Histogram, Histogram, Histogram]:
    """Histograms of rounds (all games), moves (all games, binned), and
    cycle length (cycled games only; empty if every game completed)."""
    if not results:
        raise ValueError("no results to histogram")
    if moves_bin_width < 1:
        raise ValueError("moves_bin_width must be >= 1")
    rounds = _histogram("rounds", (r.rounds for r in results), 1)
    moves = _histogram("moves", (r.moves for r in results), moves_bin_width)
    cycles = _histogram("cycle_length",
                        (r.cycle_length for r in results if not r.completed), 1)
    return rounds, moves, cycles


@dataclass(frozen=True)
class Summary:
    games: int
    batches: int
    completed: int
    cycled: int
    completion_pct: float
    ci_halfwidth_pct: float | None
    alpha: float
    mean_rounds: float
    mean_moves: float
    mean_first_discard_round: float | None
    first_discard_missing: int
    recombine_mode: str
    master_seed: int
    generator: str = GENERATOR_NAME


def summarize(results, *, batches: int, recombine_mode: str, master_seed: int,
              alpha: float = 0.05) -> Summary:
    """Aggregate one run. `results` must cover game indices 0..n-1 with
    n divisible by `batches`; batch b owns the b-th contiguous index range."""
    games = len(results)
    if games == 0:
        raise ValueError("no results to summarize")
    if batches < 1 or games % batches:
        raise ValueError(f"games ({games}) must divide evenly into batches ({batches})")
    batch_size = games // batches
    batch_counts = [0] * batches
    completed = 0
    rounds_sum = 0
    moves_sum = 0
    first_sum = 0
    first_n = 0
    for r in results:
        rounds_sum += r.rounds
        moves_sum += r.moves
        if r.completed:
            completed += 1
            batch_counts[r.game_index // batch_size] += 1
        if r.first_discard_round is not None:
            first_sum += r.first_discard_round
            first_n += 1
    if batches >= 2:
        completion_pct, halfwidth = completion_ci(batch_counts, batch_size, alpha)
    else:
        completion_pct, halfwidth = 100.0 * completed / games, None
    return Summary(
        games=games,
        batches=batches,
        completed=completed,
        cycled=games - completed,
        completion_pct=completion_pct,
        ci_halfwidth_pct=halfwidth,
        alpha=alpha,
        mean_rounds=rounds_sum / games,
        mean_moves=moves_sum / games,
        mean_first_discard_round=first_sum / first_n if first_n else None,
        first_discard_missing=games - first_n,
        recombine_mode=recombine_mode,
        master_seed=master_seed,
    )


def estimate_play_time(summary: Summary) -> float:
    """Seconds a patient human needs for a typical game: one second per
    card move plus five seconds to restack the piles each round."""
    return (summary.mean_moves * SECONDS_PER_MOVE
            + summary.mean_rounds * SECONDS_PER_RECOMBINE)


def echo_line(**fields) -> str:
    """Config echo comment embedded at the top of every output file."""
    parts = " ".join(f"{k}={v}" for k, v in fields.items())
    return f"# perpetual-motion {parts}"


def _opt(value) -> str:
    return "" if value is None else str(value)


def summary_to_dict(summary: Summary) -> dict:
    """JSON-ready mapping with stable key order and fixed precision."""
    ci = summary.ci_halfwidth_pct
    first = summary.mean_first_discard_round
    return {
        "games": summary.games,
        "batches": summary.batches,
        "completed": summary.completed,
        "cycled": summary.cycled,
        "completion_pct": round(summary.completion_pct, 2),
        "ci_halfwidth_pct": None if ci is None else round(ci, 2),
        "alpha": summary.alpha,
        "mean_rounds": round(summary.mean_rounds, 1),
        "mean_moves": round(summary.mean_moves, 1),
        "mean_first_discard_round": None if first is None else round(first, 1),
        "first_discard_missing": summary.first_discard_missing,
        "play_time_s": round(estimate_play_time(summary), 1),
        "recombine_mode": summary.recombine_mode,
        "master_seed": summary.master_seed,
        "generator": summary.generator,
    }


def write_summary_json(summary: Summary, path) -> None:
    Path(path).write_text(json.dumps(summary_to_dict(summary), indent=2) + "\n")


def write_histogram_csv(hist: Histogram, path, echo: str) -> None:
    lines = [echo, "bin,count"]
    lines.extend(f"{b},{c}" for b, c in hist.bins)
    Path(path).write_text("\n".join(lines) + "\n")


def write_results_csv(results, path, echo: str) -> None:
    """Raw per-game records, one line each, so analysis never has to
    re-simulate. The echo comment carries the config needed to rebuild
    the summary (seed, mode, batches, generator)."""
    lines = [echo, "game_index,outcome,rounds,moves,first_discard_round,cycle_length"]
    lines.extend(
        f"{r.game_index},{r.outcome},{r.rounds},{r.moves},"
        f"{_opt(r.first_discard_round)},{_opt(r.cycle_length)}"
        for r in results)
    Path(path).write_text("\n".join(lines) + "\n")


def read_results_csv(path) -> tuple[list[GameResult], dict[str, str]]:
    """Parse a raw results file back into GameResults plus its config
    echo fields. Raises ValueError naming the offending line."""
    meta: dict[str, str] = {}
    results: list[GameResult] = []
    header_seen = False
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                for token in line.lstrip("# ").split():
                    if "=" in token:
                        key, _, value = token.partition("=")
                        meta[key] = value
                continue
            if not header_seen:
                if line != "game_index,outcome,rounds,moves,first_discard_round,cycle_length":
                    raise ValueError(f"{path}: line {lineno}: unexpected header {line!r}")
                header_seen = True
                continue
            fields = line.split(",")
            if len(fields) != 6:
                raise ValueError(f"{path}: line {lineno}: expected 6 fields, got {len(fields)}")
            try:
                results.append(GameResult(
                    outcome=fields[1],
                    rounds=int(fields[2]),
                    moves=int(fields[3]),
                    first_discard_round=int(fields[4]) if fields[4] else None,
                    cycle_length=int(fields[5]) if fields[5] else None,
                    game_index=int(fields[0]),
                ))
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from None
    if not header_seen:
        raise ValueError(f"{path}: missing results header line")
    for pos, r in enumerate(results):
        if r.game_index != pos:
            raise ValueError(
                f"{path}: game_index {r.game_index} out of order (expected {pos})")
    return results, meta
