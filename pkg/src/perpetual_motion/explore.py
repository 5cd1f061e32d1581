"""Systematic search of small-deck round dynamics.

Suits never matter, and the rules compare card values only for
equality, so relabeling values by any permutation commutes with the
round map. Every deck is therefore equivalent to a canonical *pattern*:
its value sequence rewritten in restricted growth form (each new value
becomes the next unused label). Searching patterns instead of raw
sequences covers all decks of a given size once each.

Two searches are offered: `find_single_round_cycles` looks for fixed
points of the round map (a sequence that reproduces itself after one
round with nothing discarded), and `orbit_atlas` classifies every
pattern of a size by where its orbit ends up (completion or a cycle of
some length). Both are exhaustive when the pattern count fits the
budget; beyond that, exact-uniform sampling keeps results unbiased.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .cycles import SeenLedger
from .engine import (
    COMPLETED,
    CYCLED,
    DEFAULT_RECOMBINE_MODE,
    GameState,
    RECOMBINE_MODES,
    RECOMBINE_NOFLIP,
    format_hand,
    play_game,
    play_round,
    validate_deck,
)
from .simulate import SplitMix64, mix64

MAX_LABELS = 13
MAX_MULTIPLICITY = 4
DEFAULT_SAMPLE_BUDGET = 4_000_000

Pattern = tuple[int, ...]


def _validate_length(length: int) -> None:
    if length < 4 or length % 4 or length > MAX_LABELS * MAX_MULTIPLICITY:
        raise ValueError(
            f"pattern length must be a positive multiple of 4, at most "
            f"{MAX_LABELS * MAX_MULTIPLICITY}; got {length}")


def _check_mode(mode: str) -> None:
    if mode not in RECOMBINE_MODES:
        raise ValueError(f"unknown recombine mode: {mode!r}")


def pattern_to_values(pattern) -> tuple[int, ...]:
    """Label i becomes card value i+1 (0 -> ace, 1 -> two, ...)."""
    return tuple(label + 1 for label in pattern)


def pattern_to_ranks(pattern) -> str:
    """Rank-token rendering, e.g. (0, 1, 0, 1) -> 'A 2 A 2'."""
    return format_hand(pattern_to_values(pattern))


def canonical_pattern(seq) -> Pattern:
    """Rewrite any value sequence in restricted growth form."""
    labels: dict[int, int] = {}
    out = []
    for v in seq:
        if v not in labels:
            labels[v] = len(labels)
        out.append(labels[v])
    return tuple(out)


def round_map(seq, mode: str = DEFAULT_RECOMBINE_MODE) -> tuple[int, ...]:
    """One round applied to a value sequence, as a pure function."""
    hand = list(seq)
    validate_deck(hand)
    _check_mode(mode)
    state = GameState(hand=hand)
    return tuple(play_round(state, mode))


def enumerate_patterns(length: int):
    """Yield every pattern of the given length once, lexicographically.

    A pattern is a restricted growth string: it starts at 0 and each
    element is at most one more than the running maximum, with at most
    MAX_MULTIPLICITY copies of a label and at most MAX_LABELS labels.
    """
    _validate_length(length)
    pattern = [0] * length
    counts = [0] * MAX_LABELS

    def extend(i: int, used: int):
        if i == length:
            yield tuple(pattern)
            return
        for label in range(min(used + 1, MAX_LABELS)):
            if counts[label] < MAX_MULTIPLICITY:
                pattern[i] = label
                counts[label] += 1
                yield from extend(i + 1, used + (1 if label == used else 0))
                counts[label] -= 1

    return extend(0, 0)


# Completions of a partial pattern depend only on how many positions
# remain and how many in-use labels still have capacity 1, 2, or 3
# (plus how many labels were never used). Labels within a capacity
# class are interchangeable for counting.
@lru_cache(maxsize=None)
def _completions(left: int, m1: int, m2: int, m3: int, unused: int) -> int:
    if left == 0:
        return 1
    total = 0
    if m1:
        total += m1 * _completions(left - 1, m1 - 1, m2, m3, unused)
    if m2:
        total += m2 * _completions(left - 1, m1 + 1, m2 - 1, m3, unused)
    if m3:
        total += m3 * _completions(left - 1, m1, m2 + 1, m3 - 1, unused)
    if unused:
        total += _completions(left - 1, m1, m2, m3 + 1, unused - 1)
    return total


def count_patterns(length: int) -> int:
    """Number of patterns of the given length, without enumerating."""
    _validate_length(length)
    return _completions(length, 0, 0, 0, MAX_LABELS)


def sample_pattern(length: int, rng: SplitMix64) -> Pattern:
    """Draw one pattern exactly uniformly at random.

    Each position picks its label with probability proportional to the
    number of completed patterns that choice leads to, so every pattern
    of the length has identical probability 1/count_patterns(length).
    """
    _validate_length(length)
    caps: list[int] = []  # remaining capacity per open label
    m = [0, 0, 0, 0]  # m[c] = number of open labels with capacity c
    unused = MAX_LABELS
    out = []
    for left in range(length, 0, -1):
        w1 = m[1] * _completions(left - 1, m[1] - 1, m[2], m[3], unused) if m[1] else 0
        w2 = m[2] * _completions(left - 1, m[1] + 1, m[2] - 1, m[3], unused) if m[2] else 0
        w3 = m[3] * _completions(left - 1, m[1], m[2] + 1, m[3] - 1, unused) if m[3] else 0
        wn = _completions(left - 1, m[1], m[2], m[3] + 1, unused - 1) if unused else 0
        pick = rng.below(w1 + w2 + w3 + wn)
        if pick < wn:
            label = len(caps)
            caps.append(MAX_MULTIPLICITY - 1)
            m[3] += 1
            unused -= 1
        else:
            pick -= wn
            if pick < w1:
                cap, k = 1, pick // (w1 // m[1])
            elif pick - w1 < w2:
                cap, k = 2, (pick - w1) // (w2 // m[2])
            else:
                cap, k = 3, (pick - w1 - w2) // (w3 // m[3])
            label = -1
            for i, c in enumerate(caps):
                if c == cap:
                    if k == 0:
                        label = i
                        break
                    k -= 1
            caps[label] -= 1
            m[cap] -= 1
            if cap > 1:
                m[cap - 1] += 1
        out.append(label)
    return tuple(out)


def is_fixed_point(pattern, mode: str = DEFAULT_RECOMBINE_MODE) -> bool:
    """True when one round reproduces the sequence with no discard."""
    values = pattern_to_values(pattern)
    state = GameState(hand=list(values))
    end = tuple(play_round(state, mode))
    return state.discarded == 0 and end == values


def find_single_round_cycles(max_length: int,
                             mode: str = DEFAULT_RECOMBINE_MODE) -> list[Pattern]:
    """Every pattern of length 4, 8, ..., max_length that is a fixed
    point of the round map. Exhaustive: an empty result is a proof of
    nonexistence at those sizes (up to relabeling, hence for all decks)."""
    _validate_length(max_length)
    _check_mode(mode)
    return [pattern
            for length in range(4, max_length + 1, 4)
            for pattern in enumerate_patterns(length)
            if is_fixed_point(pattern, mode)]


def _stream_seed(seed: int, length: int, mode: str) -> int:
    tag = 2 * length + (1 if mode == RECOMBINE_NOFLIP else 0)
    return mix64(mix64(seed) ^ mix64(tag))


def sample_single_round_search(length: int, mode: str = DEFAULT_RECOMBINE_MODE,
                               samples: int = 100_000, seed: int = 0) -> list[Pattern]:
    """Randomized fixed-point hunt for lengths too large to enumerate.

    Draws uniform patterns and keeps the ones the self-check verifies.
    Finding nothing proves nothing; anything returned is a certificate
    (re-check with is_fixed_point). Deterministic in (length, mode,
    samples, seed)."""
    _validate_length(length)
    _check_mode(mode)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = SplitMix64(_stream_seed(seed, length, mode))
    found = set()
    for _ in range(samples):
        pattern = sample_pattern(length, rng)
        if is_fixed_point(pattern, mode):
            found.add(pattern)
    # Independent self-check before reporting: a candidate only counts
    # if the pure round map reproduces it too.
    return [p for p in sorted(found)
            if round_map(pattern_to_values(p), mode) == pattern_to_values(p)]


@dataclass(frozen=True)
class OrbitReport:
    """Where one pattern's orbit ends up under repeated rounds."""

    pattern: Pattern
    outcome: str  # COMPLETED or CYCLED
    pre_period: int | None  # rounds before the recurring state first appears
    cycle_length: int | None
    rounds_to_resolution: int

    def __post_init__(self):
        if self.outcome not in (COMPLETED, CYCLED):
            raise ValueError(f"unknown outcome: {self.outcome!r}")
        if self.outcome == CYCLED and (self.cycle_length or 0) < 1:
            raise ValueError("cycled orbits need cycle_length >= 1")


def orbit_atlas(length: int, mode: str = DEFAULT_RECOMBINE_MODE,
                sample_budget: int = DEFAULT_SAMPLE_BUDGET,
                seed: int = 0) -> list[OrbitReport]:
    """Classify patterns of one length: exhaustive when the pattern
    count fits the budget, otherwise `sample_budget` uniform draws."""
    _validate_length(length)
    _check_mode(mode)
    if sample_budget < 1:
        raise ValueError("sample_budget must be >= 1")
    if count_patterns(length) <= sample_budget:
        patterns = enumerate_patterns(length)
    else:
        rng = SplitMix64(_stream_seed(seed, length, mode))
        patterns = (sample_pattern(length, rng) for _ in range(sample_budget))
    reports = []
    for pattern in patterns:
        result = play_game(list(pattern_to_values(pattern)), mode,
                           ledger=SeenLedger())
        if result.completed:
            reports.append(OrbitReport(pattern, COMPLETED, None, None,
                                       result.rounds))
        else:
            reports.append(OrbitReport(
                pattern, CYCLED, result.rounds - result.cycle_length,
                result.cycle_length, result.rounds))
    return reports


def atlas_rows(length: int, mode: str, reports) -> list[tuple[int, str, int, int]]:
    """Aggregate OrbitReports into `length,mode,cycle_length,count`
    rows; completed orbits are filed under cycle_length 0."""
    counter = Counter(0 if r.outcome == COMPLETED else r.cycle_length
                      for r in reports)
    return [(length, mode, cl, n) for cl, n in sorted(counter.items())]


def write_atlas_csv(rows, path, echo: str) -> None:
    lines = [echo, "length,mode,cycle_length,count"]
    lines.extend(f"{l},{m},{c},{n}" for l, m, c, n in rows)
    Path(path).write_text("\n".join(lines) + "\n")


def write_fixed_points(patterns, path, echo: str) -> None:
    """One fixed point per line in rank-token form. No pattern lines
    below the header comments means verified-none within the echoed
    exhaustive bounds."""
    lines = [echo]
    if patterns:
        lines.append("# reachability unknown: listed sequences may not be"
                     " reachable from a full shuffled pack")
        lines.extend(pattern_to_ranks(p) for p in patterns)
    Path(path).write_text("\n".join(lines) + "\n")
