"""Reproducible Monte Carlo harness.

Every game's deck comes from its own generator, seeded by a strong
64-bit mix of (master_seed, game_index). No global or shared stream
exists, so the result of a run is a pure function of its config and is
bit-identical whether games execute serially or across any number of
worker processes. The generator is splitmix64 with unbiased rejection
sampling; its name travels in the output metadata so runs can be
replicated across builds.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .engine import DEFAULT_RECOMBINE_MODE, GameResult, RECOMBINE_MODES, play_game

GENERATOR_NAME = "splitmix64"

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

# One standard pack: each of the 13 values exactly four times.
FULL_DECK = tuple(v for v in range(1, 14) for _ in range(4))


def mix64(x: int) -> int:
    """splitmix64 finalizer; a strong 64-bit bijective mix."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class SplitMix64:
    """Small deterministic generator with unbiased integer draws."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        return mix64(self.state)

    def bits(self, k: int) -> int:
        out = 0
        got = 0
        while got < k:
            out = (out << 64) | self.next64()
            got += 64
        return out >> (got - k)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), any positive n (rejection sampling)."""
        if n <= 0:
            raise ValueError("n must be positive")
        if n == 1:
            return 0
        k = (n - 1).bit_length()
        while True:
            r = self.bits(k)
            if r < n:
                return r


def game_seed(master_seed: int, game_index: int) -> int:
    """Per-game seed; a pure mix so parallel schedules cannot matter."""
    return mix64(master_seed ^ mix64(game_index + 1))


def shuffled_deck(master_seed: int, game_index: int) -> list[int]:
    """Fisher-Yates shuffle of the full pack for one game slot."""
    rng = SplitMix64(game_seed(master_seed, game_index))
    deck = list(FULL_DECK)
    for i in range(len(deck) - 1, 0, -1):
        j = rng.below(i + 1)
        deck[i], deck[j] = deck[j], deck[i]
    return deck


@dataclass(frozen=True)
class ExperimentConfig:
    games: int = 10000
    batches: int = 10
    master_seed: int = 42
    recombine_mode: str = DEFAULT_RECOMBINE_MODE

    def __post_init__(self):
        if self.games < 1:
            raise ValueError("games must be >= 1")
        if self.batches < 1:
            raise ValueError("batches must be >= 1")
        if self.games % self.batches:
            raise ValueError(
                f"games ({self.games}) must divide evenly into batches ({self.batches})")
        if self.recombine_mode not in RECOMBINE_MODES:
            raise ValueError(f"unknown recombine mode: {self.recombine_mode!r}")

    @property
    def batch_size(self) -> int:
        return self.games // self.batches


def _play_range(master_seed: int, mode: str, start: int, stop: int) -> list[GameResult]:
    results = []
    for i in range(start, stop):
        deck = shuffled_deck(master_seed, i)
        results.append(play_game(deck, mode, game_index=i))
    return results


def run_experiment(config: ExperimentConfig, workers: int = 1,
                   progress: Callable[[int, int], None] | None = None) -> list[GameResult]:
    """Play every game in the config; results ordered by game_index.

    Work is partitioned into the config's batches. With workers > 1 the
    batches run in a process pool; the merge collects them in batch
    order, so the output is identical for any worker count.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    spans = [(b * config.batch_size, (b + 1) * config.batch_size)
             for b in range(config.batches)]
    results: list[GameResult] = []
    if workers == 1:
        for start, stop in spans:
            results.extend(_play_range(config.master_seed, config.recombine_mode,
                                       start, stop))
            if progress is not None:
                progress(len(results), config.games)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_play_range, config.master_seed,
                                   config.recombine_mode, start, stop)
                       for start, stop in spans]
            for future in futures:
                results.extend(future.result())
                if progress is not None:
                    progress(len(results), config.games)
    return results
