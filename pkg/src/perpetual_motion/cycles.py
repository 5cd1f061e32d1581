"""Cycle detection over end-of-round value orders.

A game is in a cycle once the value sequence at the end of a round
matches the sequence at the end of some earlier round (or the initial
pack order). The ledger stores every sequence it has seen for the
current game, so detection fires at the very first recurrence and the
reported length is minimal. Equality is decided by the full value
sequence; hashing only speeds up the lookup.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CycleReport:
    first_seen_round: int
    cycle_length: int


class SeenLedger:
    """Map from end-of-round value sequence to the round that produced it.

    One ledger per game. Round 0 denotes the initial shuffled pack.
    With `prune` enabled (the default), entries recorded at larger hand
    sizes are dropped once the hand shrinks; they can never recur, so
    detection is unaffected and the ledger stays small.
    """

    def __init__(self, prune: bool = True):
        self.prune = prune
        self._rounds: dict[tuple[int, ...], int] = {}

    def __len__(self) -> int:
        return len(self._rounds)

    def record_and_check(self, state: tuple[int, ...], round_index: int) -> CycleReport | None:
        """Record `state`; report the cycle if it was already there."""
        first = self._rounds.get(state)
        if first is not None:
            return CycleReport(first_seen_round=first,
                               cycle_length=round_index - first)
        self._rounds[state] = round_index
        return None

    def prune_on_discard(self, hand_size: int) -> None:
        """Drop entries larger than `hand_size`; safe because hand size
        never grows, so those states are unreachable from here on."""
        if not self.prune:
            return
        self._rounds = {s: r for s, r in self._rounds.items() if len(s) <= hand_size}
