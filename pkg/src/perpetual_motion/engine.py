"""Rules engine for the Perpetual Motion solitaire game.

Perpetual Motion is played with one standard 52-card pack. Suits are
ignored; only the 13 rank values matter. A game proceeds in rounds:

1. Deal four cards side-by-side, left to right, onto four piles.
2. If all four dealt cards share a value, pick them up and discard them.
3. Otherwise, any dealt duplicates are placed on top of the left-most
   dealt card bearing the same value.
4. Repeat until the hand is exhausted.
5. Restack the piles into a new hand: pile 1 on pile 2, that on pile 3,
   that on pile 4.
6. Repeat rounds until every card has been discarded.

There are no choices, so the outcome is fully determined by the initial
order of the pack. Some orders never complete: the value order at the
end of a round eventually repeats an earlier one and the game cycles
forever. Cycle detection is delegated to a ledger (see `cycles`).

Rule conventions baked in here:

* Steps 2 and 3 look only at the four cards just dealt. Newly exposed
  pile tops are never re-examined within a turn, and consolidation can
  never trigger a discard.
* Duplicates are consolidated scanning dealt positions left to right;
  each moved card lands on the pile where the left-most dealt card of
  its value sits.
* Move counting: one move per card dealt, per card consolidated, and
  per card discarded. Restacking the piles is free.
* Step 5 fixes the stacking order but not which end of the combined
  stack is dealt first; both readings are implemented as
  `RECOMBINE_FLIP` (stack turned over, so pile 4's bottom card comes
  first) and `RECOMBINE_NOFLIP` (pile 1's top card comes first).
  Flip is the default; it is the convention under which simulated
  completion rates and round counts line up with hand play.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cycles import SeenLedger

# A card is just its rank, 1..13 (Ace=1 .. King=13). A hand is a value
# sequence in dealt-first order; the tableau is four piles whose last
# element is the exposed top card.
CardValue = int
Hand = list[int]
Pile = list[int]

RANK_TOKENS = "A23456789TJQK"

RECOMBINE_FLIP = "flip"
RECOMBINE_NOFLIP = "noflip"
RECOMBINE_MODES = (RECOMBINE_FLIP, RECOMBINE_NOFLIP)
DEFAULT_RECOMBINE_MODE = RECOMBINE_FLIP

COMPLETED = "completed"
CYCLED = "cycled"

EVENT_DEAL = "deal"
EVENT_CONSOLIDATE = "consolidate"
EVENT_DISCARD = "discard"


def format_card(value: int) -> str:
    if not 1 <= value <= 13:
        raise ValueError(f"card value out of range: {value}")
    return RANK_TOKENS[value - 1]


def parse_card(token: str) -> int:
    cleaned = token.strip().upper()
    if len(cleaned) != 1 or cleaned not in RANK_TOKENS:
        raise ValueError(f"unknown card token: {token!r}")
    return RANK_TOKENS.index(cleaned) + 1


def format_hand(values) -> str:
    """Space-separated rank tokens, dealt-first order."""
    return " ".join(format_card(v) for v in values)


def parse_hand(text: str) -> Hand:
    return [parse_card(tok) for tok in text.split()]


@dataclass(frozen=True)
class TurnEvent:
    """One observable effect of a deal turn.

    `cards` holds the values involved: all four for a deal or a discard,
    the single moved value for a consolidation. Pile indices are 1-based,
    left to right; a deal always targets piles 1..4 in order.
    """

    kind: str
    cards: tuple[int, ...]
    src: int | None = None
    dst: int | None = None


@dataclass(frozen=True)
class RoundEnd:
    """Trace marker emitted after each round with the recombined hand."""

    round_no: int
    hand: tuple[int, ...]


@dataclass(frozen=True)
class GameResult:
    """Terminal record of one game."""

    outcome: str
    rounds: int
    moves: int
    first_discard_round: int | None = None
    cycle_length: int | None = None
    game_index: int = 0

    def __post_init__(self):
        if self.outcome not in (COMPLETED, CYCLED):
            raise ValueError(f"unknown outcome: {self.outcome!r}")
        if self.outcome == COMPLETED:
            if self.first_discard_round is None or self.cycle_length is not None:
                raise ValueError("completed games discard everything and have no cycle")
        elif self.cycle_length is None or self.cycle_length < 1:
            raise ValueError("cycled games need a cycle_length >= 1")

    @property
    def completed(self) -> bool:
        return self.outcome == COMPLETED


@dataclass
class GameState:
    """Mutable state of a game in progress.

    `hand` is the undealt remainder in dealt-first order, `piles` the
    four tableau slots (slots are positional and may be empty),
    `round_index` the number of completed rounds.
    """

    hand: Hand
    piles: list[Pile] = field(default_factory=lambda: [[], [], [], []])
    discarded: int = 0
    round_index: int = 0
    moves: int = 0
    first_discard_round: int | None = None

    def total_cards(self) -> int:
        return len(self.hand) + sum(len(p) for p in self.piles) + self.discarded


def validate_deck(deck) -> None:
    """Reject decks the rules cannot play.

    Any multiset with at most four copies per value is legal; a full
    52-card pack is just the common case.
    """
    if not deck:
        raise ValueError("deck is empty")
    if len(deck) % 4:
        raise ValueError(f"deck size must be a multiple of 4, got {len(deck)}")
    counts = [0] * 14
    for v in deck:
        if not isinstance(v, int) or not 1 <= v <= 13:
            raise ValueError(f"card value out of range: {v!r}")
        counts[v] += 1
        if counts[v] > 4:
            raise ValueError(f"more than 4 copies of value {v}")


def _check_mode(mode: str) -> None:
    if mode not in RECOMBINE_MODES:
        raise ValueError(f"unknown recombine mode: {mode!r}")


def new_game(deck) -> GameState:
    validate_deck(deck)
    return GameState(hand=list(deck))


def deal_turn(state: GameState, trace: list | None = None) -> None:
    """Deal the next four cards and settle them (steps 1 to 3).

    Mutates `state`; appends TurnEvents to `trace` when given. The hand
    always holds a multiple of four cards, so fewer than four here means
    the caller broke the round structure.
    """
    hand = state.hand
    if len(hand) < 4:
        raise ValueError("fewer than 4 cards in hand")
    d0, d1, d2, d3 = hand[0], hand[1], hand[2], hand[3]
    del hand[:4]
    p0, p1, p2, p3 = state.piles
    p0.append(d0)
    p1.append(d1)
    p2.append(d2)
    p3.append(d3)
    moves = 4
    if trace is not None:
        trace.append(TurnEvent(EVENT_DEAL, (d0, d1, d2, d3)))
    if d0 == d1 == d2 == d3:
        # Step 2: a dealt quad is picked up and discarded outright.
        p0.pop()
        p1.pop()
        p2.pop()
        p3.pop()
        moves += 4
        state.discarded += 4
        if state.first_discard_round is None:
            state.first_discard_round = state.round_index + 1
        if trace is not None:
            trace.append(TurnEvent(EVENT_DISCARD, (d0, d1, d2, d3)))
    else:
        # Step 3: dealt duplicates join the left-most dealt card of
        # their value, scanning positions left to right.
        if d1 == d0:
            p0.append(p1.pop())
            moves += 1
            if trace is not None:
                trace.append(TurnEvent(EVENT_CONSOLIDATE, (d1,), src=2, dst=1))
        if d2 == d0:
            p0.append(p2.pop())
            moves += 1
            if trace is not None:
                trace.append(TurnEvent(EVENT_CONSOLIDATE, (d2,), src=3, dst=1))
        elif d2 == d1:
            p1.append(p2.pop())
            moves += 1
            if trace is not None:
                trace.append(TurnEvent(EVENT_CONSOLIDATE, (d2,), src=3, dst=2))
        if d3 == d0:
            p0.append(p3.pop())
            moves += 1
            if trace is not None:
                trace.append(TurnEvent(EVENT_CONSOLIDATE, (d3,), src=4, dst=1))
        elif d3 == d1:
            p1.append(p3.pop())
            moves += 1
            if trace is not None:
                trace.append(TurnEvent(EVENT_CONSOLIDATE, (d3,), src=4, dst=2))
        elif d3 == d2:
            p2.append(p3.pop())
            moves += 1
            if trace is not None:
                trace.append(TurnEvent(EVENT_CONSOLIDATE, (d3,), src=4, dst=3))
    state.moves += moves


def recombine(piles: list[Pile], mode: str = DEFAULT_RECOMBINE_MODE) -> Hand:
    """Restack the piles (step 5) and return the next hand.

    Stacking is always pile 1 on pile 2 on pile 3 on pile 4. NoFlip
    deals the combined stack top-down (pile 1's top card first); Flip
    turns the stack over first, so the order is the exact reverse
    (pile 4's bottom card first). Costs no moves; leaves all slots
    empty. Empty piles contribute nothing, so an all-empty tableau
    yields the empty hand that signals completion upstream.
    """
    _check_mode(mode)
    p0, p1, p2, p3 = piles
    if mode == RECOMBINE_FLIP:
        hand = p3 + p2 + p1 + p0
    else:
        hand = p0[::-1] + p1[::-1] + p2[::-1] + p3[::-1]
    for p in piles:
        p.clear()
    return hand


def play_round(state: GameState, mode: str = DEFAULT_RECOMBINE_MODE,
               trace: list | None = None) -> Hand:
    """Play one full round (steps 1 to 5) and return the new hand."""
    if not state.hand and not any(state.piles):
        raise ValueError("game is already complete")
    while state.hand:
        deal_turn(state, trace)
    state.hand = recombine(state.piles, mode)
    state.round_index += 1
    return state.hand


def play_game(deck, mode: str = DEFAULT_RECOMBINE_MODE, *,
              ledger: SeenLedger | None = None,
              trace: list | None = None,
              game_index: int = 0) -> GameResult:
    """Play a deck to completion or until a cycle is detected.

    The initial pack order is recorded as the round-0 state, so an
    orbit that returns to its opening order is caught too. Termination
    is guaranteed: hand size never grows, the state space at each size
    is finite, and the round map is deterministic.
    """
    validate_deck(deck)
    _check_mode(mode)
    state = GameState(hand=list(deck))
    if ledger is None:
        ledger = SeenLedger()
    ledger.record_and_check(tuple(state.hand), 0)
    while True:
        size_before = len(state.hand)
        end_hand = play_round(state, mode, trace)
        if trace is not None:
            trace.append(RoundEnd(state.round_index, tuple(end_hand)))
        if not end_hand:
            return GameResult(COMPLETED, state.round_index, state.moves,
                              state.first_discard_round, None, game_index)
        if len(end_hand) < size_before:
            # Once the hand shrinks, the larger recorded states can
            # never recur; let the ledger forget them.
            ledger.prune_on_discard(len(end_hand))
        report = ledger.record_and_check(tuple(end_hand), state.round_index)
        if report is not None:
            return GameResult(CYCLED, state.round_index, state.moves,
                              state.first_discard_round, report.cycle_length,
                              game_index)
