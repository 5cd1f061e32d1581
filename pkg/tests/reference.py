"""Independent naive reference simulator used as a test oracle.

Deliberately written from the rules alone, with different internals
from the package: piles are rebuilt per turn from the dealt batch, the
duplicate scan searches for the leftmost earlier equal card by index,
and cycle detection keeps a plain list of every end-of-round state and
linear-scans it (no hashing, no pruning). Keep it dumb; its job is to
disagree with the optimized engine whenever the engine is wrong.
"""

from itertools import product

REF_FLIP = "flip"
REF_NOFLIP = "noflip"


def ref_round(hand, mode):
    """Play one round. Returns (new_hand, moves, discard_happened)."""
    piles = [[], [], [], []]
    moves = 0
    discarded = False
    for i in range(0, len(hand), 4):
        batch = hand[i:i + 4]
        for j in range(4):
            piles[j].append(batch[j])
            moves += 1
        if batch[0] == batch[1] == batch[2] == batch[3]:
            for p in piles:
                p.pop()
            moves += 4
            discarded = True
            continue
        for j in range(1, 4):
            for k in range(j):
                if batch[k] == batch[j]:
                    piles[k].append(piles[j].pop())
                    moves += 1
                    break
    if mode == REF_FLIP:
        new_hand = piles[3] + piles[2] + piles[1] + piles[0]
    elif mode == REF_NOFLIP:
        new_hand = []
        for p in piles:
            new_hand.extend(reversed(p))
    else:
        raise ValueError(mode)
    return new_hand, moves, discarded


def ref_play(deck, mode=REF_FLIP):
    """Play a full game. Returns a dict shaped like GameResult."""
    hand = list(deck)
    seen = [tuple(hand)]
    rounds = 0
    moves = 0
    first_discard = None
    while True:
        hand, round_moves, discarded = ref_round(hand, mode)
        rounds += 1
        moves += round_moves
        if discarded and first_discard is None:
            first_discard = rounds
        if not hand:
            return {"outcome": "completed", "rounds": rounds, "moves": moves,
                    "first_discard_round": first_discard, "cycle_length": None}
        state = tuple(hand)
        if state in seen:
            return {"outcome": "cycled", "rounds": rounds, "moves": moves,
                    "first_discard_round": first_discard,
                    "cycle_length": rounds - seen.index(state)}
        seen.append(state)


def ref_is_rgs(seq, max_multiplicity=4, max_labels=13):
    """Restricted growth check by direct definition."""
    if not seq or seq[0] != 0:
        return False
    high = 0
    for value in seq[1:]:
        if value > high + 1:
            return False
        high = max(high, value)
    if high + 1 > max_labels:
        return False
    return all(seq.count(v) <= max_multiplicity for v in set(seq))


def ref_count_patterns(length):
    """Generate-and-filter pattern count.

    Candidates only need labels up to position index (an RGS can never
    exceed that), which keeps the product small enough to brute-force
    for lengths up to 8.
    """
    alphabet = [range(min(i + 1, 13)) for i in range(length)]
    return sum(1 for seq in product(*alphabet) if ref_is_rgs(seq))
