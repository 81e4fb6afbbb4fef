"""Classic ROVER baseline: DP alignment into a WTN plus frequency voting.

Hypotheses are folded one at a time into a word transition network by
Levenshtein alignment against the current slot sequence, inserting NULL
arcs for insertions/deletions, then each slot is decided by frequency.
Folding is order-dependent by construction; only determinism for a
fixed order is promised. Each fold costs O(L*L').
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .alignment import HypothesisLike, as_hypotheses, tokenize
from .voting import CombinationResult

#: Distinguished slot token for "no word here"; never equals a real word.
NULL = None


@dataclass(frozen=True)
class EditCosts:
    substitution: float = 1.0
    insertion: float = 1.0
    deletion: float = 1.0
    match: float = 0.0

    def __post_init__(self):
        if min(self.substitution, self.insertion, self.deletion, self.match) < 0:
            raise ValueError("edit costs must be non-negative")
        if self.match >= min(self.substitution, self.insertion, self.deletion):
            raise ValueError("match must be strictly the cheapest operation")


@dataclass(frozen=True)
class WordTransitionNetwork:
    """Ordered correspondence slots; each maps word-or-NULL to frequency."""

    slots: tuple[dict, ...]
    num_aligned: int

    @classmethod
    def from_tokens(cls, tokens: Sequence[str]) -> "WordTransitionNetwork":
        return cls(slots=tuple({t: 1} for t in tokens), num_aligned=1)


def dp_align_into_wtn(
    wtn: WordTransitionNetwork,
    tokens: Sequence[str],
    costs: EditCosts = EditCosts(),
) -> WordTransitionNetwork:
    """Fold one token sequence into the network by Levenshtein alignment.

    A token matches a slot when it is already one of the slot's words.
    Matches and substitutions merge into the existing slot, deletions add
    NULL to it, insertions create a new slot padded with NULL for every
    previously aligned hypothesis. Returns a new network.
    """
    ref = wtn.slots
    m, n = len(ref), len(tokens)

    dist = [[0.0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        dist[i][0] = dist[i - 1][0] + costs.deletion
    for j in range(1, n + 1):
        dist[0][j] = dist[0][j - 1] + costs.insertion
    for i in range(1, m + 1):
        slot = ref[i - 1]
        row = dist[i]
        prev = dist[i - 1]
        for j in range(1, n + 1):
            diag = prev[j - 1] + (costs.match if tokens[j - 1] in slot else costs.substitution)
            up = prev[j] + costs.deletion
            left = row[j - 1] + costs.insertion
            row[j] = min(diag, up, left)

    # Traceback, preferring diagonal, then deletion, then insertion.
    ops: list[tuple[str, int, Optional[str]]] = []
    i, j = m, n
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            step = costs.match if tokens[j - 1] in ref[i - 1] else costs.substitution
            if dist[i][j] == dist[i - 1][j - 1] + step:
                ops.append(("merge", i - 1, tokens[j - 1]))
                i, j = i - 1, j - 1
                continue
        if i > 0 and dist[i][j] == dist[i - 1][j] + costs.deletion:
            ops.append(("null", i - 1, None))
            i -= 1
            continue
        ops.append(("insert", i, tokens[j - 1]))
        j -= 1
    ops.reverse()

    new_slots: list[dict] = []
    for op, idx, tok in ops:
        if op == "merge":
            slot = dict(ref[idx])
            slot[tok] = slot.get(tok, 0) + 1
            new_slots.append(slot)
        elif op == "null":
            slot = dict(ref[idx])
            slot[NULL] = slot.get(NULL, 0) + 1
            new_slots.append(slot)
        else:  # insert: brand-new slot, NULL for everyone folded so far
            new_slots.append({NULL: wtn.num_aligned, tok: 1})
    return WordTransitionNetwork(slots=tuple(new_slots), num_aligned=wtn.num_aligned + 1)


def _vote_slot(slot: dict) -> Optional[str]:
    # Highest frequency wins; NULL loses every tie; remaining ties go to
    # the lexicographically smallest word.
    best_word = None
    best_freq = -1
    for word, freq in slot.items():
        if word is NULL:
            continue
        if freq > best_freq or (freq == best_freq and word < best_word):
            best_word, best_freq = word, freq
    if best_word is None:
        return None
    if slot.get(NULL, 0) > best_freq:
        return None
    return best_word


def rover_combine(
    hs: Sequence[HypothesisLike],
    delimiter: str = " ",
    collapse: bool = True,
    reference: str = "first",
    costs: EditCosts = EditCosts(),
) -> CombinationResult:
    """Classic combination: seed a WTN, fold the rest, vote per slot.

    reference selects the seed hypothesis: "first" (input order) or
    "longest" (most tokens, ties to the earliest).
    """
    pool = as_hypotheses(hs)
    if not pool:
        raise ValueError("empty hypothesis pool")
    if reference not in ("first", "longest"):
        raise ValueError(f"unknown reference selection: {reference!r}")
    token_rows = [tokenize(h.text, delimiter, collapse) for h in pool]
    ref_idx = 0
    if reference == "longest":
        ref_idx = max(range(len(token_rows)), key=lambda i: (len(token_rows[i]), -i))
    wtn = WordTransitionNetwork.from_tokens(token_rows[ref_idx])
    for i, row in enumerate(token_rows):
        if i == ref_idx:
            continue
        wtn = dp_align_into_wtn(wtn, row, costs)
    tokens = [w for w in (_vote_slot(s) for s in wtn.slots) if w is not None]
    return CombinationResult(tokens=tuple(tokens), text=delimiter.join(tokens))
