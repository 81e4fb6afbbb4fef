"""Lexicon-verified frequency voting over a word lattice.

Column by column, candidate words are split into an in-lexicon pool and
an out-of-vocabulary pool, restricted to words that were observed right
after the previously chosen word in at least one retained hypothesis.
The most frequent in-lexicon word wins a column when that pool is
non-empty; otherwise the most frequent OOV word does, which is how
unknown-but-consistent words survive. The lattice is explored forward
and backward and the pass with more verified words is kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .alignment import (
    HypothesisLike,
    WordCountVote,
    WordLattice,
    build_lattice,
)
from .lexicon import Lexicon

FORWARD = "forward"
BACKWARD = "backward"


@dataclass
class TallyEntry:
    """Per-word tally at one column: frequency plus observed successors."""

    frequency: int = 0
    next_words: set = field(default_factory=set)
    first_row: int = -1


@dataclass
class ColumnTally:
    """One column's candidates, split by lexicon verification."""

    in_lexicon: dict[str, TallyEntry] = field(default_factory=dict)
    oov: dict[str, TallyEntry] = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return not self.in_lexicon and not self.oov


@dataclass(frozen=True)
class CombinationResult:
    """Final transcription for one line plus voting diagnostics.

    verified_count/direction/fallback_events/vote are None for combiners
    that do not use lexicon-verified lattice voting (e.g. the classic
    ROVER baseline).
    """

    tokens: tuple[str, ...]
    text: str
    verified_count: Optional[int] = None
    direction: Optional[str] = None
    fallback_events: Optional[int] = None
    vote: Optional[WordCountVote] = None

    @property
    def nb_words(self) -> int:
        return len(self.tokens)


def _tally_column(
    rows: Sequence[Sequence[str]],
    col: int,
    allowed: set,
    lex: Lexicon,
    last_col: bool,
) -> ColumnTally:
    tally = ColumnTally()
    for i, row in enumerate(rows):
        word = row[col]
        if word not in allowed:
            continue
        pool = tally.in_lexicon if lex.contains(word) else tally.oov
        entry = pool.get(word)
        if entry is None:
            entry = TallyEntry(first_row=i)
            pool[word] = entry
        entry.frequency += 1
        if not last_col:
            entry.next_words.add(row[col + 1])
    return tally


def _pick(pool: dict[str, TallyEntry]) -> tuple[str, TallyEntry]:
    # Highest frequency wins; ties go to the earliest first-occurrence
    # row, then lexicographic (unreachable for same-column words but
    # kept for determinism).
    best_word, best_entry = None, None
    for word, entry in pool.items():
        if (
            best_entry is None
            or entry.frequency > best_entry.frequency
            or (
                entry.frequency == best_entry.frequency
                and (entry.first_row, word) < (best_entry.first_row, best_word)
            )
        ):
            best_word, best_entry = word, entry
    return best_word, best_entry


def vote_directional(
    lattice: WordLattice, lex: Lexicon, direction: str = FORWARD
) -> CombinationResult:
    """One greedy pass over the lattice in the given direction."""
    if direction not in (FORWARD, BACKWARD):
        raise ValueError(f"unknown direction: {direction!r}")
    if lattice.num_rows == 0:
        raise ValueError("empty lattice: no retained hypotheses")
    rows = lattice.rows
    if direction == BACKWARD:
        rows = tuple(tuple(reversed(r)) for r in rows)
    width = lattice.width

    tokens: list[str] = []
    verified = 0
    fallbacks = 0
    allowed = {r[0] for r in rows} if width else set()
    for j in range(width):
        tally = _tally_column(rows, j, allowed, lex, last_col=(j == width - 1))
        if tally.empty:
            # Dead end: no column word survives the successor filter.
            # Restart from the full column so a token is always emitted.
            fallbacks += 1
            allowed = {r[j] for r in rows}
            tally = _tally_column(rows, j, allowed, lex, last_col=(j == width - 1))
        if tally.in_lexicon:
            word, entry = _pick(tally.in_lexicon)
            verified += 1
        else:
            word, entry = _pick(tally.oov)
        tokens.append(word)
        allowed = entry.next_words
    if direction == BACKWARD:
        tokens.reverse()
    return CombinationResult(
        tokens=tuple(tokens),
        text=lattice.delimiter.join(tokens),
        verified_count=verified,
        direction=direction,
        fallback_events=fallbacks,
        vote=lattice.vote,
    )


def vote_bidirectional(lattice: WordLattice, lex: Lexicon) -> CombinationResult:
    """Explore the lattice both ways; keep the pass verifying more words.

    Ties (including identical outputs) resolve to the forward pass.
    Costs O(2*N'*W).
    """
    fwd = vote_directional(lattice, lex, FORWARD)
    bwd = vote_directional(lattice, lex, BACKWARD)
    return bwd if bwd.verified_count > fwd.verified_count else fwd


def combine(
    hs: Sequence[HypothesisLike],
    lex: Lexicon | None = None,
    delimiter: str = " ",
    collapse: bool = True,
    forward_only: bool = False,
) -> CombinationResult:
    """End-to-end combination: word-count alignment, then verified voting.

    With no lexicon the vote degenerates to pure frequency voting under
    the successor constraint, which is the lexicon-free configuration.
    """
    lex = lex if lex is not None else Lexicon.empty()
    lattice, _ = build_lattice(hs, delimiter, collapse)
    if forward_only:
        return vote_directional(lattice, lex, FORWARD)
    return vote_bidirectional(lattice, lex)


def brute_force_best_path(
    lattice: WordLattice, lex: Lexicon, max_width: int = 8, max_column_words: int = 8
) -> tuple[list[str], int]:
    """Exhaustive test oracle: best verified count over all valid paths.

    Enumerates every token sequence whose consecutive pairs occur
    consecutively in at least one lattice row, and returns one with the
    maximum number of lexicon-verified words (ties: larger summed column
    frequency, then lexicographically smallest token sequence). Refuses
    lattices beyond the stated bounds; not meant for production use.
    """
    if lattice.num_rows == 0:
        raise ValueError("empty lattice: no retained hypotheses")
    width = lattice.width
    if width > max_width:
        raise ValueError(f"oracle misuse: width {width} exceeds bound {max_width}")
    if width == 0:
        return [], 0

    freqs: list[dict[str, int]] = [{} for _ in range(width)]
    succ: list[dict[str, set]] = [{} for _ in range(width - 1)]
    for row in lattice.rows:
        for j, word in enumerate(row):
            freqs[j][word] = freqs[j].get(word, 0) + 1
            if j + 1 < width:
                succ[j].setdefault(word, set()).add(row[j + 1])
    for j, col in enumerate(freqs):
        if len(col) > max_column_words:
            raise ValueError(
                f"oracle misuse: column {j} has {len(col)} distinct words "
                f"(bound {max_column_words})"
            )

    best: tuple[int, int, tuple[str, ...]] | None = None

    def better(cand: tuple[int, int, tuple[str, ...]]) -> bool:
        if best is None:
            return True
        if cand[0] != best[0]:
            return cand[0] > best[0]
        if cand[1] != best[1]:
            return cand[1] > best[1]
        return cand[2] < best[2]

    path: list[str] = []

    def dfs(j: int, nverified: int, totfreq: int):
        nonlocal best
        if j == width:
            cand = (nverified, totfreq, tuple(path))
            if better(cand):
                best = cand
            return
        candidates = freqs[j] if j == 0 else succ[j - 1].get(path[-1], ())
        for word in sorted(candidates):
            path.append(word)
            dfs(
                j + 1,
                nverified + (1 if lex.contains(word) else 0),
                totfreq + freqs[j][word],
            )
            path.pop()

    dfs(0, 0, 0)
    assert best is not None  # every row is itself a valid path
    return list(best[2]), best[0]
