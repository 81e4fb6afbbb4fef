"""Alignment by word-count majority vote.

Instead of dynamic programming, hypotheses are aligned by (1) voting on
the number of words across the pool, (2) keeping only the hypotheses
that match the winning count, and (3) stacking their tokens into a
rectangular word lattice. The whole step is O(N*l) for N hypotheses of
at most l characters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union


@dataclass(frozen=True)
class Hypothesis:
    """One recognizer's raw output for a single text line."""

    text: str
    recognizer_id: str = ""


HypothesisLike = Union[str, Hypothesis]


def as_hypotheses(hs: Sequence[HypothesisLike]) -> list[Hypothesis]:
    """Coerce plain strings to Hypothesis, ids defaulting to the index."""
    out = []
    for i, h in enumerate(hs):
        if isinstance(h, Hypothesis):
            out.append(h if h.recognizer_id else Hypothesis(h.text, str(i)))
        else:
            out.append(Hypothesis(h, str(i)))
    return out


def tokenize(text: HypothesisLike, delimiter: str = " ", collapse: bool = True) -> list[str]:
    """Split a line into word tokens on a single-character delimiter.

    With collapse (the default) runs of delimiters count as one boundary
    and leading/trailing delimiters are trimmed, so no empty tokens are
    produced and empty text yields zero tokens. With collapse=False the
    split is literal and empty tokens survive.
    """
    if isinstance(text, Hypothesis):
        text = text.text
    if len(delimiter) != 1:
        raise ValueError(f"delimiter must be a single character, got {delimiter!r}")
    if collapse:
        return [t for t in text.split(delimiter) if t]
    return text.split(delimiter)


@dataclass(frozen=True)
class WordCountVote:
    """Outcome of the majority vote over per-hypothesis word counts."""

    histogram: Mapping[int, int]
    nb_words: int
    retained_ids: tuple[str, ...]

    @property
    def num_retained(self) -> int:
        return len(self.retained_ids)


@dataclass(frozen=True)
class WordLattice:
    """Rectangular matrix of word tokens: one row per retained hypothesis."""

    rows: tuple[tuple[str, ...], ...]
    row_ids: tuple[str, ...]
    vote: WordCountVote
    delimiter: str = " "

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.vote.nb_words:
                raise ValueError(
                    f"lattice row of length {len(r)} != nb_words {self.vote.nb_words}"
                )

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return self.vote.nb_words

    def column(self, j: int) -> list[str]:
        return [r[j] for r in self.rows]

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[str]], delimiter: str = " "
    ) -> "WordLattice":
        """Convenience constructor for hand-built lattices (tests, demos)."""
        if not rows:
            raise ValueError("lattice needs at least one row")
        width = len(rows[0])
        vote = WordCountVote(
            histogram={width: len(rows)},
            nb_words=width,
            retained_ids=tuple(str(i) for i in range(len(rows))),
        )
        return cls(
            rows=tuple(tuple(r) for r in rows),
            row_ids=vote.retained_ids,
            vote=vote,
            delimiter=delimiter,
        )


def estimate_word_count(
    hs: Sequence[HypothesisLike], delimiter: str = " ", collapse: bool = True
) -> WordCountVote:
    """Majority vote on the word count over the hypothesis pool.

    Ties break toward the smallest tied count (fewer segmentation
    boundaries), which keeps the result deterministic.
    """
    pool = as_hypotheses(hs)
    if not pool:
        raise ValueError("empty hypothesis pool")
    counts = [len(tokenize(h.text, delimiter, collapse)) for h in pool]
    histogram: dict[int, int] = {}
    for c in counts:
        histogram[c] = histogram.get(c, 0) + 1
    best = max(histogram.values())
    nb_words = min(c for c, n in histogram.items() if n == best)
    retained = tuple(h.recognizer_id for h, c in zip(pool, counts) if c == nb_words)
    return WordCountVote(histogram=histogram, nb_words=nb_words, retained_ids=retained)


def build_lattice(
    hs: Sequence[HypothesisLike], delimiter: str = " ", collapse: bool = True
) -> tuple[WordLattice, WordCountVote]:
    """Tokenize, vote on the word count and keep the matching hypotheses.

    Rows appear in input order. Runs in O(N*l).
    """
    pool = as_hypotheses(hs)
    if not pool:
        raise ValueError("empty hypothesis pool")
    token_rows = [tokenize(h.text, delimiter, collapse) for h in pool]
    histogram: dict[int, int] = {}
    for row in token_rows:
        histogram[len(row)] = histogram.get(len(row), 0) + 1
    best = max(histogram.values())
    nb_words = min(c for c, n in histogram.items() if n == best)
    rows = []
    ids = []
    for h, row in zip(pool, token_rows):
        if len(row) == nb_words:
            rows.append(tuple(row))
            ids.append(h.recognizer_id)
    vote = WordCountVote(histogram=histogram, nb_words=nb_words, retained_ids=tuple(ids))
    lattice = WordLattice(
        rows=tuple(rows), row_ids=tuple(ids), vote=vote, delimiter=delimiter
    )
    return lattice, vote
