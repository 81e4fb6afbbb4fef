"""Word lexicons: loading, normalization, merging and coverage.

A lexicon is an immutable set of normalized word tokens with O(1)
membership, sized for anything from a few words to multi-million-word
dictionaries. Matching behaviour (case folding, Unicode form,
punctuation stripping) is controlled by a NormalizationPolicy.
"""

from __future__ import annotations

import logging
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Sequence, Union

log = logging.getLogger(__name__)

# Characters stripped from both ends when strip_surrounding_punctuation is on.
_EDGE_PUNCT = ".,;:!?\"'()[]{}«»<>"

LexiconSource = Union[str, Path, IO, Iterable[str]]


@dataclass(frozen=True)
class NormalizationPolicy:
    """How words are canonicalized before storage and lookup.

    Defaults keep tokens raw apart from Unicode canonical composition,
    so 'Le' and 'le' stay distinct unless case_fold is enabled.
    """

    case_fold: bool = False
    unicode_canonical_form: str = "canonical-composed"  # or "none"
    strip_surrounding_punctuation: bool = False

    def __post_init__(self):
        if self.unicode_canonical_form not in ("none", "canonical-composed"):
            raise ValueError(
                f"unknown unicode_canonical_form: {self.unicode_canonical_form!r}"
            )

    def normalize(self, word: str) -> str:
        """Apply the policy to one token. Idempotent."""
        w = word
        if self.strip_surrounding_punctuation:
            w = w.strip(_EDGE_PUNCT)
        if self.case_fold:
            w = w.casefold()
        if self.unicode_canonical_form == "canonical-composed":
            w = unicodedata.normalize("NFC", w)
        return w


@dataclass(frozen=True)
class Lexicon:
    """Immutable normalized word set; safe for concurrent readers."""

    words: frozenset[str]
    policy: NormalizationPolicy = field(default_factory=NormalizationPolicy)

    @property
    def size(self) -> int:
        return len(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return self.contains(word)

    @classmethod
    def empty(cls, policy: NormalizationPolicy | None = None) -> "Lexicon":
        return cls(frozenset(), policy or NormalizationPolicy())

    def contains(self, word: str) -> bool:
        """True iff the normalized form of `word` is a member."""
        return self.policy.normalize(word) in self.words

    def merge(self, other: "Lexicon") -> "Lexicon":
        """Set union of two lexicons sharing one normalization policy."""
        if self.policy != other.policy:
            raise ValueError(
                "cannot merge lexicons with different normalization policies: "
                f"{self.policy} vs {other.policy}"
            )
        return Lexicon(self.words | other.words, self.policy)

    def coverage(
        self,
        reference_lines: Sequence[str],
        delimiter: str = " ",
        collapse: bool = True,
    ) -> float:
        """Fraction of reference word tokens (with multiplicity) found here.

        Lines are tokenized with the same rules the alignment stage uses.
        """
        from .alignment import tokenize

        hits = 0
        total = 0
        for line in reference_lines:
            for tok in tokenize(line, delimiter, collapse):
                total += 1
                if self.contains(tok):
                    hits += 1
        if total == 0:
            raise ValueError("coverage is undefined: reference corpus has no word tokens")
        return hits / total


def merge(a: Lexicon, b: Lexicon) -> Lexicon:
    return a.merge(b)


def _iter_lines(source: LexiconSource) -> Iterable[str]:
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
        return _decode_lines(data, name=str(source))
    read = getattr(source, "read", None)
    if read is not None:
        data = read()
        if isinstance(data, bytes):
            return _decode_lines(data, name=getattr(source, "name", "<stream>"))
        return data.splitlines()
    return source  # already an iterable of lines


def _decode_lines(data: bytes, name: str) -> list[str]:
    if data.startswith(b"\xef\xbb\xbf"):  # UTF-8 BOM
        data = data[3:]
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ValueError(
            f"{name}: malformed UTF-8 at byte offset {e.start}: {e.reason}"
        ) from e
    return text.splitlines()


def load_lexicon(
    source: LexiconSource, policy: NormalizationPolicy | None = None
) -> Lexicon:
    """Build a Lexicon from line-oriented text (one word per line).

    Accepts a path, an open file, or any iterable of lines. Empty lines
    are ignored and duplicates collapse. Entries that still contain
    whitespace after normalization can never match a token, so they are
    skipped with a warning.
    """
    policy = policy or NormalizationPolicy()
    words = set()
    skipped = 0
    for raw in _iter_lines(source):
        line = raw.strip("\r\n").strip()
        if not line:
            continue
        norm = policy.normalize(line)
        if not norm:
            continue
        if any(c.isspace() for c in norm):
            skipped += 1
            continue
        words.add(norm)
    if skipped:
        log.warning("skipped %d lexicon entries containing whitespace", skipped)
    return Lexicon(frozenset(words), policy)
