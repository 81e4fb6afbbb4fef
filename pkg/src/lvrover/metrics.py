"""Edit-distance evaluation: CER, WER and micro-averaged corpus reports."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .alignment import tokenize
from .parallel import ordered_map

TokenSeq = Union[str, Sequence[str]]

# Below this size the plain two-row DP beats numpy call overhead.
_NUMPY_MIN_LEN = 24


def _levenshtein_py(a: Sequence, b: Sequence) -> int:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        append = cur.append
        for j, cb in enumerate(b, 1):
            if ca == cb:
                append(prev[j - 1])
            else:
                append(1 + min(prev[j - 1], prev[j], cur[-1]))
        prev = cur
    return prev[-1]


def _levenshtein_np(a: Sequence, b: Sequence) -> int:
    # Row-vectorized unit-cost DP. The left-to-right insertion recurrence
    # cur[j] = min(cand[j], cur[j-1]+1) equals a prefix-min of cand[j]-j.
    ids: dict = {}
    a_codes = np.fromiter((ids.setdefault(x, len(ids)) for x in a), dtype=np.int32)
    b_codes = np.fromiter((ids.setdefault(x, len(ids)) for x in b), dtype=np.int32)
    n = len(b_codes)
    offsets = np.arange(n + 1, dtype=np.int32)
    prev = offsets.copy()
    cand = np.empty(n + 1, dtype=np.int32)
    for i, ca in enumerate(a_codes, 1):
        cand[0] = i
        np.minimum(prev[1:] + 1, prev[:-1] + (b_codes != ca), out=cand[1:])
        prev = np.minimum.accumulate(cand - offsets) + offsets
    return int(prev[-1])


def edit_distance(a: TokenSeq, b: TokenSeq) -> int:
    """Minimal substitutions + insertions + deletions turning a into b.

    Works on strings (character level) or token sequences (word level).
    """
    if min(len(a), len(b)) >= _NUMPY_MIN_LEN:
        return _levenshtein_np(a, b)
    return _levenshtein_py(a, b)


def cer(reference: str, hypothesis: str) -> float:
    """Character error rate: edit distance over reference length.

    Characters are Unicode scalar values; spaces count.
    """
    if not reference:
        raise ValueError("CER is undefined for an empty reference")
    return edit_distance(reference, hypothesis) / len(reference)


def wer(
    reference: str,
    hypothesis: str,
    delimiter: str = " ",
    collapse: bool = True,
) -> float:
    """Word error rate, tokenized with the alignment rules."""
    ref_tokens = tokenize(reference, delimiter, collapse)
    if not ref_tokens:
        raise ValueError("WER is undefined for a reference with no word tokens")
    hyp_tokens = tokenize(hypothesis, delimiter, collapse)
    return edit_distance(ref_tokens, hyp_tokens) / len(ref_tokens)


@dataclass(frozen=True)
class LineEval:
    ref_chars: int
    ref_words: int
    char_edits: int
    word_edits: int

    @property
    def cer(self) -> float:
        return self.char_edits / self.ref_chars

    @property
    def wer(self) -> float:
        return self.word_edits / self.ref_words


@dataclass(frozen=True)
class EvalReport:
    """Micro-averaged corpus rates: summed edits over summed lengths."""

    total_ref_chars: int
    total_ref_words: int
    char_edits: int
    word_edits: int
    per_line: Optional[tuple[LineEval, ...]] = None

    @property
    def cer(self) -> float:
        return self.char_edits / self.total_ref_chars

    @property
    def wer(self) -> float:
        return self.word_edits / self.total_ref_words


def _eval_pair(k: int, ref: str, hyp: str, delimiter: str, collapse: bool) -> LineEval:
    if not ref:
        raise ValueError(f"pair {k}: empty reference line")
    ref_tokens = tokenize(ref, delimiter, collapse)
    if not ref_tokens:
        raise ValueError(f"pair {k}: reference has no word tokens")
    hyp_tokens = tokenize(hyp, delimiter, collapse)
    return LineEval(
        ref_chars=len(ref),
        ref_words=len(ref_tokens),
        char_edits=edit_distance(ref, hyp),
        word_edits=edit_distance(ref_tokens, hyp_tokens),
    )


def corpus_eval(
    pairs: Sequence[tuple[str, str]],
    delimiter: str = " ",
    collapse: bool = True,
    keep_per_line: bool = False,
    threads: int = 1,
) -> EvalReport:
    """Evaluate (reference, hypothesis) pairs into one micro-averaged report."""
    if not pairs:
        raise ValueError("empty evaluation corpus")
    lines = ordered_map(
        lambda kp: _eval_pair(kp[0], kp[1][0], kp[1][1], delimiter, collapse),
        list(enumerate(pairs)),
        threads,
    )
    return EvalReport(
        total_ref_chars=sum(l.ref_chars for l in lines),
        total_ref_words=sum(l.ref_words for l in lines),
        char_edits=sum(l.char_edits for l in lines),
        word_edits=sum(l.word_edits for l in lines),
        per_line=tuple(lines) if keep_per_line else None,
    )
