"""Synthetic recognizer cohorts via a parameterized character noise channel.

Each simulated recognizer corrupts ground-truth lines with per-character
substitution/insertion/deletion noise plus word-boundary perturbations
(space insertions and deletions), the part that stresses the word-count
vote. Cohort members share a confusion bias (correlated errors) but draw
their own noise, so their outputs stay complementary. Every (line,
recognizer) pair derives an independent generator state from the master
seed, making parallel and serial runs agree bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from .parallel import ordered_map

_RATE_FIELDS = ("sub_rate", "ins_rate", "del_rate", "space_ins_rate", "space_del_rate")
# Seed-stream tags keeping jitter draws and per-line noise independent.
_JITTER_STREAM = 0
_NOISE_STREAM = 1
# Probability that a substitution uses the cohort-wide confusion partner
# instead of a uniform draw.
_CONFUSION_BIAS = 0.5


@dataclass(frozen=True)
class ChannelParams:
    """Per-character and per-boundary corruption probabilities."""

    sub_rate: float = 0.0
    ins_rate: float = 0.0
    del_rate: float = 0.0
    space_ins_rate: float = 0.0
    space_del_rate: float = 0.0
    alphabet: Optional[str] = None  # None: derive from the corpus

    def __post_init__(self):
        for name in _RATE_FIELDS:
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {v}")
        if self.sub_rate + self.del_rate > 1.0:
            raise ValueError("sub_rate + del_rate must not exceed 1")
        if self.alphabet is not None and not self.alphabet:
            raise ValueError("alphabet must be non-empty when given")


@dataclass(frozen=True)
class CohortConfig:
    """A cohort: N recognizers around one base channel.

    per_recognizer_jitter is a relative spread; each recognizer scales
    every base rate by its own factor drawn from [1-j, 1+j].
    """

    size: int
    base: ChannelParams
    per_recognizer_jitter: float = 0.0
    shared_confusion_seed: int = 0
    master_seed: int = 0

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("cohort size must be >= 1")
        if self.per_recognizer_jitter < 0:
            raise ValueError("jitter must be >= 0")
        if self.master_seed < 0 or self.shared_confusion_seed < 0:
            raise ValueError("seeds must be non-negative")


def build_confusion_table(alphabet: str, seed: int) -> dict[str, str]:
    """Fixed 'preferred mistake' per character, shared across a cohort."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    table = {}
    chars = sorted(set(alphabet))
    for c in chars:
        others = [o for o in chars if o != c]
        if others:
            table[c] = others[int(rng.integers(0, len(others)))]
    return table


def corrupt_line(
    line: str,
    params: ChannelParams,
    rng: np.random.Generator,
    confusion: Optional[Mapping[str, str]] = None,
    delimiter: str = " ",
) -> str:
    """Send one line through the noise channel.

    Every character independently risks deletion then substitution;
    an insertion may follow any position. Surviving delimiters are
    additionally dropped with space_del_rate, and interior boundaries
    (both neighbours non-delimiter) gain a delimiter with space_ins_rate.
    Deterministic given the generator state.
    """
    if not line:
        raise ValueError("cannot corrupt an empty line")
    alphabet = params.alphabet
    if not alphabet:
        raise ValueError("corrupt_line needs an explicit alphabet")
    if delimiter in alphabet:
        raise ValueError("alphabet must not contain the delimiter")
    confusion = confusion or {}

    n = len(line)
    # Fixed-shape draws: the stream layout depends only on len(line).
    events = rng.random(n)
    bias = rng.random(n)
    sub_idx = rng.integers(0, len(alphabet), n)
    space_del = rng.random(n)
    ins = rng.random(n)
    ins_idx = rng.integers(0, len(alphabet), n)
    space_ins = rng.random(n)

    out: list[str] = []
    for i, c in enumerate(line):
        if events[i] < params.del_rate:
            pass  # deleted
        elif events[i] < params.del_rate + params.sub_rate:
            partner = confusion.get(c)
            if bias[i] < _CONFUSION_BIAS and partner is not None:
                out.append(partner)
            else:
                sub = alphabet[sub_idx[i]]
                if sub == c and len(alphabet) > 1:
                    sub = alphabet[(sub_idx[i] + 1) % len(alphabet)]
                out.append(sub)
        else:
            if c != delimiter or space_del[i] >= params.space_del_rate:
                out.append(c)
        if ins[i] < params.ins_rate:
            out.append(alphabet[ins_idx[i]])
        if (
            i + 1 < n
            and c != delimiter
            and line[i + 1] != delimiter
            and space_ins[i] < params.space_ins_rate
        ):
            out.append(delimiter)
    return "".join(out)


def corpus_alphabet(lines: Sequence[str], delimiter: str = " ") -> str:
    """Distinct non-delimiter characters of a corpus, sorted."""
    chars = set()
    for line in lines:
        chars.update(line)
    chars.discard(delimiter)
    return "".join(sorted(chars))


def _jittered(base: ChannelParams, jitter: float, rng: np.random.Generator) -> ChannelParams:
    if jitter == 0.0:
        return base
    factors = rng.uniform(1.0 - jitter, 1.0 + jitter, size=len(_RATE_FIELDS))
    rates = {
        name: min(1.0, max(0.0, getattr(base, name) * f))
        for name, f in zip(_RATE_FIELDS, factors)
    }
    total = rates["sub_rate"] + rates["del_rate"]
    if total > 1.0:
        rates["sub_rate"] /= total
        rates["del_rate"] /= total
    return replace(base, **rates)


def recognizer_params(cfg: CohortConfig, recognizer: int) -> ChannelParams:
    """The jittered channel of one cohort member (deterministic)."""
    rng = np.random.default_rng(
        np.random.SeedSequence([cfg.master_seed, _JITTER_STREAM, recognizer])
    )
    return _jittered(cfg.base, cfg.per_recognizer_jitter, rng)


def simulate_cohort(
    lines: Sequence[str], cfg: CohortConfig, delimiter: str = " ", threads: int = 1
) -> list[list[str]]:
    """Produce cfg.size corrupted variants of every ground-truth line.

    Returns one hypothesis list per input line, in input order; output is
    independent of the thread count.
    """
    if not lines:
        raise ValueError("empty ground-truth corpus")
    for i, line in enumerate(lines):
        if not line:
            raise ValueError(f"line {i}: cannot corrupt an empty line")
    alphabet = cfg.base.alphabet or corpus_alphabet(lines, delimiter)
    cfg = replace(cfg, base=replace(cfg.base, alphabet=alphabet))
    confusion = build_confusion_table(alphabet, cfg.shared_confusion_seed)
    per_rec = [recognizer_params(cfg, r) for r in range(cfg.size)]

    def one_line(item: tuple[int, str]) -> list[str]:
        i, line = item
        hyps = []
        for r in range(cfg.size):
            rng = np.random.default_rng(
                np.random.SeedSequence([cfg.master_seed, _NOISE_STREAM, i, r])
            )
            hyps.append(corrupt_line(line, per_rec[r], rng, confusion, delimiter))
        return hyps

    return ordered_map(one_line, list(enumerate(lines)), threads)
