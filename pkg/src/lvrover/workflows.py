"""Corpus-level workflows shared by the CLI and the acceptance suite.

Covers synthetic corpus generation, batch combination (optionally
thread-parallel with input order preserved), method/lexicon comparison
tables, and wall-clock scaling benchmarks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from statistics import median
from typing import Callable, Optional, Sequence

import numpy as np

from .alignment import tokenize
from .cohort import ChannelParams, CohortConfig, simulate_cohort
from .lexicon import Lexicon, NormalizationPolicy, load_lexicon
from .metrics import EvalReport, corpus_eval
from .parallel import ordered_map
from .rover import rover_combine
from .voting import combine

LOWER = "abcdefghijklmnopqrstuvwxyz"


# ---------------------------------------------------------------------------
# synthetic corpora

def synthetic_vocabulary(
    size: int,
    seed: int = 0,
    min_len: int = 3,
    max_len: int = 9,
    alphabet: str = LOWER,
) -> list[str]:
    """Deterministic pool of distinct random words."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, 2]))
    words: list[str] = []
    seen = set()
    while len(words) < size:
        n = int(rng.integers(min_len, max_len + 1))
        w = "".join(alphabet[int(k)] for k in rng.integers(0, len(alphabet), n))
        if w not in seen:
            seen.add(w)
            words.append(w)
    return words


def synthetic_corpus(
    num_lines: int,
    vocabulary: Sequence[str],
    seed: int = 0,
    min_words: int = 4,
    max_words: int = 9,
    delimiter: str = " ",
) -> list[str]:
    """Random single-spaced lines drawn from a vocabulary."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, 3]))
    lines = []
    for _ in range(num_lines):
        n = int(rng.integers(min_words, max_words + 1))
        picks = rng.integers(0, len(vocabulary), n)
        lines.append(delimiter.join(vocabulary[int(k)] for k in picks))
    return lines


def vocabulary_lexicon(
    lines: Sequence[str],
    policy: Optional[NormalizationPolicy] = None,
    delimiter: str = " ",
) -> Lexicon:
    """Lexicon holding exactly the corpus vocabulary."""
    words = sorted({t for line in lines for t in tokenize(line, delimiter)})
    return load_lexicon(words, policy)


# ---------------------------------------------------------------------------
# batch combination and comparison tables

def lv_texts(
    hyp_sets: Sequence[Sequence[str]],
    lex: Optional[Lexicon] = None,
    delimiter: str = " ",
    collapse: bool = True,
    forward_only: bool = False,
    threads: int = 1,
) -> list[str]:
    return [
        r.text
        for r in ordered_map(
            lambda hyps: combine(hyps, lex, delimiter, collapse, forward_only),
            hyp_sets,
            threads,
        )
    ]


def rover_texts(
    hyp_sets: Sequence[Sequence[str]],
    delimiter: str = " ",
    collapse: bool = True,
    reference: str = "first",
    threads: int = 1,
) -> list[str]:
    return [
        r.text
        for r in ordered_map(
            lambda hyps: rover_combine(hyps, delimiter, collapse, reference),
            hyp_sets,
            threads,
        )
    ]


def per_recognizer_reports(
    truth: Sequence[str], hyp_sets: Sequence[Sequence[str]], threads: int = 1
) -> list[EvalReport]:
    """Corpus evaluation of each cohort member separately."""
    size = len(hyp_sets[0])
    return ordered_map(
        lambda r: corpus_eval([(t, hyps[r]) for t, hyps in zip(truth, hyp_sets)]),
        range(size),
        threads,
    )


@dataclass(frozen=True)
class MethodRow:
    method: str
    cer: float
    wer: float


@dataclass(frozen=True)
class LexiconRow:
    lexicon: str
    size: int
    coverage: float
    cer: float
    wer: float


def compare_methods(
    truth: Sequence[str],
    hyp_sets: Sequence[Sequence[str]],
    lex: Optional[Lexicon],
    delimiter: str = " ",
    collapse: bool = True,
    threads: int = 1,
) -> list[MethodRow]:
    """Best single recognizer vs classic ROVER vs lexicon-verified voting."""
    singles = per_recognizer_reports(truth, hyp_sets, threads)
    best = min(singles, key=lambda rep: rep.cer)
    rows = [MethodRow("best-single", best.cer, best.wer)]
    rv = corpus_eval(list(zip(truth, rover_texts(hyp_sets, delimiter, collapse, threads=threads))))
    rows.append(MethodRow("rover", rv.cer, rv.wer))
    lv = corpus_eval(list(zip(truth, lv_texts(hyp_sets, lex, delimiter, collapse, threads=threads))))
    rows.append(MethodRow("lv-rover", lv.cer, lv.wer))
    return rows


def lexicon_table(
    truth: Sequence[str],
    hyp_sets: Sequence[Sequence[str]],
    lexicons: Sequence[tuple[str, Optional[Lexicon]]],
    delimiter: str = " ",
    collapse: bool = True,
    threads: int = 1,
) -> list[LexiconRow]:
    """Lexicon-verified voting under each lexicon (None = no verification)."""
    rows = []
    for name, lex in lexicons:
        texts = lv_texts(hyp_sets, lex, delimiter, collapse, threads=threads)
        rep = corpus_eval(list(zip(truth, texts)))
        if lex is None or lex.size == 0:
            size, cov = 0, 0.0
        else:
            size, cov = lex.size, lex.coverage(truth, delimiter, collapse)
        rows.append(LexiconRow(name, size, cov, rep.cer, rep.wer))
    return rows


@dataclass(frozen=True)
class PipelineReport:
    methods: list[MethodRow]
    lexicons: list[LexiconRow]
    single_mean_cer: float
    single_min_cer: float


def run_pipeline(
    truth: Sequence[str],
    cfg: CohortConfig,
    lexicons: Sequence[tuple[str, Optional[Lexicon]]],
    delimiter: str = " ",
    collapse: bool = True,
    threads: int = 1,
) -> PipelineReport:
    """simulate -> combine (both ways) -> evaluate, as comparison tables.

    The first real lexicon in `lexicons` feeds the method comparison.
    """
    hyp_sets = simulate_cohort(truth, cfg, delimiter)
    primary = next((lex for _, lex in lexicons if lex is not None), None)
    methods = compare_methods(truth, hyp_sets, primary, delimiter, collapse, threads)
    table = lexicon_table(truth, hyp_sets, lexicons, delimiter, collapse, threads)
    singles = per_recognizer_reports(truth, hyp_sets, threads)
    cers = [rep.cer for rep in singles]
    return PipelineReport(
        methods=methods,
        lexicons=table,
        single_mean_cer=float(np.mean(cers)),
        single_min_cer=float(min(cers)),
    )


# ---------------------------------------------------------------------------
# wall-clock scaling benchmarks

@dataclass(frozen=True)
class BenchRow:
    system: str
    parameter: str
    value: int
    median_seconds: float
    ratio_vs_prev: Optional[float]


def _bench_workload(
    n_recognizers: int, n_words: int, num_lines: int, seed: int, word_len: int = 5
) -> list[list[str]]:
    vocab = synthetic_vocabulary(256, seed=seed, min_len=word_len, max_len=word_len)
    truth = synthetic_corpus(num_lines, vocab, seed=seed, min_words=n_words, max_words=n_words)
    cfg = CohortConfig(
        size=n_recognizers,
        base=ChannelParams(sub_rate=0.02, ins_rate=0.005, del_rate=0.005,
                           space_ins_rate=0.005, space_del_rate=0.005),
        per_recognizer_jitter=0.2,
        master_seed=seed,
    )
    return simulate_cohort(truth, cfg)


def _time_median(fn: Callable[[], None], repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return median(times)


def bench_combine_scaling(
    n_values: Sequence[int] = (64, 128, 256, 512, 1024),
    line_chars: int = 80,
    num_lines: int = 8,
    repeats: int = 5,
    seed: int = 0,
) -> list[BenchRow]:
    """Lexicon-verified combine time as the pool size N grows (linear)."""
    n_words = max(2, line_chars // 6)  # ~5-char words + delimiters
    rows = []
    prev = None
    for n in n_values:
        hyp_sets = _bench_workload(n, n_words, num_lines, seed)

        def run():
            for hyps in hyp_sets:
                combine(hyps)

        run()  # warm-up
        t = _time_median(run, repeats)
        rows.append(BenchRow("lv-rover", "n_recognizers", n,
                             t, None if prev is None else t / prev))
        prev = t
    return rows


def bench_rover_length_scaling(
    word_counts: Sequence[int] = (16, 32, 64),
    n_recognizers: int = 8,
    num_lines: int = 4,
    repeats: int = 5,
    seed: int = 0,
) -> list[BenchRow]:
    """Classic ROVER fold time as line word-length L grows (quadratic)."""
    rows = []
    prev = None
    for n_words in word_counts:
        hyp_sets = _bench_workload(n_recognizers, n_words, num_lines, seed)

        def run():
            for hyps in hyp_sets:
                rover_combine(hyps)

        run()
        t = _time_median(run, repeats)
        rows.append(BenchRow("rover", "ref_words", n_words,
                             t, None if prev is None else t / prev))
        prev = t
    return rows
