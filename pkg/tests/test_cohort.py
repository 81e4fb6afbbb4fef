"""Noise-channel corruption and cohort simulation."""

from __future__ import annotations

from dataclasses import replace

import numpy as np
import pytest

from lvrover import (
    ChannelParams,
    CohortConfig,
    build_confusion_table,
    cer,
    corpus_alphabet,
    corpus_eval,
    corrupt_line,
    recognizer_params,
    simulate_cohort,
)

ABC = "abcdefghijklmnopqrstuvwxyz"


def _rng(seed=0):
    return np.random.default_rng(seed)


def test_identity_channel():
    params = ChannelParams(alphabet=ABC)
    assert corrupt_line("le chat dort", params, _rng()) == "le chat dort"


def test_full_deletion_empties_line():
    params = ChannelParams(del_rate=1.0, alphabet=ABC)
    assert corrupt_line("le chat dort", params, _rng()) == ""


def test_substitution_fraction_near_rate():
    params = ChannelParams(sub_rate=0.1, alphabet=ABC)
    rng = _rng(99)
    line = "".join(ABC[int(k)] for k in rng.integers(0, 26, 10_000))
    noisy = corrupt_line(line, params, _rng(7))
    assert len(noisy) == len(line)  # no ins/del at these settings
    frac = sum(a != b for a, b in zip(line, noisy)) / len(line)
    assert 0.08 <= frac <= 0.12


def test_substitution_always_changes_character():
    params = ChannelParams(sub_rate=1.0, alphabet=ABC)
    line = "ababab"
    noisy = corrupt_line(line, params, _rng(3))
    assert all(a != b for a, b in zip(line, noisy))


def test_corrupt_requires_alphabet_and_nonempty_line():
    with pytest.raises(ValueError, match="alphabet"):
        corrupt_line("abc", ChannelParams(), _rng())
    with pytest.raises(ValueError, match="empty line"):
        corrupt_line("", ChannelParams(alphabet=ABC), _rng())


def test_alphabet_must_exclude_delimiter():
    with pytest.raises(ValueError, match="delimiter"):
        corrupt_line("abc", ChannelParams(alphabet="ab "), _rng())


def test_rate_validation():
    with pytest.raises(ValueError, match="sub_rate"):
        ChannelParams(sub_rate=1.5)
    with pytest.raises(ValueError, match="exceed 1"):
        ChannelParams(sub_rate=0.7, del_rate=0.7)
    with pytest.raises(ValueError, match="non-empty"):
        ChannelParams(alphabet="")


def test_confusion_table_partner_differs():
    table = build_confusion_table(ABC, seed=1)
    assert set(table) == set(ABC)
    assert all(v != k for k, v in table.items())
    assert build_confusion_table(ABC, seed=1) == table


def test_corpus_alphabet():
    assert corpus_alphabet(["ba c", "ad"]) == "abcd"


def test_simulate_identity_single_recognizer():
    cfg = CohortConfig(size=1, base=ChannelParams())
    lines = ["un deux trois", "quatre"]
    assert simulate_cohort(lines, cfg) == [["un deux trois"], ["quatre"]]


def test_simulate_deterministic():
    cfg = CohortConfig(
        size=8,
        base=ChannelParams(sub_rate=0.08, ins_rate=0.02, del_rate=0.02,
                           space_ins_rate=0.03, space_del_rate=0.03),
        per_recognizer_jitter=0.4,
        master_seed=1234,
    )
    lines = ["le petit chat dort", "la maison est bleue"]
    assert simulate_cohort(lines, cfg) == simulate_cohort(lines, cfg)
    other = replace(cfg, master_seed=1235)
    assert simulate_cohort(lines, other) != simulate_cohort(lines, cfg)


def test_simulate_rejects_bad_corpus():
    cfg = CohortConfig(size=2, base=ChannelParams())
    with pytest.raises(ValueError, match="empty ground-truth"):
        simulate_cohort([], cfg)
    with pytest.raises(ValueError, match="line 1"):
        simulate_cohort(["ok", ""], cfg)


def test_config_validation():
    with pytest.raises(ValueError, match="size"):
        CohortConfig(size=0, base=ChannelParams())
    with pytest.raises(ValueError, match="jitter"):
        CohortConfig(size=1, base=ChannelParams(), per_recognizer_jitter=-0.1)
    with pytest.raises(ValueError, match="seeds"):
        CohortConfig(size=1, base=ChannelParams(), master_seed=-5)


def test_jitter_spreads_rates_and_preserves_validity():
    cfg = CohortConfig(
        size=50,
        base=ChannelParams(sub_rate=0.6, del_rate=0.38, alphabet=ABC),
        per_recognizer_jitter=0.5,
        master_seed=9,
    )
    rates = [recognizer_params(cfg, r) for r in range(cfg.size)]
    subs = {p.sub_rate for p in rates}
    assert len(subs) > 1
    for p in rates:
        assert 0.0 <= p.sub_rate <= 1.0
        assert p.sub_rate + p.del_rate <= 1.0 + 1e-12


def test_cohort_mean_cer_tracks_target():
    # Base rates tuned for roughly 10% character error; the cohort mean
    # must land inside the [0.07, 0.13] band.
    vocab = ["maison", "chat", "petit", "bleu", "dort", "rue", "antre", "velo"]
    rng = _rng(5)
    lines = [
        " ".join(vocab[int(k)] for k in rng.integers(0, len(vocab), 6))
        for _ in range(60)
    ]
    cfg = CohortConfig(
        size=100,
        base=ChannelParams(sub_rate=0.055, ins_rate=0.012, del_rate=0.012,
                           space_ins_rate=0.03, space_del_rate=0.03),
        per_recognizer_jitter=0.3,
        master_seed=77,
    )
    sets = simulate_cohort(lines, cfg)
    cers = []
    for r in range(cfg.size):
        rep = corpus_eval([(t, hyps[r]) for t, hyps in zip(lines, sets)])
        cers.append(rep.cer)
    mean = float(np.mean(cers))
    assert 0.07 <= mean <= 0.13


def test_increasing_sub_rate_does_not_decrease_cer():
    vocab = ["alpha", "beta", "gamma", "delta", "omega"]
    rng = _rng(31)
    lines = [
        " ".join(vocab[int(k)] for k in rng.integers(0, len(vocab), 5))
        for _ in range(120)
    ]
    measured = []
    for sub in (0.02, 0.06, 0.12, 0.2):
        cfg = CohortConfig(
            size=3,
            base=ChannelParams(sub_rate=sub, alphabet=ABC),
            master_seed=13,
        )
        sets = simulate_cohort(lines, cfg)
        rep = corpus_eval(
            [(t, h) for t, hyps in zip(lines, sets) for h in hyps]
        )
        measured.append(rep.cer)
    for lo, hi in zip(measured, measured[1:]):
        assert hi >= lo - 0.005  # small statistical slack
