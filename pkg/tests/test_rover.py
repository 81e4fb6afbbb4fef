"""Classic ROVER baseline: WTN folding and frequency voting."""

from __future__ import annotations

import numpy as np
import pytest

from lvrover import (
    NULL,
    EditCosts,
    Lexicon,
    WordTransitionNetwork,
    combine,
    dp_align_into_wtn,
    rover_combine,
)


def fold_all(lines):
    wtn = WordTransitionNetwork.from_tokens(lines[0].split())
    for line in lines[1:]:
        wtn = dp_align_into_wtn(wtn, line.split())
    return wtn


def test_fold_identical_sequence():
    wtn = fold_all(["a b", "a b"])
    assert [dict(s) for s in wtn.slots] == [{"a": 2}, {"b": 2}]
    assert wtn.num_aligned == 2


def test_fold_insertion_creates_null_padded_slot():
    wtn = fold_all(["a b", "a x b"])
    assert [dict(s) for s in wtn.slots] == [{"a": 2}, {NULL: 1, "x": 1}, {"b": 2}]


def test_fold_deletion_adds_null():
    wtn = fold_all(["a b", "a"])
    assert [dict(s) for s in wtn.slots] == [{"a": 2}, {"b": 1, NULL: 1}]


def test_fold_substitution_merges_into_slot():
    wtn = fold_all(["a b c", "a x c"])
    assert [dict(s) for s in wtn.slots] == [{"a": 2}, {"b": 1, "x": 1}, {"c": 2}]


def test_frequency_conservation_after_every_fold():
    rng = np.random.default_rng(5)
    vocab = ["u", "v", "w", "x"]
    lines = [
        " ".join(vocab[int(k)] for k in rng.integers(0, 4, rng.integers(1, 7)))
        for _ in range(12)
    ]
    wtn = WordTransitionNetwork.from_tokens(lines[0].split())
    for i, line in enumerate(lines[1:], 2):
        wtn = dp_align_into_wtn(wtn, line.split())
        assert all(sum(s.values()) == i for s in wtn.slots)
        assert wtn.num_aligned == i


def test_combine_identical():
    res = rover_combine(["le chat dort"] * 3)
    assert res.text == "le chat dort"
    assert res.verified_count is None
    assert res.direction is None


def test_combine_majority_substitution():
    assert rover_combine(["a b c", "a x c", "a b c"]).text == "a b c"


def test_combine_null_loses_vote():
    assert rover_combine(["a", "a b", "a b"]).text == "a b"


def test_combine_null_wins_vote():
    assert rover_combine(["a", "a", "a b"]).text == "a"


def test_empty_pool_rejected():
    with pytest.raises(ValueError, match="empty"):
        rover_combine([])


def test_empty_hypothesis_folds_as_all_deletions():
    res = rover_combine(["a b", "a b", ""])
    assert res.text == "a b"


def test_reference_longest():
    hs = ["b", "a b c", "x b c"]
    res = rover_combine(hs, reference="longest")
    assert res.text == "a b c"


def test_unknown_reference_rejected():
    with pytest.raises(ValueError, match="reference"):
        rover_combine(["a"], reference="shortest")


def test_determinism_for_fixed_order():
    hs = ["a b c d", "a x c", "b c d", "a b d d"]
    assert rover_combine(hs).text == rover_combine(hs).text


def test_substitution_only_cohort_equals_position_majority():
    # Equal word counts, substitutions only, with a strict per-column
    # majority: slot voting reduces to per-position majority and matches
    # lexicon-free lattice voting (a >N/2 winner per column forces
    # adjacency and rules out tie-break differences).
    rng = np.random.default_rng(17)
    vocab = ["aa", "bb", "cc"]
    for _ in range(30):
        width = int(rng.integers(1, 6))
        n = int(rng.integers(3, 9))
        majority = [vocab[int(k)] for k in rng.integers(0, 3, width)]
        rows = []
        for _ in range(n):
            row = list(majority)
            if rng.random() < 0.7:  # minority rows corrupt some positions
                for j in range(width):
                    if rng.random() < 0.3:
                        row[j] = vocab[int(rng.integers(0, 3))]
            rows.append(row)
        counts_ok = all(
            [r[j] for r in rows].count(majority[j]) * 2 > n for j in range(width)
        )
        if not counts_ok:
            continue
        lines = [" ".join(r) for r in rows]
        rv = rover_combine(lines)
        lv = combine(lines, Lexicon.empty())
        assert rv.tokens == tuple(majority)
        assert lv.tokens == tuple(majority)
        assert lv.fallback_events == 0


def test_edit_costs_validation():
    with pytest.raises(ValueError):
        EditCosts(substitution=-1)
    with pytest.raises(ValueError):
        EditCosts(match=1.0, substitution=1.0)
