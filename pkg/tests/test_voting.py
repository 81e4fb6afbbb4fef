"""Lexicon-verified lattice voting, checked against the exhaustive oracle."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from conftest import random_lattice, random_lexicon
from lvrover import (
    BACKWARD,
    FORWARD,
    Lexicon,
    WordCountVote,
    WordLattice,
    brute_force_best_path,
    combine,
    load_lexicon,
    tokenize,
    vote_bidirectional,
    vote_directional,
)


def test_forward_vote_prefers_verified_words():
    lattice = WordLattice.from_rows([["le", "chat"], ["le", "chal"]])
    lex = load_lexicon(["le", "chat"])
    res = vote_directional(lattice, lex, FORWARD)
    assert res.tokens == ("le", "chat")
    assert res.verified_count == 2
    _, best = brute_force_best_path(lattice, lex)
    assert res.verified_count == best


def test_single_candidate_per_column():
    lattice = WordLattice.from_rows([["a", "b"]] * 3)
    res = vote_bidirectional(lattice, Lexicon.empty())
    assert res.tokens == ("a", "b")


def test_oov_frequency_voting_with_adjacency():
    lattice = WordLattice.from_rows([["a", "x"], ["a", "y"], ["b", "y"]])
    res = vote_directional(lattice, Lexicon.empty(), FORWARD)
    assert res.tokens == ("a", "y")
    assert res.verified_count == 0


def test_in_lexicon_pool_outranks_more_frequent_oov():
    # "aa" (freq 1, verified) must beat "cc" (freq 2, OOV) at column 0.
    lattice = WordLattice.from_rows([["aa", "b"], ["cc", "b"], ["cc", "d"]])
    lex = load_lexicon(["aa", "d"])
    fwd = vote_directional(lattice, lex, FORWARD)
    assert fwd.tokens == ("aa", "b")
    assert fwd.verified_count == 1
    bwd = vote_directional(lattice, lex, BACKWARD)
    assert bwd.tokens == ("cc", "d")
    assert bwd.verified_count == 1
    both = vote_bidirectional(lattice, lex)
    assert both.direction == FORWARD
    assert both.tokens == ("aa", "b")


def test_backward_wins_on_verified_count():
    # Forward gets greedily trapped on the frequent verified "a" whose
    # only successor is OOV; backward recovers the fully verified row.
    lattice = WordLattice.from_rows([["a", "x"], ["a", "x"], ["b", "y"]])
    lex = load_lexicon(["a", "b", "y"])
    fwd = vote_directional(lattice, lex, FORWARD)
    assert fwd.tokens == ("a", "x")
    assert fwd.verified_count == 1
    res = vote_bidirectional(lattice, lex)
    assert res.direction == BACKWARD
    assert res.tokens == ("b", "y")
    assert res.verified_count == 2


def test_combine_accented_example():
    lex = load_lexicon(["reçu", "le"])
    res = combine(["reçu le 4", "recu le 4", "reçu le 4"], lex)
    assert res.text == "reçu le 4"
    assert res.verified_count == 2


def test_combine_identity_on_identical_inputs():
    for n in (1, 3, 100):
        res = combine(["la maison bleue"] * n, load_lexicon(["la"]))
        assert res.text == "la maison bleue"


def test_combine_single_hypothesis_no_lexicon():
    res = combine(["un chat dort"])
    assert res.text == "un chat dort"
    assert res.verified_count == 0


def test_combine_all_empty_hypotheses():
    res = combine(["", "", ""])
    assert res.text == ""
    assert res.tokens == ()
    assert res.vote.nb_words == 0


def test_empty_lattice_rejected():
    vote = WordCountVote(histogram={}, nb_words=0, retained_ids=())
    empty = WordLattice(rows=(), row_ids=(), vote=vote)
    with pytest.raises(ValueError, match="empty lattice"):
        vote_directional(empty, Lexicon.empty())
    with pytest.raises(ValueError, match="empty lattice"):
        brute_force_best_path(empty, Lexicon.empty())


def test_result_text_round_trips():
    lattice = WordLattice.from_rows([["a", "b", "c"], ["a", "d", "c"]])
    res = vote_bidirectional(lattice, Lexicon.empty())
    assert tokenize(res.text) == list(res.tokens)


def test_oracle_single_cell():
    lattice = WordLattice.from_rows([["x"]])
    assert brute_force_best_path(lattice, Lexicon.empty()) == (["x"], 0)
    assert brute_force_best_path(lattice, load_lexicon(["x"])) == (["x"], 1)


def test_oracle_refuses_oversized_lattices():
    wide = WordLattice.from_rows([["w"] * 9])
    with pytest.raises(ValueError, match="oracle misuse"):
        brute_force_best_path(wide, Lexicon.empty())
    fat = WordLattice.from_rows([[f"u{i}"] for i in range(9)])
    with pytest.raises(ValueError, match="oracle misuse"):
        brute_force_best_path(fat, Lexicon.empty())


def test_greedy_can_be_beaten_by_oracle():
    # Frequency greed at column 0 forfeits three verified words; neither
    # direction escapes, but the exhaustive search does.
    rows = [
        ["a", "x", "x", "f"],
        ["a", "x", "x", "f"],
        ["b", "y", "z", "g"],
    ]
    lattice = WordLattice.from_rows(rows)
    lex = load_lexicon(["a", "f", "b", "y", "z", "g"])
    res = vote_bidirectional(lattice, lex)
    tokens, best = brute_force_best_path(lattice, lex)
    assert res.verified_count == 2
    assert best == 4
    assert tokens == ["b", "y", "z", "g"]
    assert res.verified_count <= best


def _check_invariants(lattice, res):
    assert len(res.tokens) == lattice.vote.nb_words
    for j, tok in enumerate(res.tokens):
        assert tok in lattice.column(j), "token must occur at its column"
    if res.fallback_events == 0:
        pairs = {
            (row[j], row[j + 1]) for row in lattice.rows for j in range(len(row) - 1)
        }
        for j in range(len(res.tokens) - 1):
            assert (res.tokens[j], res.tokens[j + 1]) in pairs


def test_randomized_against_oracle():
    rng = np.random.default_rng(2024)
    for _ in range(400):
        lattice = random_lattice(rng)
        lex = random_lexicon(rng)
        res = vote_bidirectional(lattice, lex)
        _, best = brute_force_best_path(lattice, lex)
        assert res.verified_count <= best
        _check_invariants(lattice, res)
        assert res.fallback_events == 0  # unreachable on rectangular lattices


def test_lexicon_noop_extension_leaves_output_identical():
    rng = np.random.default_rng(7)
    for _ in range(50):
        lattice = random_lattice(rng)
        lex = random_lexicon(rng)
        padded = lex.merge(load_lexicon([f"zz{i}" for i in range(40)]))
        a = vote_bidirectional(lattice, lex)
        b = vote_bidirectional(lattice, padded)
        assert a.tokens == b.tokens
        assert a.verified_count == b.verified_count


def test_empty_lexicon_means_zero_verified():
    rng = np.random.default_rng(11)
    for _ in range(30):
        res = vote_bidirectional(random_lattice(rng), Lexicon.empty())
        assert res.verified_count == 0
        assert res.direction == FORWARD


def test_unknown_direction_rejected():
    lattice = WordLattice.from_rows([["a"]])
    with pytest.raises(ValueError, match="direction"):
        vote_directional(lattice, Lexicon.empty(), "sideways")


def test_deterministic_across_threads():
    rng = np.random.default_rng(3)
    cases = [(random_lattice(rng), random_lexicon(rng)) for _ in range(64)]
    serial = [vote_bidirectional(l, x).tokens for l, x in cases]
    with ThreadPoolExecutor(max_workers=8) as pool:
        threaded = list(pool.map(lambda c: vote_bidirectional(*c).tokens, cases))
    assert serial == threaded
