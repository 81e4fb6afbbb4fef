"""Shared generators for randomized lattice/lexicon tests."""

from __future__ import annotations

import numpy as np

from lvrover import Lexicon, WordLattice, load_lexicon

VOCAB = [f"w{k}" for k in range(8)]


def random_lattice(rng: np.random.Generator, max_rows: int = 6, max_width: int = 6,
                   vocab_size: int = 8) -> WordLattice:
    n_rows = int(rng.integers(1, max_rows + 1))
    width = int(rng.integers(1, max_width + 1))
    rows = [
        [VOCAB[int(k)] for k in rng.integers(0, vocab_size, width)]
        for _ in range(n_rows)
    ]
    return WordLattice.from_rows(rows)


def random_lexicon(rng: np.random.Generator, vocab_size: int = 8,
                   p_member: float = 0.4) -> Lexicon:
    members = [VOCAB[k] for k in range(vocab_size) if rng.random() < p_member]
    return load_lexicon(members)
