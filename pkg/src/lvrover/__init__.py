"""lvrover: combine many raw text-recognizer outputs into one transcription.

The fast path aligns hypotheses by majority word count and votes column
by column with lexicon verification; a classic ROVER baseline, CER/WER
metrics and a synthetic recognizer-cohort simulator round out the
toolkit.
"""

__version__ = "0.1.0"

from .alignment import (
    Hypothesis,
    WordCountVote,
    WordLattice,
    build_lattice,
    estimate_word_count,
    tokenize,
)
from .cohort import (
    ChannelParams,
    CohortConfig,
    build_confusion_table,
    corpus_alphabet,
    corrupt_line,
    recognizer_params,
    simulate_cohort,
)
from .lexicon import Lexicon, NormalizationPolicy, load_lexicon, merge
from .metrics import EvalReport, LineEval, cer, corpus_eval, edit_distance, wer
from .rover import (
    NULL,
    EditCosts,
    WordTransitionNetwork,
    dp_align_into_wtn,
    rover_combine,
)
from .voting import (
    BACKWARD,
    FORWARD,
    ColumnTally,
    CombinationResult,
    TallyEntry,
    brute_force_best_path,
    combine,
    vote_bidirectional,
    vote_directional,
)

__all__ = [
    "BACKWARD",
    "ChannelParams",
    "CohortConfig",
    "ColumnTally",
    "CombinationResult",
    "EditCosts",
    "EvalReport",
    "FORWARD",
    "Hypothesis",
    "Lexicon",
    "LineEval",
    "NULL",
    "NormalizationPolicy",
    "TallyEntry",
    "WordCountVote",
    "WordLattice",
    "WordTransitionNetwork",
    "build_confusion_table",
    "build_lattice",
    "brute_force_best_path",
    "cer",
    "combine",
    "corpus_alphabet",
    "corpus_eval",
    "corrupt_line",
    "dp_align_into_wtn",
    "edit_distance",
    "estimate_word_count",
    "load_lexicon",
    "merge",
    "recognizer_params",
    "rover_combine",
    "simulate_cohort",
    "tokenize",
    "vote_bidirectional",
    "vote_directional",
    "wer",
]
