"""alignmt: sentence alignment and desk-scale character-level translation.

Builds sentence-aligned parallel corpora out of passage-aligned text whose
two sides share characters in order, and trains/evaluates a character-level
encoder-decoder translator with local attention and a copy mechanism on the
result.
"""

__version__ = "0.1.0"

from .align_eval import AlignScore, evaluate_aligner, prf1, synth_corpus
from .bleu import BleuReport, bleu_corpus, bleu_sentence
from .corpus import (
    DEFAULT_DELIMITERS,
    PassagePair,
    SentencePair,
    Vocab,
    load_passage_pairs,
    load_sentence_pairs,
    save_passage_pairs,
    save_sentence_pairs,
    split_dataset,
    split_sentences,
    vocab_stats,
)
from .dp_align import (
    AlignConfig,
    AlignmentBlock,
    AlignmentResult,
    align_bruteforce,
    align_corpus,
    align_dp,
    align_with_scorer,
)
from .errors import AlignmentError, FormatError, NumericError
from .lcs import BlockLcsCache, lcs_block, lcs_len
from .loglinear import (
    FeatureVector,
    LogLinearModel,
    align_loglinear,
    extract_features,
    train_loglinear,
)
from .nmt import (
    DecodeState,
    Example,
    Seq2SeqConfig,
    TrainResult,
    decode_step,
    encode,
    grad_check,
    init_params,
    load_checkpoint,
    local_attention,
    loss,
    make_example,
    save_checkpoint,
    train,
    translate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
