"""Block-level alignment scoring and synthetic gold-aligned benchmark corpora.

Scoring is strict: a predicted block counts only if both of its sentence
ranges exactly equal a gold block's. The generator manufactures passage
pairs whose target side shares a controllable fraction of characters, in
order, with the source side, then merges/splits sentences to plant m:n gold
blocks; it stands in for proofread gold data, which is not distributed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import PassagePair
from .dp_align import AlignConfig, AlignmentBlock, AlignmentResult, align_dp
from .lcs import lcs_len


@dataclass(frozen=True)
class AlignScore:
    precision: float
    recall: float
    f1: float

    def as_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


def prf1(pred: AlignmentResult, gold: AlignmentResult) -> AlignScore:
    """Exact-match block precision/recall/F1 for one passage pair."""
    pred_keys = {b.key() for b in pred.blocks}
    gold_keys = {b.key() for b in gold.blocks}
    correct = len(pred_keys & gold_keys)
    p = correct / len(pred_keys) if pred_keys else 0.0
    r = correct / len(gold_keys) if gold_keys else 0.0
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return AlignScore(p, r, f1)


def mean_scores(scores: list[AlignScore]) -> AlignScore:
    if not scores:
        return AlignScore(0.0, 0.0, 0.0)
    return AlignScore(
        float(np.mean([s.precision for s in scores])),
        float(np.mean([s.recall for s in scores])),
        float(np.mean([s.f1 for s in scores])),
    )


def evaluate_aligner(corpus, aligner=None, cfg: AlignConfig | None = None) -> AlignScore:
    """Mean per-passage P/R/F1 of an aligner over a gold-aligned corpus."""
    cfg = cfg or AlignConfig()
    if aligner is None:
        aligner = align_dp
    scores = []
    for pair, gold in corpus:
        scores.append(prf1(aligner(pair, cfg), gold))
    return mean_scores(scores)


_INNER_DELIM = "，"  # ，
_FINAL_DELIM = "。"  # 。
_FLIP_DELIM = "！"  # ！


def synth_corpus(
    n_passages: int,
    overlap: float = 0.7,
    merge_rate: float = 0.0,
    split_rate: float = 0.0,
    punct_flip_rate: float = 0.0,
    seed: int = 0,
    units_per_passage: tuple[int, int] = (4, 9),
    unit_len: tuple[int, int] = (6, 12),
    alphabet_size: int = 400,
    insert_rate: float = 0.25,
) -> list[tuple[PassagePair, AlignmentResult]]:
    """Generate passage pairs with known gold alignments.

    Each passage is a sequence of translation units. A unit's target text
    keeps each source character with probability ``overlap`` (replacing it
    otherwise) and may gain inserted characters. A unit becomes a 2:1 gold
    block with probability ``merge_rate`` (source split in two), a 1:2 block
    with probability ``split_rate`` (target split in two), else 1:1. With
    probability ``punct_flip_rate`` the source-side final delimiter flips to
    an exclamation mark while the target keeps the period, imitating
    clause-final punctuation drift. Deterministic per seed.
    """
    if not (0.0 < overlap <= 1.0):
        raise ValueError("overlap must be in (0, 1]")
    for name, rate in (("merge_rate", merge_rate), ("split_rate", split_rate),
                       ("punct_flip_rate", punct_flip_rate), ("insert_rate", insert_rate)):
        if not (0.0 <= rate < 1.0):
            raise ValueError(f"{name} must be in [0, 1)")
    if n_passages < 1 or alphabet_size < 2:
        raise ValueError("need at least one passage and a two-character alphabet")

    rng = np.random.default_rng(seed)
    alphabet = [chr(0x4E00 + k) for k in range(alphabet_size)]

    def rand_chars(k: int) -> list[str]:
        return [alphabet[i] for i in rng.integers(0, alphabet_size, size=k)]

    corpus = []
    for idx in range(n_passages):
        n_units = int(rng.integers(units_per_passage[0], units_per_passage[1] + 1))
        src_sents: list[str] = []
        tgt_sents: list[str] = []
        blocks: list[AlignmentBlock] = []
        for _ in range(n_units):
            length = int(rng.integers(unit_len[0], unit_len[1] + 1))
            src_core = rand_chars(length)
            tgt_core: list[str] = []
            for ch in src_core:
                if rng.random() < overlap:
                    tgt_core.append(ch)
                else:
                    tgt_core.append(alphabet[int(rng.integers(0, alphabet_size))])
                if rng.random() < insert_rate:
                    tgt_core.append(alphabet[int(rng.integers(0, alphabet_size))])

            src_final = _FLIP_DELIM if rng.random() < punct_flip_rate else _FINAL_DELIM
            u = rng.random()
            if u < merge_rate and len(src_core) >= 2:
                cut = int(rng.integers(1, len(src_core)))
                src_pieces = ["".join(src_core[:cut]) + _INNER_DELIM, "".join(src_core[cut:]) + src_final]
                tgt_pieces = ["".join(tgt_core) + _FINAL_DELIM]
            elif u < merge_rate + split_rate and len(tgt_core) >= 2:
                cut = int(rng.integers(1, len(tgt_core)))
                src_pieces = ["".join(src_core) + src_final]
                tgt_pieces = ["".join(tgt_core[:cut]) + _INNER_DELIM, "".join(tgt_core[cut:]) + _FINAL_DELIM]
            else:
                src_pieces = ["".join(src_core) + src_final]
                tgt_pieces = ["".join(tgt_core) + _FINAL_DELIM]

            i1 = len(src_sents) + 1
            j1 = len(tgt_sents) + 1
            src_sents.extend(src_pieces)
            tgt_sents.extend(tgt_pieces)
            score = lcs_len("".join(src_pieces), "".join(tgt_pieces))
            blocks.append(
                AlignmentBlock((i1, len(src_sents)), (j1, len(tgt_sents)), score)
            )
        pair = PassagePair(f"synth-{seed}-{idx}", src_sents, tgt_sents)
        gold = AlignmentResult(blocks, sum(b.score for b in blocks))
        corpus.append((pair, gold))
    return corpus


def benchmark_rows(
    overlaps,
    seeds,
    n_passages: int = 10,
    cfg: AlignConfig | None = None,
    aligner=None,
    **noise,
) -> list[dict]:
    """Grid benchmark rows (overlap, seed, precision, recall, f1) for CSV export."""
    rows = []
    for overlap in overlaps:
        for seed in seeds:
            corpus = synth_corpus(n_passages, overlap=overlap, seed=seed, **noise)
            score = evaluate_aligner(corpus, aligner=aligner, cfg=cfg)
            rows.append(
                {
                    "overlap": overlap,
                    "seed": seed,
                    "precision": score.precision,
                    "recall": score.recall,
                    "f1": score.f1,
                }
            )
    return rows
