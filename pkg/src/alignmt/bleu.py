"""Corpus-level BLEU with modified n-gram precision and brevity penalty.

Tokens are characters by default, matching the character-level translator;
``tokens="space"`` switches to whitespace tokens for external corpora. The
corpus score is unsmoothed: any order with zero matches over the whole
corpus forces a score of 0. ``bleu_sentence`` is a diagnostic variant with
add-one smoothing for n >= 2.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass


@dataclass(frozen=True)
class BleuReport:
    bleu: float
    precisions: tuple[float, ...]
    brevity_penalty: float
    hyp_len: int
    ref_len: int
    max_n: int = 4
    tokens: str = "char"
    smoothing: str = "none"

    def signature(self) -> str:
        return f"bleu|n:{self.max_n}|tok:{self.tokens}|smooth:{self.smoothing}|scale:100"

    def as_dict(self) -> dict:
        return {
            "bleu": self.bleu,
            "precisions": list(self.precisions),
            "brevity_penalty": self.brevity_penalty,
            "hyp_len": self.hyp_len,
            "ref_len": self.ref_len,
            "signature": self.signature(),
        }


def _tokenize(text: str, tokens: str) -> list[str]:
    if tokens == "char":
        return list(text)
    if tokens == "space":
        return text.split()
    raise ValueError(f"unknown tokenization {tokens!r} (want 'char' or 'space')")


def _ngram_counts(toks: list[str], n: int) -> Counter:
    return Counter(tuple(toks[i : i + n]) for i in range(len(toks) - n + 1))


def bleu_corpus(hyps: list[str], refs: list[str], max_n: int = 4, tokens: str = "char") -> BleuReport:
    """Corpus BLEU in [0, 100] over parallel hypothesis/reference lists."""
    if len(hyps) != len(refs):
        raise ValueError(f"length mismatch: {len(hyps)} hypotheses vs {len(refs)} references")
    if not hyps:
        raise ValueError("empty corpus")

    matched = [0] * max_n
    total = [0] * max_n
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hyps, refs):
        h = _tokenize(hyp, tokens)
        r = _tokenize(ref, tokens)
        hyp_len += len(h)
        ref_len += len(r)
        for n in range(1, max_n + 1):
            h_counts = _ngram_counts(h, n)
            if not h_counts:
                continue
            r_counts = _ngram_counts(r, n)
            total[n - 1] += sum(h_counts.values())
            matched[n - 1] += sum(min(c, r_counts[g]) for g, c in h_counts.items())

    precisions = tuple(
        (matched[k] / total[k]) if total[k] > 0 else 0.0 for k in range(max_n)
    )
    if hyp_len == 0:
        bp = 0.0
    elif hyp_len >= ref_len:
        bp = 1.0
    else:
        bp = math.exp(1.0 - ref_len / hyp_len)

    # Orders with no hypothesis n-grams at all (corpus shorter than n) drop
    # out of the geometric mean; an order with slots but zero matches still
    # zeroes the score.
    effective = [k for k in range(max_n) if total[k] > 0]
    if not effective or any(matched[k] == 0 for k in effective) or bp == 0.0:
        score = 0.0
    else:
        score = 100.0 * bp * math.exp(
            sum(math.log(precisions[k]) for k in effective) / len(effective)
        )
    return BleuReport(score, precisions, bp, hyp_len, ref_len, max_n=max_n, tokens=tokens)


def bleu_sentence(hyp: str, ref: str, max_n: int = 4, tokens: str = "char") -> BleuReport:
    """Diagnostic sentence BLEU; add-one smoothing on orders n >= 2."""
    h = _tokenize(hyp, tokens)
    r = _tokenize(ref, tokens)
    precisions = []
    for n in range(1, max_n + 1):
        h_counts = _ngram_counts(h, n)
        r_counts = _ngram_counts(r, n)
        tot = sum(h_counts.values())
        hit = sum(min(c, r_counts[g]) for g, c in h_counts.items())
        if n == 1:
            precisions.append(hit / tot if tot > 0 else 0.0)
        else:
            precisions.append((hit + 1) / (tot + 1) if tot + 1 > 0 else 0.0)
    if len(h) == 0:
        bp = 0.0
    elif len(h) >= len(r):
        bp = 1.0
    else:
        bp = math.exp(1.0 - len(r) / len(h))
    if any(p == 0.0 for p in precisions):
        score = 0.0
    else:
        score = 100.0 * bp * math.exp(sum(math.log(p) for p in precisions) / max_n)
    return BleuReport(
        score, tuple(precisions), bp, len(h), len(r), max_n=max_n, tokens=tokens, smoothing="add1-n2plus"
    )
