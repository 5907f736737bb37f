"""Supervised log-linear block scorer: length, shape prior, co-occurrence.

The model scores a candidate block with a weighted sum of three features:

  * ``f_len``  - log-density of the target/source character-length ratio
                 under a normal fitted on gold blocks;
  * ``f_pat``  - log prior of the block shape (a, b), add-one smoothed;
  * ``f_cooc`` - LCS length of the joined sides, normalized by the longer
                 side, i.e. a [0, 1] common-character score.

Weights are fitted by batch-gradient logistic regression separating gold
blocks from sampled competing blocks anchored at the same start positions.
Decoding reuses the alignment DP skeleton with this scorer.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import PassagePair
from .dp_align import AlignConfig, AlignmentResult, align_with_scorer
from .errors import FormatError
from .lcs import BlockLcsCache, lcs_len

MODEL_FORMAT = "alignmt/loglinear-model@1"

_VAR_FLOOR = 1e-6


@dataclass(frozen=True)
class FeatureVector:
    f_len: float
    f_pat: float
    f_cooc: float

    def as_array(self) -> np.ndarray:
        return np.array([self.f_len, self.f_pat, self.f_cooc], dtype=np.float64)


@dataclass
class LogLinearModel:
    weights: np.ndarray  # (3,) for (f_len, f_pat, f_cooc)
    pattern_log_prior: dict[tuple[int, int], float]
    length_mean: float
    length_var: float
    max_group: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "format": MODEL_FORMAT,
                "weights": [float(w) for w in self.weights],
                "pattern_log_prior": [
                    [a, b, lp] for (a, b), lp in sorted(self.pattern_log_prior.items())
                ],
                "length_mean": self.length_mean,
                "length_var": self.length_var,
                "max_group": self.max_group,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "LogLinearModel":
        obj = json.loads(text)
        if obj.get("format") != MODEL_FORMAT:
            raise FormatError(f"unsupported model format tag {obj.get('format')!r}")
        return cls(
            weights=np.array(obj["weights"], dtype=np.float64),
            pattern_log_prior={(int(a), int(b)): float(lp) for a, b, lp in obj["pattern_log_prior"]},
            length_mean=float(obj["length_mean"]),
            length_var=float(obj["length_var"]),
            max_group=int(obj["max_group"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "LogLinearModel":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def _log_normal_density(x: float, mean: float, var: float) -> float:
    return -0.5 * math.log(2.0 * math.pi * var) - (x - mean) ** 2 / (2.0 * var)


def extract_features(
    src_group: str,
    tgt_group: str,
    shape: tuple[int, int],
    model: LogLinearModel,
) -> FeatureVector:
    """Features of one candidate block given the model's statistics."""
    if len(src_group) == 0:
        raise ValueError("source group must be non-empty")
    ratio = len(tgt_group) / len(src_group)
    f_len = _log_normal_density(ratio, model.length_mean, model.length_var)
    floor = math.log(_VAR_FLOOR)
    f_pat = model.pattern_log_prior.get(shape, floor)
    f_cooc = lcs_len(src_group, tgt_group) / max(len(src_group), len(tgt_group))
    return FeatureVector(f_len, f_pat, f_cooc)


def _gold_block_texts(pair: PassagePair, gold: AlignmentResult):
    for block in gold.blocks:
        (i1, i2), (j1, j2) = block.src_range, block.tgt_range
        if i2 < i1 or j2 < j1:
            continue
        yield (
            "".join(pair.src_sentences[i1 - 1 : i2]),
            "".join(pair.tgt_sentences[j1 - 1 : j2]),
            block,
        )


def train_loglinear(
    gold: list[tuple[PassagePair, AlignmentResult]],
    cfg: AlignConfig | None = None,
    negatives_per_block: int = 10,
    lr: float = 0.1,
    epochs: int = 20000,
    l2: float = 1e-4,
    seed: int = 0,
) -> LogLinearModel:
    """Fit length stats, shape prior and feature weights from gold alignments.

    Negatives are competing blocks anchored at each gold block's frontier
    (other shapes from the same start, or the gold shape restarted one
    sentence late on either side). The classifier is fitted by batch
    gradient ascent with a fixed learning rate and L2 penalty; the epoch
    count is sized so the fit actually converges on corpora of a few
    thousand blocks (it is a 3-parameter model, so this stays fast). The
    whole procedure is deterministic for a given seed.
    """
    cfg = cfg or AlignConfig()
    if not gold:
        raise ValueError("gold corpus is empty")

    ratios = []
    shape_counts: dict[tuple[int, int], int] = {}
    gold_items = []
    for pair, result in gold:
        for src_text, tgt_text, block in _gold_block_texts(pair, result):
            ratios.append(len(tgt_text) / len(src_text))
            shape_counts[block.shape] = shape_counts.get(block.shape, 0) + 1
            gold_items.append((pair, block))
    if len(gold_items) < 2:
        raise ValueError("need at least 2 gold blocks to fit the model")

    mean = float(np.mean(ratios))
    var = max(float(np.var(ratios)), _VAR_FLOOR)

    grid = [(a, b) for a in range(1, cfg.max_group + 1) for b in range(1, cfg.max_group + 1)]
    total = sum(shape_counts.get(s, 0) for s in grid) + len(grid)
    pattern_log_prior = {
        s: math.log((shape_counts.get(s, 0) + 1) / total) for s in grid
    }

    model = LogLinearModel(
        weights=np.zeros(3, dtype=np.float64),
        pattern_log_prior=pattern_log_prior,
        length_mean=mean,
        length_var=var,
        max_group=cfg.max_group,
    )

    rng = np.random.default_rng(seed)
    feats = []
    labels = []
    for pair, block in gold_items:
        n, m = len(pair.src_sentences), len(pair.tgt_sentences)
        (i1, _), (j1, _) = block.src_range, block.tgt_range
        gold_shape = block.shape
        src_text = "".join(pair.src_sentences[i1 - 1 : i1 - 1 + gold_shape[0]])
        tgt_text = "".join(pair.tgt_sentences[j1 - 1 : j1 - 1 + gold_shape[1]])
        feats.append(extract_features(src_text, tgt_text, gold_shape, model).as_array())
        labels.append(1.0)
        # Rivals at the same frontier: other shapes from the gold start, plus
        # the gold shape restarted one sentence late on either side.
        rivals = [
            (i1, j1, a, b)
            for (a, b) in grid
            if (a, b) != gold_shape and i1 + a - 1 <= n and j1 + b - 1 <= m
        ]
        ga, gb = gold_shape
        for di, dj in ((1, 0), (0, 1)):
            si, sj = i1 + di, j1 + dj
            if si + ga - 1 <= n and sj + gb - 1 <= m:
                rivals.append((si, sj, ga, gb))
        if len(rivals) > negatives_per_block:
            picked = rng.choice(len(rivals), size=negatives_per_block, replace=False)
            rivals = [rivals[k] for k in sorted(picked)]
        for si, sj, a, b in rivals:
            s_text = "".join(pair.src_sentences[si - 1 : si - 1 + a])
            t_text = "".join(pair.tgt_sentences[sj - 1 : sj - 1 + b])
            feats.append(extract_features(s_text, t_text, (a, b), model).as_array())
            labels.append(0.0)

    x = np.stack(feats)
    y = np.array(labels)
    w = np.zeros(3, dtype=np.float64)
    for _ in range(epochs):
        p = 1.0 / (1.0 + np.exp(-np.clip(x @ w, -60.0, 60.0)))
        grad = x.T @ (y - p) / len(y) - l2 * w
        w += lr * grad
    model.weights = w
    return model


def block_scorer(pair: PassagePair, model: LogLinearModel):
    """Block score function (1-based inclusive ranges) for the DP decoder."""
    cache = BlockLcsCache(pair.src_sentences, pair.tgt_sentences)
    floor = math.log(_VAR_FLOOR)

    def score(i1: int, i2: int, j1: int, j2: int) -> float:
        src_text = cache.src_text(i1, i2)
        tgt_text = cache.tgt_text(j1, j2)
        ratio = len(tgt_text) / len(src_text)
        f_len = _log_normal_density(ratio, model.length_mean, model.length_var)
        f_pat = model.pattern_log_prior.get((i2 - i1 + 1, j2 - j1 + 1), floor)
        f_cooc = cache.block_len(i1, i2, j1, j2) / max(len(src_text), len(tgt_text))
        w = model.weights
        return float(w[0] * f_len + w[1] * f_pat + w[2] * f_cooc)

    return score


def align_loglinear(
    pair: PassagePair, model: LogLinearModel, cfg: AlignConfig | None = None
) -> AlignmentResult:
    """Decode with the log-linear block scorer on the shared DP skeleton."""
    cfg = cfg or AlignConfig(max_group=model.max_group)
    return align_with_scorer(pair, cfg, block_scorer(pair, model))
