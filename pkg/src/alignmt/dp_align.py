"""Unsupervised sentence alignment by maximizing summed block LCS lengths.

A passage pair is tiled by monotone, contiguous blocks of up to ``max_group``
sentences per side; the tiling that maximizes the total LCS length between
the joined sides of each block wins. The recurrence over block end positions
is solved as a suffix dynamic program with memoized block scores.

Ties are broken deterministically: among equal total scores prefer the tiling
with more blocks, then the lexicographically earliest sequence of block
boundaries. Inside the DP this reduces to scanning block shapes (a, b) in
ascending order and keeping the first candidate that is not strictly beaten
on (score, block count).

``align_bruteforce`` enumerates every admissible tiling and applies the same
ordering globally; it exists purely to cross-check ``align_dp`` on small
instances and is exponential by design.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import PassagePair, SentencePair
from .errors import AlignmentError
from .lcs import BlockLcsCache, lcs_len

_NEG = float("-inf")


@dataclass(frozen=True)
class AlignmentBlock:
    """One matched group: 1-based inclusive sentence ranges plus its score.

    A null block (allowed only when configured) has an empty side, encoded as
    a range whose end is one less than its start.
    """

    src_range: tuple[int, int]
    tgt_range: tuple[int, int]
    score: float

    def key(self) -> tuple[int, int, int, int]:
        return (*self.src_range, *self.tgt_range)

    @property
    def shape(self) -> tuple[int, int]:
        return (
            self.src_range[1] - self.src_range[0] + 1,
            self.tgt_range[1] - self.tgt_range[0] + 1,
        )


@dataclass
class AlignmentResult:
    blocks: list[AlignmentBlock]
    total_score: float


@dataclass
class AlignConfig:
    max_group: int = 5
    allow_null_blocks: bool = False
    tie_break: str = "finest-earliest"
    max_sentences: int = 5000

    def __post_init__(self):
        if self.max_group < 1:
            raise ValueError("max_group must be >= 1")
        if self.tie_break != "finest-earliest":
            raise ValueError(f"unknown tie_break policy {self.tie_break!r}")

    def shapes(self) -> list[tuple[int, int]]:
        """Admissible block shapes in ascending (a, b) order."""
        shapes: list[tuple[int, int]] = []
        if self.allow_null_blocks:
            shapes.append((0, 1))
            shapes.append((1, 0))
        g = self.max_group
        shapes.extend((a, b) for a in range(1, g + 1) for b in range(1, g + 1))
        return shapes


def _solve(n: int, m: int, shapes, score_fn):
    """Suffix DP over consumed prefix lengths (i, j).

    Returns (total score, per-cell chosen shape) or raises AlignmentError if
    no admissible tiling covers both passages.
    """
    width = m + 1
    size = (n + 1) * width
    best_score = [_NEG] * size
    best_count = [0] * size
    best_shape: list[tuple[int, int] | None] = [None] * size
    best_score[n * width + m] = 0

    for i in range(n, -1, -1):
        for j in range(m, -1, -1):
            if i == n and j == m:
                continue
            cell = i * width + j
            cur_score = _NEG
            cur_count = -1
            cur_shape = None
            for a, b in shapes:
                i2, j2 = i + a, j + b
                if i2 > n or j2 > m:
                    continue
                tail = i2 * width + j2
                tail_score = best_score[tail]
                if tail_score == _NEG:
                    continue
                if a == 0 or b == 0:
                    score = tail_score
                else:
                    score = tail_score + score_fn(i + 1, i2, j + 1, j2)
                count = best_count[tail] + 1
                if score > cur_score or (score == cur_score and count > cur_count):
                    cur_score = score
                    cur_count = count
                    cur_shape = (a, b)
            best_score[cell] = cur_score
            best_count[cell] = cur_count
            best_shape[cell] = cur_shape

    if best_score[0] == _NEG:
        raise AlignmentError("no admissible tiling covers both passages")
    return best_score[0], best_shape


def _backtrack(n: int, m: int, best_shape, score_fn) -> list[AlignmentBlock]:
    blocks: list[AlignmentBlock] = []
    i = j = 0
    width = m + 1
    while (i, j) != (n, m):
        shape = best_shape[i * width + j]
        assert shape is not None
        a, b = shape
        if a == 0 or b == 0:
            score = 0
        else:
            score = score_fn(i + 1, i + a, j + 1, j + b)
        blocks.append(AlignmentBlock((i + 1, i + a), (j + 1, j + b), score))
        i, j = i + a, j + b
    return blocks


def align_dp(pair: PassagePair, cfg: AlignConfig | None = None) -> AlignmentResult:
    """Optimal monotone block tiling of a passage pair under LCS-sum scoring."""
    cfg = cfg or AlignConfig()
    pair.validate()
    n, m = len(pair.src_sentences), len(pair.tgt_sentences)
    if max(n, m) > cfg.max_sentences:
        raise AlignmentError(
            f"passage {pair.id!r} has {max(n, m)} sentences, above the cap of "
            f"{cfg.max_sentences}; pre-chunk it into smaller passages"
        )
    cache = BlockLcsCache(pair.src_sentences, pair.tgt_sentences)
    total, best_shape = _solve(n, m, cfg.shapes(), cache.block_len)
    blocks = _backtrack(n, m, best_shape, cache.block_len)
    return AlignmentResult(blocks, total)


def align_with_scorer(pair: PassagePair, cfg: AlignConfig, score_fn) -> AlignmentResult:
    """Same DP skeleton and tie-breaks with a caller-supplied block scorer.

    ``score_fn(i1, i2, j1, j2)`` scores the block over 1-based inclusive
    sentence ranges.
    """
    cfg = cfg or AlignConfig()
    pair.validate()
    n, m = len(pair.src_sentences), len(pair.tgt_sentences)
    if max(n, m) > cfg.max_sentences:
        raise AlignmentError(
            f"passage {pair.id!r} has {max(n, m)} sentences, above the cap of "
            f"{cfg.max_sentences}; pre-chunk it into smaller passages"
        )
    total, best_shape = _solve(n, m, cfg.shapes(), score_fn)
    blocks = _backtrack(n, m, best_shape, score_fn)
    return AlignmentResult(blocks, total)


_BRUTE_FORCE_CAP = 10


def align_bruteforce(
    pair: PassagePair, cfg: AlignConfig | None = None, score_fn=None
) -> AlignmentResult:
    """Exhaustive tiling search; the verification oracle for ``align_dp``.

    Enumerates every monotone tiling by admissible shapes, scores each block
    from scratch, and picks the maximum under the ordering (score desc, block
    count desc, block boundary sequence asc). Guarded to passages of at most
    10 sentences per side.
    """
    cfg = cfg or AlignConfig()
    pair.validate()
    n, m = len(pair.src_sentences), len(pair.tgt_sentences)
    if max(n, m) > _BRUTE_FORCE_CAP:
        raise AlignmentError(
            f"brute-force alignment is capped at {_BRUTE_FORCE_CAP} sentences per side"
        )
    if score_fn is None:
        src, tgt = pair.src_sentences, pair.tgt_sentences

        def score_fn(i1, i2, j1, j2):
            return lcs_len("".join(src[i1 - 1 : i2]), "".join(tgt[j1 - 1 : j2]))

    shapes = cfg.shapes()
    best: tuple | None = None
    best_result: AlignmentResult | None = None

    def extend(i: int, j: int, blocks: list[AlignmentBlock], score: float):
        nonlocal best, best_result
        if i == n and j == m:
            key = (-score, -len(blocks), [b.key() for b in blocks])
            if best is None or key < best:
                best = key
                best_result = AlignmentResult(list(blocks), score)
            return
        for a, b in shapes:
            i2, j2 = i + a, j + b
            if i2 > n or j2 > m:
                continue
            s = 0 if (a == 0 or b == 0) else score_fn(i + 1, i2, j + 1, j2)
            blocks.append(AlignmentBlock((i + 1, i2), (j + 1, j2), s))
            extend(i2, j2, blocks, score + s)
            blocks.pop()

    extend(0, 0, [], 0)
    if best_result is None:
        raise AlignmentError("no admissible tiling covers both passages")
    return best_result


def sentence_pairs_from_result(pair: PassagePair, result: AlignmentResult) -> list[SentencePair]:
    """One sentence pair per non-null block, joining each side's group."""
    out = []
    for block in result.blocks:
        (i1, i2), (j1, j2) = block.src_range, block.tgt_range
        if i2 < i1 or j2 < j1:
            continue
        out.append(
            SentencePair(
                "".join(pair.src_sentences[i1 - 1 : i2]),
                "".join(pair.tgt_sentences[j1 - 1 : j2]),
            )
        )
    return out


def align_corpus(
    pairs: list[PassagePair],
    cfg: AlignConfig | None = None,
    on_error=None,
    aligner=align_dp,
) -> list[SentencePair]:
    """Align every passage and emit sentence pairs in passage-then-block order.

    Per-passage failures are reported through ``on_error(pair, exc)`` (or a
    logged warning) and skipped; they never abort the corpus run.
    """
    cfg = cfg or AlignConfig()
    out: list[SentencePair] = []
    for pair in pairs:
        try:
            result = aligner(pair, cfg)
        except (AlignmentError, ValueError) as exc:
            if on_error is not None:
                on_error(pair, exc)
            else:
                import logging

                logging.getLogger(__name__).warning("skipping passage %r: %s", pair.id, exc)
            continue
        out.extend(sentence_pairs_from_result(pair, result))
    return out
