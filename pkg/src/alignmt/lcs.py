"""Longest-common-subsequence length kernels.

``lcs_len`` is the hot inner loop of the sentence aligner, so it uses the
bit-parallel row update (Allison-Dix): the DP row is packed into one Python
integer, one bit per character of the longer string, and each step of the
shorter string advances the whole row with a handful of big-int operations.
``lcs_len_dp`` keeps the textbook two-row DP as a slow reference.

``lcs_block`` scores a candidate alignment block: the LCS length of two
concatenated sentence ranges. ``BlockLcsCache`` memoizes those lengths per
passage pair, because the alignment DP probes the same ranges repeatedly.
"""

from __future__ import annotations


def lcs_len(a: str, b: str) -> int:
    """Length of the longest common subsequence of ``a`` and ``b``."""
    if not a or not b:
        return 0
    # Iterate the shorter string; the row bitset covers the longer one.
    if len(a) <= len(b):
        outer, inner = a, b
    else:
        outer, inner = b, a
    masks: dict[str, int] = {}
    bit = 1
    for ch in inner:
        masks[ch] = masks.get(ch, 0) | bit
        bit <<= 1
    full = bit - 1
    row = 0
    for ch in outer:
        m = masks.get(ch, 0)
        x = row | m
        row = x & ~(x - ((row << 1) | 1)) & full
    return row.bit_count()


def lcs_len_dp(a: str, b: str) -> int:
    """Two-row O(|a|*|b|) reference implementation of ``lcs_len``."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    cur = [0] * (len(b) + 1)
    for ca in a:
        for j, cb in enumerate(b, start=1):
            if ca == cb:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev, cur = cur, prev
    return prev[len(b)]


class BlockLcsCache:
    """Memoized LCS lengths over concatenated sentence ranges.

    Ranges are 1-based and inclusive on both ends, matching the aligner's
    block indexing. With the GIL, concurrent use only ever observes either a
    cached value or a fresh computation of the same number.
    """

    def __init__(self, src_sentences: list[str], tgt_sentences: list[str]):
        self.src = list(src_sentences)
        self.tgt = list(tgt_sentences)
        self._memo: dict[tuple[int, int, int, int], int] = {}
        self._src_join: dict[tuple[int, int], str] = {}
        self._tgt_join: dict[tuple[int, int], str] = {}

    def src_text(self, i1: int, i2: int) -> str:
        key = (i1, i2)
        text = self._src_join.get(key)
        if text is None:
            text = "".join(self.src[i1 - 1 : i2])
            self._src_join[key] = text
        return text

    def tgt_text(self, j1: int, j2: int) -> str:
        key = (j1, j2)
        text = self._tgt_join.get(key)
        if text is None:
            text = "".join(self.tgt[j1 - 1 : j2])
            self._tgt_join[key] = text
        return text

    def block_len(self, i1: int, i2: int, j1: int, j2: int) -> int:
        _check_range(i1, i2, len(self.src), "src")
        _check_range(j1, j2, len(self.tgt), "tgt")
        key = (i1, i2, j1, j2)
        value = self._memo.get(key)
        if value is None:
            value = lcs_len(self.src_text(i1, i2), self.tgt_text(j1, j2))
            self._memo[key] = value
        return value

    def __len__(self) -> int:
        return len(self._memo)


def lcs_block(
    src: list[str],
    tgt: list[str],
    i1: int,
    i2: int,
    j1: int,
    j2: int,
    cache: BlockLcsCache | None = None,
) -> int:
    """LCS length of ``src[i1..i2]`` joined vs ``tgt[j1..j2]`` joined (1-based)."""
    if cache is None:
        cache = BlockLcsCache(src, tgt)
    return cache.block_len(i1, i2, j1, j2)


def _check_range(lo: int, hi: int, n: int, side: str) -> None:
    if not (1 <= lo <= hi <= n):
        raise IndexError(f"{side} range [{lo}, {hi}] out of bounds for {n} sentences")
