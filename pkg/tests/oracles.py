"""Independent reference implementations used to cross-check the library.

Nothing here shares code with the package: the LCS oracle enumerates
subsequences outright, and the tiny forward model below recomputes the
network's loss with plain Python floats and explicit loops.
"""

from itertools import combinations


def is_subsequence(sub: str, s: str) -> bool:
    it = iter(s)
    return all(ch in it for ch in sub)


def lcs_len_oracle(a: str, b: str) -> int:
    """Exponential-enumeration LCS length: try subsequences longest-first."""
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    for length in range(len(short), 0, -1):
        for positions in combinations(range(len(short)), length):
            candidate = "".join(short[i] for i in positions)
            if is_subsequence(candidate, long_):
                return length
    return 0
