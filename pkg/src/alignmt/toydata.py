"""Small deterministic corpora for exercising the translator.

These generators back the desk-scale benchmarks: a memorization set, a
substitution-cipher task whose test score improves with training size, and
a rare-name task where the only way to get held-out names right is to copy
them from the source.
"""

from __future__ import annotations

import numpy as np

from .corpus import SentencePair


def _char(base: int, k: int) -> str:
    return chr(base + k)


def memorization_pairs(n: int = 32, seed: int = 0, length: tuple[int, int] = (4, 8)) -> list[SentencePair]:
    """Distinct random pairs with unrelated sides; only memorization fits them."""
    rng = np.random.default_rng(seed)
    seen = set()
    pairs = []
    while len(pairs) < n:
        ls = int(rng.integers(length[0], length[1] + 1))
        lt = int(rng.integers(length[0], length[1] + 1))
        src = "".join(_char(0x4E00, int(k)) for k in rng.integers(0, 40, size=ls))
        tgt = "".join(_char(0x4E00, int(k)) for k in rng.integers(0, 40, size=lt))
        if src in seen:
            continue
        seen.add(src)
        pairs.append(SentencePair(src, tgt))
    return pairs


def cipher_pairs(
    n: int,
    seed: int = 0,
    alphabet: int = 24,
    length: tuple[int, int] = (5, 9),
) -> list[SentencePair]:
    """Pairs related by a fixed character substitution, learnable from data.

    Source characters come from one block of code points, targets from a
    disjoint block via a fixed permutation, so nothing can be copied
    verbatim. The mapping depends only on ``alphabet``, never on ``seed``,
    so corpora of different sizes share one ground truth.
    """
    perm = np.random.default_rng(12345).permutation(alphabet)
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(n):
        ln = int(rng.integers(length[0], length[1] + 1))
        ks = rng.integers(0, alphabet, size=ln)
        src = "".join(_char(0x4E00, int(k)) for k in ks)
        tgt = "".join(_char(0x6000, int(perm[int(k)])) for k in ks)
        pairs.append(SentencePair(src, tgt))
    return pairs


def copy_task(
    n_train_names: int = 64,
    n_test_names: int = 16,
    name_len: int = 2,
    seed: int = 0,
) -> tuple[list[SentencePair], list[SentencePair], list[str]]:
    """Rare-name templates: each name occurs exactly once, test names are unseen.

    Train sources/targets wrap a unique name in one of a few fixed frames;
    test names are built from characters absent from training, so a model
    without a copy path cannot emit them at all. Returns (train pairs, test
    pairs, test names).
    """
    rng = np.random.default_rng(seed)
    # Frames use one code-point block, names another; test names a third.
    frames = [
        ("王{}也。", "{}乃君。"),
        ("吾见{}。", "{}被吾见。"),
        ("{}居北。", "北有{}。"),
        ("民从{}。", "{}得民。"),
    ]
    train_name_chars = [_char(0x5100, k) for k in range(40)]
    test_name_chars = [_char(0x5200, k) for k in range(20)]

    def sample_names(chars: list[str], count: int) -> list[str]:
        names = set()
        while len(names) < count:
            picks = rng.choice(len(chars), size=name_len, replace=False)
            names.add("".join(chars[int(i)] for i in picks))
        return sorted(names)

    train_names = sample_names(train_name_chars, n_train_names)
    test_names = sample_names(test_name_chars, n_test_names)

    train = []
    for k, name in enumerate(train_names):
        src_f, tgt_f = frames[k % len(frames)]
        train.append(SentencePair(src_f.format(name), tgt_f.format(name)))
    test = []
    for k, name in enumerate(test_names):
        src_f, tgt_f = frames[k % len(frames)]
        test.append(SentencePair(src_f.format(name), tgt_f.format(name)))
    return train, test, test_names
