import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alignmt.corpus import (
    DEFAULT_DELIMITERS,
    PAD_ID, BOS_ID, EOS_ID, UNK_ID,
    N_RESERVED,
    SentencePair,
    Vocab,
    load_passage_pairs,
    load_sentence_pairs,
    save_sentence_pairs,
    split_dataset,
    split_sentences,
    vocab_stats,
)
from alignmt.errors import FormatError, NumericError


class TestSplitSentences:
    @pytest.mark.parametrize(
        "text, delims, expected",
        [
            ("甲。乙！", "。！", ["甲。", "乙！"]),
            ("甲乙", "。！", ["甲乙"]),
            ("甲，乙。", "。，", ["甲，", "乙。"]),
            ("", "。", []),
            ("。。", "。", ["。", "。"]),
            ("a.b", ".", ["a.", "b"]),
        ],
    )
    def test_fixtures(self, text, delims, expected):
        assert split_sentences(text, frozenset(delims)) == expected

    @given(st.text(alphabet="ab。！，x", max_size=40))
    def test_round_trip(self, text):
        clauses = split_sentences(text, DEFAULT_DELIMITERS)
        assert "".join(clauses) == text
        assert all(clauses)

    @given(st.text(max_size=30), st.sets(st.characters(), max_size=3))
    def test_round_trip_any_delimiters(self, text, delims):
        clauses = split_sentences(text, frozenset(delims))
        assert "".join(clauses) == text
        assert all(clauses)


class TestPassageIO:
    def test_load_valid(self, tmp_path):
        path = tmp_path / "p.jsonl"
        lines = [
            {"id": "a", "src": ["一。", "二。"], "tgt": ["1。"]},
            {"id": "b", "src": ["三。"], "tgt": ["3。", "三三。"]},
        ]
        path.write_text("\n".join(json.dumps(l, ensure_ascii=False) for l in lines), "utf-8")
        pairs = load_passage_pairs(path)
        assert [p.id for p in pairs] == ["a", "b"]
        assert pairs[0].src_sentences == ["一。", "二。"]

    def test_missing_field_names_line(self, tmp_path):
        path = tmp_path / "p.jsonl"
        path.write_text('{"id": "a", "src": ["x"], "tgt": ["y"]}\n{"id": "b", "src": ["x"]}\n', "utf-8")
        with pytest.raises(FormatError, match="line 2"):
            load_passage_pairs(path)

    def test_invalid_json_names_line(self, tmp_path):
        path = tmp_path / "p.jsonl"
        path.write_text('{"id": "a", "src": ["x"], "tgt": ["y"]}\nnot json\n', "utf-8")
        with pytest.raises(FormatError, match="line 2"):
            load_passage_pairs(path)

    def test_empty_sentence_list_rejected(self, tmp_path):
        path = tmp_path / "p.jsonl"
        path.write_text('{"id": "a", "src": [], "tgt": ["y"]}\n', "utf-8")
        with pytest.raises(FormatError, match="line 1"):
            load_passage_pairs(path)

    def test_sentence_pairs_round_trip(self, tmp_path):
        path = tmp_path / "s.jsonl"
        pairs = [SentencePair("甲。", "乙。"), SentencePair("a", "b")]
        save_sentence_pairs(path, pairs)
        assert load_sentence_pairs(path) == pairs

    def test_ninety_passage_fixture_counts(self, tmp_path):
        from alignmt.align_eval import synth_corpus
        from alignmt.corpus import save_passage_pairs

        corpus = synth_corpus(90, overlap=0.7, merge_rate=0.2, split_rate=0.2, seed=90)
        path = tmp_path / "ninety.jsonl"
        save_passage_pairs(path, [p for p, _ in corpus])
        pairs = load_passage_pairs(path)
        assert len(pairs) == 90
        # independent count straight off the raw JSON lines
        raw = [json.loads(line) for line in path.read_text("utf-8").splitlines()]
        assert [len(r["src"]) for r in raw] == [len(p.src_sentences) for p in pairs]
        assert [len(r["tgt"]) for r in raw] == [len(p.tgt_sentences) for p in pairs]
        assert [r["id"] for r in raw] == [p.id for p in pairs]


class TestSplitDataset:
    def test_sizes_10(self):
        train, dev, test = split_dataset(list(range(10)), (0.8, 0.1, 0.1), seed=7)
        assert (len(train), len(dev), len(test)) == (8, 1, 1)

    def test_deterministic(self):
        pairs = list(range(50))
        a = split_dataset(pairs, (0.8, 0.1, 0.1), seed=3)
        b = split_dataset(pairs, (0.8, 0.1, 0.1), seed=3)
        assert a == b
        c = split_dataset(pairs, (0.8, 0.1, 0.1), seed=4)
        assert a != c

    @given(st.integers(0, 200), st.integers(0, 2**31 - 1))
    def test_partition(self, n, seed):
        pairs = list(range(n))
        train, dev, test = split_dataset(pairs, (0.6, 0.2, 0.2), seed)
        combined = train + dev + test
        assert sorted(combined) == pairs

    def test_documented_corpus_sizes(self):
        # 53,140 + 2,125 + 2,126 = 57,391 and the exact fractional ratios
        # reproduce those split sizes under floor-with-remainder-to-train.
        total = 57391
        sizes = (53140, 2125, 2126)
        assert sum(sizes) == total
        ratios = tuple(s / total for s in sizes)
        train, dev, test = split_dataset(list(range(total)), ratios, seed=0)
        assert (len(train), len(dev), len(test)) == sizes

    def test_empty_input(self):
        assert split_dataset([], (0.8, 0.1, 0.1), 0) == ([], [], [])

    @pytest.mark.parametrize("ratios", [(0.5, 0.5, 0.5), (1.0, 0.0, 0.0), (-0.2, 0.6, 0.6)])
    def test_bad_ratios(self, ratios):
        with pytest.raises(ValueError):
            split_dataset([1, 2], ratios, 0)


class TestVocab:
    def test_reserved_ids(self):
        v = Vocab.from_texts(["ab"])
        assert (PAD_ID, BOS_ID, EOS_ID, UNK_ID) == (0, 1, 2, 3)
        assert v.size == N_RESERVED + 2

    def test_bijection_and_round_trip(self):
        v = Vocab.from_texts(["甲乙甲", "丙"])
        ids = [v.char_to_id[c] for c in v.chars()]
        assert len(set(ids)) == len(ids)
        for text in ("甲乙丙", "乙乙甲"):
            assert v.decode(v.encode(text)) == text

    def test_frequency_then_codepoint_order(self):
        v = Vocab.from_texts(["bbca", "ba"])
        assert v.chars() == ["b", "a", "c"]

    def test_oov_encodes_to_unk(self):
        v = Vocab.from_texts(["ab"])
        assert v.encode("az") == [v.char_to_id["a"], UNK_ID]


class TestVocabStats:
    def test_hand_enumeration(self):
        stats = vocab_stats(["abab"], ["abc"])
        assert stats["vocab_size"] == 2
        assert stats["oov_rate"] == pytest.approx(1 / 3)

    def test_subset_has_zero_oov(self):
        stats = vocab_stats(["abcde"], ["ace", "b"])
        assert stats["oov_rate"] == 0.0

    def test_empty_eval_is_error(self):
        with pytest.raises(NumericError):
            vocab_stats(["ab"], [])

    def test_empty_train_is_error(self):
        with pytest.raises(ValueError):
            vocab_stats([], ["ab"])
