import math
import random

import numpy as np
import pytest

from alignmt.align_eval import synth_corpus
from alignmt.corpus import PassagePair
from alignmt.dp_align import (
    AlignConfig,
    AlignmentBlock,
    AlignmentResult,
    align_bruteforce,
    align_dp,
)
from alignmt.errors import FormatError
from alignmt.lcs import lcs_len
from alignmt.loglinear import (
    LogLinearModel,
    align_loglinear,
    block_scorer,
    extract_features,
    train_loglinear,
)


def toy_model(mean=1.0, var=0.1, max_group=3):
    grid = [(a, b) for a in range(1, max_group + 1) for b in range(1, max_group + 1)]
    prior = {s: math.log(1 / len(grid)) for s in grid}
    return LogLinearModel(
        weights=np.array([1.0, 1.0, 1.0]),
        pattern_log_prior=prior,
        length_mean=mean,
        length_var=var,
        max_group=max_group,
    )


class TestFeatures:
    def test_identical_groups_cooc_is_one(self):
        fv = extract_features("甲乙丙", "甲乙丙", (1, 1), toy_model())
        assert fv.f_cooc == 1.0

    def test_disjoint_groups_cooc_is_zero(self):
        fv = extract_features("abc", "xyz", (1, 1), toy_model())
        assert fv.f_cooc == 0.0

    def test_length_feature_is_log_density_at_mode(self):
        model = toy_model(mean=1.5, var=0.1)
        fv = extract_features("a" * 10, "b" * 15, (1, 1), model)
        expected = -0.5 * math.log(2 * math.pi * 0.1)
        assert fv.f_len == pytest.approx(expected)
        # the mode: every other ratio on a grid scores strictly lower
        for k in range(5, 30):
            if k == 15:
                continue
            other = extract_features("a" * 10, "b" * k, (1, 1), model)
            assert other.f_len < fv.f_len

    def test_empty_source_group_rejected(self):
        with pytest.raises(ValueError):
            extract_features("", "abc", (1, 1), toy_model())

    def test_pattern_feature_reads_prior(self):
        model = toy_model()
        model.pattern_log_prior[(2, 1)] = -0.25
        assert extract_features("ab", "a", (2, 1), model).f_pat == -0.25


def make_gold(n_passages=30, seed=0, **kw):
    return synth_corpus(n_passages, overlap=0.7, merge_rate=0.2, split_rate=0.2, seed=seed, **kw)


class TestTraining:
    def test_needs_at_least_two_blocks(self):
        pair = PassagePair("x", ["ab"], ["ab"])
        gold = AlignmentResult([AlignmentBlock((1, 1), (1, 1), 2)], 2)
        with pytest.raises(ValueError):
            train_loglinear([(pair, gold)])
        with pytest.raises(ValueError):
            train_loglinear([])

    def test_pattern_prior_concentrates_on_observed_shapes(self):
        corpus = synth_corpus(30, overlap=0.8, merge_rate=0.0, split_rate=0.0, seed=2)
        model = train_loglinear(corpus, AlignConfig(max_group=3), epochs=10)
        assert model.pattern_log_prior[(1, 1)] == max(model.pattern_log_prior.values())
        total = sum(math.exp(lp) for lp in model.pattern_log_prior.values())
        assert total == pytest.approx(1.0)

    def test_deterministic_same_call_twice(self):
        gold = make_gold(12, seed=3)
        a = train_loglinear(gold, AlignConfig(), seed=5, epochs=200)
        b = train_loglinear(gold, AlignConfig(), seed=5, epochs=200)
        assert np.array_equal(a.weights, b.weights)
        assert a.pattern_log_prior == b.pattern_log_prior
        assert (a.length_mean, a.length_var) == (b.length_mean, b.length_var)

    def test_recovers_known_length_ratio(self):
        rng = random.Random(0)
        gold = []
        for pid in range(60):
            src_sents, tgt_sents, blocks = [], [], []
            for k in range(4):
                ls = rng.randint(8, 14)
                lt = max(1, round(ls * rng.gauss(1.4, 0.05)))
                src_sents.append("a" * ls)
                tgt_sents.append("b" * lt)
                blocks.append(AlignmentBlock((k + 1, k + 1), (k + 1, k + 1), 0))
            pair = PassagePair(str(pid), src_sents, tgt_sents)
            gold.append((pair, AlignmentResult(blocks, 0)))
        model = train_loglinear(gold, AlignConfig(), epochs=10)
        assert abs(model.length_mean - 1.4) < 0.05


class TestDecoding:
    def test_single_sentence_passages(self):
        model = train_loglinear(make_gold(10, seed=1), AlignConfig())
        pair = PassagePair("one", ["甲乙。"], ["甲乙丙。"])
        res = align_loglinear(pair, model)
        assert [b.key() for b in res.blocks] == [(1, 1, 1, 1)]

    def test_cooc_only_weights_match_bruteforce_with_same_score(self):
        model = toy_model(max_group=2)
        model.weights = np.array([0.0, 0.0, 1.0])
        rng = random.Random(9)
        cfg = AlignConfig(max_group=2)
        from alignmt.errors import AlignmentError

        for _ in range(15):
            n, m = rng.randint(1, 4), rng.randint(1, 4)
            mk = lambda: "".join(rng.choice("abcde") for _ in range(rng.randint(1, 5)))
            pair = PassagePair("t", [mk() for _ in range(n)], [mk() for _ in range(m)])
            scorer = block_scorer(pair, model)
            try:
                got = align_loglinear(pair, model, cfg)
            except AlignmentError:
                with pytest.raises(AlignmentError):
                    align_bruteforce(pair, cfg, score_fn=scorer)
                continue
            oracle = align_bruteforce(pair, cfg, score_fn=scorer)
            assert got.total_score == pytest.approx(oracle.total_score)
            assert [b.key() for b in got.blocks] == [b.key() for b in oracle.blocks]

    def test_trained_model_tracks_dp_on_easy_benchmark(self):
        gold = make_gold(40, seed=6)
        bench = make_gold(30, seed=7)
        model = train_loglinear(gold, AlignConfig())
        from alignmt.align_eval import evaluate_aligner

        dp_f1 = evaluate_aligner(bench).f1
        ll_f1 = evaluate_aligner(bench, aligner=lambda p, c: align_loglinear(p, model, c)).f1
        assert dp_f1 >= ll_f1 - 0.02
        assert ll_f1 > 0.9


class TestSerialization:
    def test_round_trip(self, tmp_path):
        model = train_loglinear(make_gold(10, seed=4), AlignConfig(), epochs=50)
        path = tmp_path / "model.json"
        model.save(path)
        loaded = LogLinearModel.load(path)
        assert np.array_equal(loaded.weights, model.weights)
        assert loaded.pattern_log_prior == model.pattern_log_prior
        assert loaded.length_mean == model.length_mean
        assert loaded.max_group == model.max_group

    def test_format_tag_checked(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"format": "other@9"}', "utf-8")
        with pytest.raises(FormatError):
            LogLinearModel.load(path)
