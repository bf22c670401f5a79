import math
import random

import pytest

from conceptqa.errors import InvariantViolation
from conceptqa.similarity import (
    SimilarityConfig,
    default_stopwords,
    sim_overall,
    sim_semantic,
    sim_statistic,
)

STOP = default_stopwords()


class TestConfig:
    def test_defaults(self):
        config = SimilarityConfig()
        assert config.delta == 0.5
        assert config.tau == 0.35
        assert "the" in config.stopwords and "is" in config.stopwords

    def test_bounds_enforced(self):
        with pytest.raises(InvariantViolation):
            SimilarityConfig(delta=1.5)
        with pytest.raises(InvariantViolation):
            SimilarityConfig(tau=-0.1)

    def test_default_stopword_list_size(self):
        assert len(STOP) >= 100


class TestStatistic:
    def test_identical_sentences(self):
        assert sim_statistic(["force", "pressure"], ["force", "pressure"], STOP) == 1.0

    def test_disjoint_vocabulary(self):
        assert sim_statistic(["force"], ["pressure"], STOP) == 0.0

    def test_hand_computed_overlap(self):
        value = sim_statistic(["force", "pressure"], ["force"], STOP)
        assert value == pytest.approx(1 / math.sqrt(2), abs=1e-12)

    def test_stopwords_removed_before_vectors(self):
        assert sim_statistic(["the", "force"], ["a", "force"], STOP) == 1.0

    def test_empty_after_filtering(self):
        assert sim_statistic(["the", "is"], ["force"], STOP) == 0.0
        assert sim_statistic([], ["force"], STOP) == 0.0


class TestSemantic:
    def test_identical_sentences(self, lexicon):
        tokens = ["toolword", "dogword"]
        assert sim_semantic(lexicon, tokens, list(tokens), STOP) == 1.0

    def test_one_side_empty(self, lexicon):
        assert sim_semantic(lexicon, ["the"], ["toolword"], STOP) == 0.0

    def test_single_pair_equals_wup(self, lexicon):
        value = sim_semantic(lexicon, ["artifactword"], ["organismword"], STOP)
        assert value == 2 / 3

    def test_alignment_is_mean_of_best_matches(self, lexicon):
        # Forward: toolword->toolword = 1 and dogword->toolword = 2*2/(5+4);
        # backward: toolword->toolword = 1.
        value = sim_semantic(lexicon, ["toolword", "dogword"], ["toolword"], STOP)
        assert value == pytest.approx((((1 + 4 / 9) / 2) + 1.0) / 2, abs=1e-12)


class TestOverall:
    def test_delta_zero_equals_statistic(self, lexicon):
        config = SimilarityConfig(delta=0.0)
        a, b = "toolword hammerword", "toolword vesselword"
        expected = sim_statistic(["toolword", "hammerword"], ["toolword", "vesselword"], STOP)
        assert sim_overall(config, lexicon, a, b) == expected

    def test_delta_one_equals_semantic(self, lexicon):
        config = SimilarityConfig(delta=1.0)
        a, b = "toolword hammerword", "toolword vesselword"
        expected = sim_semantic(
            lexicon, ["toolword", "hammerword"], ["toolword", "vesselword"], STOP
        )
        assert sim_overall(config, lexicon, a, b) == expected

    def test_blend_arithmetic(self, lexicon, monkeypatch):
        import conceptqa.similarity as sim

        monkeypatch.setattr(sim, "sim_statistic", lambda *a: 0.4)
        monkeypatch.setattr(sim, "sim_semantic", lambda *a: 0.8)
        config = SimilarityConfig(delta=0.5)
        assert sim.sim_overall(config, lexicon, "x", "y") == pytest.approx(0.6, abs=1e-12)

    def test_identity_scores_one(self, lexicon):
        config = SimilarityConfig()
        for sentence in ("What is toolword?", "is the dogword loyal", "force!"):
            assert sim_overall(config, lexicon, sentence, sentence) == 1.0


def random_sentence(rng):
    vocab = [
        "toolword", "dogword", "hammerword", "ideaword", "plantword", "runword",
        "force", "pressure", "zzz", "the", "is", "of", "what",
    ]
    return " ".join(rng.choice(vocab) for _ in range(rng.randint(0, 7)))


def test_random_pairs_range_symmetry_endpoints(lexicon):
    rng = random.Random(123)
    half = SimilarityConfig(delta=0.5)
    zero = SimilarityConfig(delta=0.0)
    one = SimilarityConfig(delta=1.0)
    for _ in range(300):
        a, b = random_sentence(rng), random_sentence(rng)
        value = sim_overall(half, lexicon, a, b)
        assert 0.0 <= value <= 1.0
        assert value == sim_overall(half, lexicon, b, a)
        tokens_a, tokens_b = a.split(), b.split()
        assert sim_overall(zero, lexicon, a, b) == sim_statistic(tokens_a, tokens_b, STOP)
        assert sim_overall(one, lexicon, a, b) == sim_semantic(lexicon, tokens_a, tokens_b, STOP)


def test_monotone_in_delta_when_semantic_dominates(lexicon):
    # Siblings: semantic part sees structure the lexical part cannot.
    a, b = "toolword", "vesselword"
    values = [
        sim_overall(SimilarityConfig(delta=d), lexicon, a, b)
        for d in (0.0, 0.25, 0.5, 0.75, 1.0)
    ]
    assert values == sorted(values)
    assert values[0] == 0.0 and values[-1] == 3 / 4
