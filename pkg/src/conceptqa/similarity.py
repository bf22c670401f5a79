"""Sentence similarity: a convex blend of lexical and semantic scores.

``overall = (1 - delta) * statistic + delta * semantic`` where the statistic
part is cosine similarity of binary occurrence vectors over the two
sentences' union vocabulary, and the semantic part aligns each content word
with its best WordNet Wu-Palmer counterpart in the other sentence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InvariantViolation
from .matching import tokenize
from .wordnet import WordNetLexicon

DEFAULT_DELTA = 0.5
DEFAULT_TAU = 0.35


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset[str]:
    text = resources.files("conceptqa").joinpath("data/stopwords.txt").read_text(
        encoding="utf-8"
    )
    return _parse_stopwords(text)


def _parse_stopwords(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


def load_stopwords(path: str | Path) -> frozenset[str]:
    return _parse_stopwords(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class SimilarityConfig:
    delta: float = DEFAULT_DELTA
    tau: float = DEFAULT_TAU
    stopwords: frozenset[str] = field(default_factory=default_stopwords)

    def __post_init__(self):
        if not 0.0 <= self.delta <= 1.0:
            raise InvariantViolation("delta", "must be within [0, 1]")
        if not 0.0 <= self.tau <= 1.0:
            raise InvariantViolation("tau", "must be within [0, 1]")


def _content_words(tokens: Iterable[str], stopwords: frozenset[str]) -> list[str]:
    return [t for t in tokens if t not in stopwords]


def sim_statistic(
    tokens_a: Sequence[str],
    tokens_b: Sequence[str],
    stopwords: frozenset[str],
) -> float:
    """Cosine of binary occurrence vectors over the union vocabulary.

    Returns 0.0 when either side has no content words left.
    """
    a = set(_content_words(tokens_a, stopwords))
    b = set(_content_words(tokens_b, stopwords))
    if not a or not b:
        return 0.0
    return len(a & b) / math.sqrt(len(a) * len(b))


def sim_semantic(
    lexicon: WordNetLexicon,
    tokens_a: Sequence[str],
    tokens_b: Sequence[str],
    stopwords: frozenset[str],
) -> float:
    """Symmetric mean of best word-to-word Wu-Palmer alignments."""
    a = _content_words(tokens_a, stopwords)
    b = _content_words(tokens_b, stopwords)
    if not a or not b:
        return 0.0

    def directional(xs: list[str], ys: list[str]) -> float:
        total = 0.0
        for x in xs:
            total += max(lexicon.wup_similarity(x, y) for y in ys)
        return total / len(xs)

    return (directional(a, b) + directional(b, a)) / 2.0


def sim_overall(
    config: SimilarityConfig,
    lexicon: WordNetLexicon,
    sentence_a: str,
    sentence_b: str,
) -> float:
    """Blend of the two scores with weight ``delta`` on the semantic part."""
    tokens_a = tokenize(sentence_a).texts()
    tokens_b = tokenize(sentence_b).texts()
    statistic = sim_statistic(tokens_a, tokens_b, config.stopwords)
    semantic = sim_semantic(lexicon, tokens_a, tokens_b, config.stopwords)
    return (1.0 - config.delta) * statistic + config.delta * semantic
