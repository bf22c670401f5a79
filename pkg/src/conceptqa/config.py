"""Engine configuration: similarity weights, data locations, lexicon source.

Loaded from a JSON file with keys ``delta``, ``tau``, ``stopwords_path``,
``wordnet_dir``, ``data_dir`` and optionally ``auth_token``. The
``CONCEPTQA_DATA_DIR`` environment variable supplies ``data_dir`` when the
config does not.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .similarity import (
    DEFAULT_DELTA,
    DEFAULT_TAU,
    SimilarityConfig,
    default_stopwords,
    load_stopwords,
)

DATA_DIR_ENV = "CONCEPTQA_DATA_DIR"

_KNOWN_KEYS = {"delta", "tau", "stopwords_path", "wordnet_dir", "data_dir", "auth_token"}


@dataclass(frozen=True)
class EngineConfig:
    delta: float = DEFAULT_DELTA
    tau: float = DEFAULT_TAU
    stopwords_path: str | None = None
    wordnet_dir: str | None = None
    data_dir: str | None = None
    auth_token: str | None = None

    def similarity(self) -> SimilarityConfig:
        stopwords = (
            load_stopwords(self.stopwords_path)
            if self.stopwords_path
            else default_stopwords()
        )
        return SimilarityConfig(delta=self.delta, tau=self.tau, stopwords=stopwords)


def load_config(path: str | Path | None = None) -> EngineConfig:
    values: dict = {}
    if path is not None:
        try:
            values = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"config {path}: not valid JSON: {exc}") from None
        if not isinstance(values, dict):
            raise ParseError(f"config {path}: expected a JSON object")
        unknown = sorted(set(values) - _KNOWN_KEYS)
        if unknown:
            raise ParseError(f"config {path}: unknown key(s) {unknown}")
    if "data_dir" not in values and os.environ.get(DATA_DIR_ENV):
        values["data_dir"] = os.environ[DATA_DIR_ENV]
    return EngineConfig(**values)
