"""Question answering over curated, versioned concept networks.

The pipeline: entity surface forms are extracted from the question with a
greedy longest-match trie, the question is scored against stored slot
questions with a blend of lexical and WordNet-based similarity, and anything
the network cannot answer confidently is queued for a human expert whose
resolutions mutate the live network.
"""

from .config import EngineConfig, load_config
from .engine import Engine
from .network import (
    ConceptNetwork,
    Edge,
    Entity,
    QATuple,
    SlotSchema,
    default_attribute_schema,
    default_relation_schema,
    deserialize,
    new_network,
    serialize,
    upsert_edge_relation,
    upsert_entity,
)
from .retrieval import AnswerResult, answer_question
from .similarity import SimilarityConfig, sim_overall
from .wordnet import WordNetLexicon, load_lexicon, load_lexicon_dir

__version__ = "0.1.0"

__all__ = [
    "AnswerResult",
    "ConceptNetwork",
    "Edge",
    "Engine",
    "EngineConfig",
    "Entity",
    "QATuple",
    "SimilarityConfig",
    "SlotSchema",
    "WordNetLexicon",
    "answer_question",
    "default_attribute_schema",
    "default_relation_schema",
    "deserialize",
    "load_config",
    "load_lexicon",
    "load_lexicon_dir",
    "new_network",
    "serialize",
    "sim_overall",
    "upsert_edge_relation",
    "upsert_entity",
]
