"""Composition root: wires store, lexicon, matcher cache and routing.

The engine owns one lexicon and one store, and keeps a per-network matcher
cache keyed by snapshot version so matchers are rebuilt exactly when a
network changes.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .config import EngineConfig
from .matching import EntityMatcher, matcher_for_network
from .network import ConceptNetwork, serialize
from .retrieval import AnswerResult, answer_question
from .store import NetworkStore
from .tickets import PendingTicket, resolve_ticket
from .wordnet import WordNetLexicon, load_lexicon_dir


def bundled_fixture_dir() -> Path:
    return Path(str(resources.files("conceptqa").joinpath("fixtures")))


def load_default_lexicon() -> WordNetLexicon:
    """The miniature lexicon bundled with the package."""
    return load_lexicon_dir(bundled_fixture_dir() / "wordnet")


class Engine:
    def __init__(self, config: EngineConfig | None = None):
        self.config = config or EngineConfig()
        self.sim_config = self.config.similarity()
        if self.config.wordnet_dir:
            self.lexicon = load_lexicon_dir(self.config.wordnet_dir)
        else:
            self.lexicon = load_default_lexicon()
        self.store = NetworkStore(self.config.data_dir)
        self._matchers: dict[str, tuple[int, EntityMatcher]] = {}

    def matcher(self, network: ConceptNetwork) -> EntityMatcher:
        cached = self._matchers.get(network.id)
        if cached is not None and cached[0] == network.version:
            return cached[1]
        matcher = matcher_for_network(network)
        self._matchers[network.id] = (network.version, matcher)
        return matcher

    def import_document(self, document: str, actor: str = "import") -> ConceptNetwork:
        network = self.store.import_document(document, actor=actor)
        self.matcher(network)
        return network

    def export(self, network_id: str) -> str:
        return serialize(self.store.get(network_id))

    def ask(self, network_id: str, question_text: str) -> AnswerResult:
        """Answer against the latest snapshot; pending questions get a ticket."""
        network = self.store.get(network_id)
        return answer_question(
            network,
            self.matcher(network),
            self.lexicon,
            self.sim_config,
            question_text,
            self.store.queue(network_id),
        )

    def tickets(self, network_id: str, status: str | None = "open") -> list[PendingTicket]:
        queue = self.store.queue(network_id)
        if status in (None, "all"):
            return queue.list_all()
        return queue.list_all(status=status)

    def resolve(
        self, network_id: str, ticket_id: str, action: dict, expected_version: int
    ) -> tuple[PendingTicket, int]:
        return resolve_ticket(self.store, network_id, ticket_id, action, expected_version)

    def put_entity(
        self, network_id: str, entity_doc: dict, expected_version: int | None
    ) -> ConceptNetwork:
        return self.store.upsert_entity_doc(
            network_id, entity_doc, expected_version, actor="editor"
        )

    def put_edge_relation(
        self,
        network_id: str,
        a: str,
        b: str,
        slot: str,
        qa_doc: dict | None,
        expected_version: int | None,
    ) -> ConceptNetwork:
        return self.store.upsert_edge_relation(
            network_id, a, b, slot, qa_doc, expected_version, actor="editor"
        )
