"""Answer routing over an immutable network snapshot.

One extracted entity routes to attribute recognition, several route to
relationship extraction over the pairs that actually share an edge, and
anything the network cannot answer confidently becomes a pending ticket for
the expert queue.

A slot reference is either a plain attribute slot id (``"definition"``) or a
``((a, b), relation_id)`` pair for a relation slot; both forms round-trip
through :func:`slot_to_doc` / :func:`slot_from_doc`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoCandidate, StaleMatcher
from .matching import EntityMatcher, extract_entities, tokenize
from .network import ConceptNetwork, Entity, canonical_pair
from .similarity import SimilarityConfig, sim_overall
from .tickets import KIND_LOW_CONFIDENCE, KIND_NO_ENTITY, KIND_NO_RELATION, TicketQueue
from .wordnet import WordNetLexicon

STATUS_ANSWERED = "answered"
STATUS_PENDING = "pending"


@dataclass(frozen=True)
class AnswerResult:
    status: str
    matched_entities: tuple[str, ...]
    answer: str | None = None
    matched_slot: object | None = None
    confidence: float | None = None
    ticket_id: str | None = None

    def __post_init__(self):
        answered = (
            self.answer is not None
            and self.matched_slot is not None
            and self.confidence is not None
        )
        pending = self.ticket_id is not None
        if self.status == STATUS_ANSWERED and not (answered and not pending):
            raise ValueError("answered result must carry answer+slot+confidence only")
        if self.status == STATUS_PENDING and not (pending and not answered):
            raise ValueError("pending result must carry a ticket id only")

    def to_document(self) -> dict:
        return {
            "status": self.status,
            "answer": self.answer,
            "matched_entities": list(self.matched_entities),
            "matched_slot": slot_to_doc(self.matched_slot),
            "confidence": self.confidence,
            "ticket_id": self.ticket_id,
        }


def slot_to_doc(slot) -> dict | None:
    if slot is None:
        return None
    if isinstance(slot, str):
        return {"attribute": slot}
    pair, relation_id = slot
    return {"pair": list(pair), "relation": relation_id}


def slot_from_doc(doc) -> object | None:
    if doc is None:
        return None
    if "attribute" in doc:
        return doc["attribute"]
    return ((doc["pair"][0], doc["pair"][1]), doc["relation"])


def attribute_recognition(
    entity: Entity,
    lexicon: WordNetLexicon,
    config: SimilarityConfig,
    question_text: str,
) -> tuple[str, float]:
    """Best-matching non-NULL attribute slot; ties go to schema order."""
    best: tuple[str, float] | None = None
    for slot_id, qa in entity.attributes.items():
        if qa is None:
            continue
        score = sim_overall(config, lexicon, question_text, qa.question)
        if best is None or score > best[1]:
            best = (slot_id, score)
    if best is None:
        raise NoCandidate(f"all attribute slots of {entity.id!r} are NULL")
    return best


def relationship_extraction(
    network: ConceptNetwork,
    entity_ids: list[str],
    lexicon: WordNetLexicon,
    config: SimilarityConfig,
    question_text: str,
) -> tuple[tuple[str, str], str, float]:
    """Best non-NULL relation slot over all edged pairs of the given entities.

    Ties go to canonical pair order, then relation schema order.
    """
    pairs = _candidate_pairs(entity_ids)
    best: tuple[tuple[str, str], str, float] | None = None
    any_edge = False
    for pair in pairs:
        edge = network.edges.get(pair)
        if edge is None:
            continue
        any_edge = True
        for slot_id, qa in edge.relations.items():
            if qa is None:
                continue
            score = sim_overall(config, lexicon, question_text, qa.question)
            if best is None or score > best[2]:
                best = (pair, slot_id, score)
    if best is None:
        reason = "no relation slot is filled" if any_edge else "no pair shares an edge"
        raise NoCandidate(reason)
    return best


def _candidate_pairs(entity_ids: list[str]) -> list[tuple[str, str]]:
    pairs = set()
    for i, a in enumerate(entity_ids):
        for b in entity_ids[i + 1 :]:
            if a != b:
                pairs.add(canonical_pair(a, b))
    return sorted(pairs)


def answer_question(
    network: ConceptNetwork,
    matcher: EntityMatcher,
    lexicon: WordNetLexicon,
    config: SimilarityConfig,
    question_text: str,
    queue: TicketQueue,
) -> AnswerResult:
    """Route a question and either answer it or enqueue an expert ticket."""
    if matcher.network_version != network.version:
        raise StaleMatcher(
            f"matcher was built for version {matcher.network_version}, "
            f"network is at {network.version}"
        )
    tokens = tokenize(question_text)
    matches = extract_entities(matcher, tokens)
    entity_ids = [m.entity_id for m in matches]

    if not entity_ids:
        ticket_id = queue.enqueue(question_text, KIND_NO_ENTITY)
        return AnswerResult(
            status=STATUS_PENDING, matched_entities=(), ticket_id=ticket_id
        )

    if len(entity_ids) == 1:
        entity = network.entities[entity_ids[0]]
        try:
            slot_id, score = attribute_recognition(
                entity, lexicon, config, question_text
            )
        except NoCandidate:
            ticket_id = queue.enqueue(
                question_text, KIND_LOW_CONFIDENCE, best_slot=None, best_score=0.0
            )
            return AnswerResult(
                status=STATUS_PENDING,
                matched_entities=tuple(entity_ids),
                ticket_id=ticket_id,
            )
        if score < config.tau:
            ticket_id = queue.enqueue(
                question_text,
                KIND_LOW_CONFIDENCE,
                best_slot=slot_id,
                best_score=score,
            )
            return AnswerResult(
                status=STATUS_PENDING,
                matched_entities=tuple(entity_ids),
                ticket_id=ticket_id,
            )
        return AnswerResult(
            status=STATUS_ANSWERED,
            matched_entities=tuple(entity_ids),
            answer=entity.attributes[slot_id].answer,
            matched_slot=slot_id,
            confidence=score,
        )

    try:
        pair, slot_id, score = relationship_extraction(
            network, entity_ids, lexicon, config, question_text
        )
    except NoCandidate:
        pairs = _candidate_pairs(entity_ids)
        edged = [p for p in pairs if p in network.edges]
        ticket_id = queue.enqueue(
            question_text,
            KIND_NO_RELATION,
            entity_pair=edged[0] if edged else pairs[0],
        )
        return AnswerResult(
            status=STATUS_PENDING,
            matched_entities=tuple(entity_ids),
            ticket_id=ticket_id,
        )
    if score < config.tau:
        ticket_id = queue.enqueue(
            question_text,
            KIND_LOW_CONFIDENCE,
            best_slot=(pair, slot_id),
            best_score=score,
        )
        return AnswerResult(
            status=STATUS_PENDING,
            matched_entities=tuple(entity_ids),
            ticket_id=ticket_id,
        )
    edge = network.edges[pair]
    return AnswerResult(
        status=STATUS_ANSWERED,
        matched_entities=tuple(entity_ids),
        answer=edge.relations[slot_id].answer,
        matched_slot=(pair, slot_id),
        confidence=score,
    )
