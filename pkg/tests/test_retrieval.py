import pytest

from conceptqa.errors import NoCandidate, StaleMatcher
from conceptqa.matching import matcher_for_network
from conceptqa.network import QATuple, all_stored_questions, upsert_edge_relation
from conceptqa.retrieval import (
    STATUS_ANSWERED,
    STATUS_PENDING,
    AnswerResult,
    answer_question,
    attribute_recognition,
    relationship_extraction,
    slot_from_doc,
    slot_to_doc,
)
from conceptqa.similarity import sim_overall
from conceptqa.tickets import KIND_LOW_CONFIDENCE, KIND_NO_ENTITY, KIND_NO_RELATION, TicketQueue


def ask(network, lexicon, config, question, queue=None):
    queue = queue if queue is not None else TicketQueue()
    matcher = matcher_for_network(network)
    return answer_question(network, matcher, lexicon, config, question, queue), queue


class TestAnswerResultInvariant:
    def test_answered_shape_enforced(self):
        with pytest.raises(ValueError):
            AnswerResult(status=STATUS_ANSWERED, matched_entities=("force",))
        with pytest.raises(ValueError):
            AnswerResult(
                status=STATUS_ANSWERED, matched_entities=("force",),
                answer="a", matched_slot="definition", confidence=1.0,
                ticket_id="t1",
            )

    def test_pending_shape_enforced(self):
        with pytest.raises(ValueError):
            AnswerResult(status=STATUS_PENDING, matched_entities=())

    def test_slot_doc_round_trip(self):
        for slot in ("definition", (("a", "b"), "difference"), None):
            assert slot_from_doc(slot_to_doc(slot)) == slot


class TestAttributeRecognition:
    def test_single_candidate_wins_for_any_question(self, fixture_network, lexicon, sim_config):
        entity = fixture_network.entities["muscular force"]
        only = {sid for sid, qa in entity.attributes.items() if qa is not None}
        assert only == {"definition", "example"}
        slot, score = attribute_recognition(
            entity, lexicon, sim_config, "completely unrelated words"
        )
        assert slot in only

    def test_all_null_slots_raise_no_candidate(self, fixture_network, lexicon, sim_config):
        entity = fixture_network.entities["force"]
        empty = type(entity)(
            id="empty", name="empty", aliases=(), topic="forces",
            attributes={sid: None for sid in entity.attributes},
        )
        with pytest.raises(NoCandidate):
            attribute_recognition(empty, lexicon, sim_config, "anything")

    def test_verbatim_question_wins_its_slot(self, fixture_network, lexicon, sim_config):
        entity = fixture_network.entities["force"]
        for sid, qa in entity.attributes.items():
            if qa is None:
                continue
            slot, score = attribute_recognition(entity, lexicon, sim_config, qa.question)
            assert slot == sid
            assert score == pytest.approx(1.0, abs=1e-12)

    def test_brute_force_argmax_agrees(self, fixture_network, lexicon, sim_config):
        entity = fixture_network.entities["pressure"]
        question = "Give an example of pressure in daily life."
        slot, score = attribute_recognition(entity, lexicon, sim_config, question)
        scores = {
            sid: sim_overall(sim_config, lexicon, question, qa.question)
            for sid, qa in entity.attributes.items()
            if qa is not None
        }
        assert slot == max(scores, key=scores.get) == "example"
        assert score == scores[slot]

    def test_adding_a_null_slot_never_changes_the_choice(self, fixture_network, lexicon, sim_config):
        # Candidate-set monotonicity: an entity and its twin under a schema
        # extended by one NULL slot pick the same attribute for any question.
        entity = fixture_network.entities["force"]
        extended = type(entity)(
            id=entity.id, name=entity.name, aliases=entity.aliases,
            topic=entity.topic,
            attributes={**entity.attributes, "history": None},
        )
        questions = [
            "Define force.",
            "Give an example of force in daily life.",
            "What are the kinds of force?",
            "completely unrelated words here",
        ]
        for question in questions:
            assert attribute_recognition(
                entity, lexicon, sim_config, question
            ) == attribute_recognition(extended, lexicon, sim_config, question)


class TestRelationshipExtraction:
    def test_single_edge_single_relation(self, fixture_network, lexicon, sim_config):
        pair, slot, score = relationship_extraction(
            fixture_network, ["friction", "muscular force"], lexicon, sim_config,
            "anything about these two",
        )
        assert (pair, slot) == (("friction", "muscular force"), "similarity")

    def test_no_edge_raises_no_candidate(self, fixture_network, lexicon, sim_config):
        with pytest.raises(NoCandidate):
            relationship_extraction(
                fixture_network, ["thrust", "friction"], lexicon, sim_config, "q"
            )

    def test_best_slot_across_edges_by_brute_force(self, fixture_network, lexicon, sim_config):
        question = "State the difference between force and pressure."
        pair, slot, score = relationship_extraction(
            fixture_network, ["force", "pressure"], lexicon, sim_config, question
        )
        assert (pair, slot) == (("force", "pressure"), "difference")
        edge = fixture_network.edges[("force", "pressure")]
        scores = {
            sid: sim_overall(sim_config, lexicon, question, qa.question)
            for sid, qa in edge.relations.items() if qa is not None
        }
        assert score == max(scores.values())

    def test_entity_order_does_not_matter(self, fixture_network, lexicon, sim_config):
        question = "How does pressure depend on force?"
        a = relationship_extraction(
            fixture_network, ["pressure", "force"], lexicon, sim_config, question
        )
        b = relationship_extraction(
            fixture_network, ["force", "pressure"], lexicon, sim_config, question
        )
        assert a == b


class TestAnswerQuestion:
    def test_verbatim_attribute_question(self, fixture_network, lexicon, sim_config):
        result, queue = ask(
            fixture_network, lexicon, sim_config, "What is non contact force?"
        )
        assert result.status == STATUS_ANSWERED
        assert result.matched_entities == ("non contact force",)
        assert result.matched_slot == "definition"
        assert result.confidence == pytest.approx(1.0, abs=1e-12)
        assert len(queue) == 0

    def test_no_entity_creates_ticket(self, fixture_network, lexicon, sim_config):
        result, queue = ask(fixture_network, lexicon, sim_config, "What is light?")
        assert result.status == STATUS_PENDING
        assert result.ticket_id is not None
        (ticket,) = queue.list_pending()
        assert ticket.kind == KIND_NO_ENTITY
        assert ticket.id == result.ticket_id

    def test_two_entities_without_edge_creates_no_relation_ticket(
        self, fixture_network, lexicon, sim_config
    ):
        result, queue = ask(
            fixture_network, lexicon, sim_config,
            "What is the difference between thrust and friction?",
        )
        assert result.status == STATUS_PENDING
        (ticket,) = queue.list_pending()
        assert ticket.kind == KIND_NO_RELATION
        assert ticket.entity_pair == ("friction", "thrust")

    def test_low_confidence_routes_to_expert(self, fixture_network, lexicon, sim_config):
        # "gravity" reaches the entity through an alias, but no stored
        # question of that entity shares a content word with it.
        result, queue = ask(fixture_network, lexicon, sim_config, "What is gravity?")
        assert result.status == STATUS_PENDING
        assert result.matched_entities == ("gravitational force",)
        (ticket,) = queue.list_pending()
        assert ticket.kind == KIND_LOW_CONFIDENCE
        assert ticket.best_slot == "definition"
        assert ticket.best_score == 0.0
        assert ticket.best_score < sim_config.tau

    def test_answered_confidence_always_at_least_tau(self, fixture_network, lexicon, sim_config):
        questions = [
            "Define force.",
            "What is pressure?",
            "completely unrelated thrust words",
            "how are magnetic force and electrostatic force alike?",
        ]
        for question in questions:
            result, _ = ask(fixture_network, lexicon, sim_config, question)
            if result.status == STATUS_ANSWERED:
                assert result.confidence >= sim_config.tau

    def test_stale_matcher_rejected(self, fixture_network, lexicon, sim_config):
        matcher = matcher_for_network(fixture_network)
        mutated = upsert_edge_relation(
            fixture_network, "force", "thrust", "similarity",
            QATuple("How are force and thrust similar?", "both are pushes"),
        )
        with pytest.raises(StaleMatcher):
            answer_question(
                mutated, matcher, lexicon, sim_config, "Define force.", TicketQueue()
            )

    def test_multi_entity_excludes_attribute_slots(self, fixture_network, lexicon, sim_config):
        # Mentions two edged entities; even an attribute-like phrasing must
        # pick a relation slot, never an attribute slot.
        result, _ = ask(
            fixture_network, lexicon, sim_config,
            "What is the difference between force and pressure?",
        )
        assert result.status == STATUS_ANSWERED
        assert result.matched_slot == (("force", "pressure"), "difference")

    def test_determinism_modulo_ticket_ids(self, fixture_network, lexicon, sim_config):
        for question in ("Define friction.", "What is light?", "thrust zzz qqq www"):
            r1, _ = ask(fixture_network, lexicon, sim_config, question)
            r2, _ = ask(fixture_network, lexicon, sim_config, question)
            assert r1.status == r2.status
            assert r1.matched_entities == r2.matched_entities
            assert r1.matched_slot == r2.matched_slot
            assert r1.confidence == r2.confidence

    def test_every_stored_question_verbatim_hits_its_slot(
        self, fixture_network, lexicon, sim_config
    ):
        queue = TicketQueue()
        matcher = matcher_for_network(fixture_network)
        checked = 0
        for slot_ref, qa in all_stored_questions(fixture_network):
            result = answer_question(
                fixture_network, matcher, lexicon, sim_config, qa.question, queue
            )
            assert result.status == STATUS_ANSWERED, qa.question
            assert result.answer == qa.answer
            assert result.confidence == pytest.approx(1.0, abs=1e-9)
            owner, slot_id = slot_ref
            if isinstance(owner, tuple):
                assert result.matched_slot == (owner, slot_id)
            else:
                assert result.matched_slot == slot_id
                assert result.matched_entities == (owner,)
            checked += 1
        assert checked == 38
        assert len(queue) == 0
