"""Per-category accuracy over a labeled question set.

A question counts as correct only when the engine answers it and the matched
slot is exactly the expected one; pending results count as incorrect.
Evaluation asks run against a throwaway ticket queue so repeated runs leave
no trace in the expert queue.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParseError, UnknownReference
from .matching import matcher_for_network
from .network import ConceptNetwork, canonical_pair
from .retrieval import STATUS_ANSWERED, answer_question, slot_from_doc, slot_to_doc
from .similarity import SimilarityConfig
from .tickets import TicketQueue
from .wordnet import WordNetLexicon

CATEGORIES = ("Definition", "Similarity", "Difference", "Relationship", "Other")


@dataclass(frozen=True)
class LabeledQuestion:
    question: str
    category: str
    expected_entities: tuple[str, ...]
    expected_slot: object

    def to_document(self) -> dict:
        return {
            "question": self.question,
            "category": self.category,
            "expected_entities": list(self.expected_entities),
            "expected_slot": slot_to_doc(self.expected_slot),
        }


def load_question_set(
    document: str, network: ConceptNetwork | None = None
) -> list[LabeledQuestion]:
    """Parse a line-delimited question set; validates references when given
    the target network. Errors carry the 1-based line number."""
    questions = []
    for lineno, line in enumerate(document.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise ParseError(f"line {lineno}: expected an object")
        for key in ("question", "category", "expected_entities", "expected_slot"):
            if key not in doc:
                raise ParseError(f"line {lineno}: missing key {key!r}")
        if doc["category"] not in CATEGORIES:
            raise ParseError(
                f"line {lineno}: unknown category {doc['category']!r} "
                f"(expected one of {list(CATEGORIES)})"
            )
        question = LabeledQuestion(
            question=doc["question"],
            category=doc["category"],
            expected_entities=tuple(doc["expected_entities"]),
            expected_slot=slot_from_doc(doc["expected_slot"]),
        )
        if network is not None:
            _check_references(question, network, lineno)
        questions.append(question)
    return questions


def _check_references(question: LabeledQuestion, network: ConceptNetwork, lineno: int):
    for eid in question.expected_entities:
        if eid not in network.entities:
            raise UnknownReference(
                f"line {lineno}: entity {eid!r} does not exist in the network"
            )
    slot = question.expected_slot
    if isinstance(slot, str):
        if slot not in network.attribute_schema:
            raise UnknownReference(
                f"line {lineno}: attribute slot {slot!r} is not in the schema"
            )
    else:
        (a, b), relation_id = slot
        if relation_id not in network.relation_schema:
            raise UnknownReference(
                f"line {lineno}: relation slot {relation_id!r} is not in the schema"
            )
        if network.edge_between(a, b) is None:
            raise UnknownReference(
                f"line {lineno}: no edge between {a!r} and {b!r}"
            )


@dataclass
class CategoryScore:
    asked: int = 0
    correct: int = 0

    @property
    def accuracy(self) -> float:
        return self.correct / self.asked

    def to_document(self) -> dict:
        return {"asked": self.asked, "correct": self.correct, "accuracy": self.accuracy}


@dataclass
class EvalReport:
    per_category: dict[str, CategoryScore] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    @property
    def asked(self) -> int:
        return sum(score.asked for score in self.per_category.values())

    @property
    def correct(self) -> int:
        return sum(score.correct for score in self.per_category.values())

    @property
    def overall_accuracy(self) -> float:
        return self.correct / self.asked if self.asked else 0.0

    def to_document(self) -> dict:
        return {
            "per_category": {
                name: score.to_document()
                for name, score in sorted(self.per_category.items())
            },
            "overall": {
                "asked": self.asked,
                "correct": self.correct,
                "accuracy": self.overall_accuracy,
            },
            "failures": self.failures,
        }

    def format_table(self) -> str:
        """Aligned-column text table, one row per category plus a total."""
        rows = [("category", "asked", "correct", "accuracy")]
        for name, score in sorted(self.per_category.items()):
            rows.append((name, str(score.asked), str(score.correct), f"{score.accuracy:.2f}"))
        rows.append(("overall", str(self.asked), str(self.correct), f"{self.overall_accuracy:.2f}"))
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        lines = []
        for i, row in enumerate(rows):
            lines.append("  ".join(cell.ljust(widths[j]) for j, cell in enumerate(row)).rstrip())
            if i == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines)


def run_eval(
    network: ConceptNetwork,
    lexicon: WordNetLexicon,
    config: SimilarityConfig,
    questions: list[LabeledQuestion],
) -> EvalReport:
    """Score every labeled question against the network.

    Correct means: answered, and the matched slot is the expected slot.
    """
    matcher = matcher_for_network(network)
    scratch_queue = TicketQueue()
    report = EvalReport()
    for question in questions:
        result = answer_question(
            network, matcher, lexicon, config, question.question, scratch_queue
        )
        score = report.per_category.setdefault(question.category, CategoryScore())
        score.asked += 1
        correct = (
            result.status == STATUS_ANSWERED
            and _same_slot(result.matched_slot, question.expected_slot)
        )
        if correct:
            score.correct += 1
        else:
            result_doc = result.to_document()
            # The scratch queue's ticket ids are discarded with the queue;
            # scrubbing them keeps reports byte-deterministic across runs.
            result_doc["ticket_id"] = None
            report.failures.append(
                {"question": question.to_document(), "result": result_doc}
            )
    return report


def _same_slot(matched, expected) -> bool:
    if isinstance(matched, str) or isinstance(expected, str):
        return matched == expected
    if matched is None or expected is None:
        return matched == expected
    (ma, mb), mslot = matched
    (ea, eb), eslot = expected
    return canonical_pair(ma, mb) == canonical_pair(ea, eb) and mslot == eslot
