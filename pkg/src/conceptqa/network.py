"""Versioned concept-network model.

A network is an immutable snapshot: entities carry one (question, answer)
tuple or NULL per attribute slot, edges carry one tuple or NULL per relation
slot, and the slot schemas are fixed for the lifetime of the network. Every
mutating operation returns a new snapshot with ``version`` incremented by
exactly one.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import (
    DuplicateSlotId,
    EmptyId,
    InvariantViolation,
    ParseError,
    SchemaMismatch,
    SelfLoop,
    SurfaceFormCollision,
    UnknownEntity,
    UnknownRelationSlot,
    UnknownTopic,
)

FORMAT_VERSION = 1

_SLOT_ID_RE = re.compile(r"^[a-z][a-z0-9_]*$")
_NETWORK_ID_RE = re.compile(r"^[a-z0-9][a-z0-9_-]*$")


def normalize_surface_form(text: str) -> str:
    """Lowercase and collapse runs of whitespace to single spaces."""
    return " ".join(text.lower().split())


@dataclass(frozen=True)
class QATuple:
    """A stored question and its answer."""

    question: str
    answer: str

    def __post_init__(self):
        if not self.question.strip():
            raise InvariantViolation("question", "must be non-empty")
        if not self.answer.strip():
            raise InvariantViolation("answer", "must be non-empty")


@dataclass(frozen=True)
class SchemaSlot:
    id: str
    prompt_hint: str = ""

    def __post_init__(self):
        if not _SLOT_ID_RE.match(self.id):
            raise InvariantViolation(
                f"slot {self.id!r}", "slot ids must be lowercase tokens"
            )


@dataclass(frozen=True)
class SlotSchema:
    """Ordered, immutable list of slots shared by every entity (or edge)."""

    slots: tuple[SchemaSlot, ...]

    def __post_init__(self):
        seen = set()
        for slot in self.slots:
            if slot.id in seen:
                raise DuplicateSlotId(f"duplicate slot id {slot.id!r}")
            seen.add(slot.id)

    @property
    def slot_ids(self) -> tuple[str, ...]:
        return tuple(slot.id for slot in self.slots)

    def __iter__(self) -> Iterator[SchemaSlot]:
        return iter(self.slots)

    def __contains__(self, slot_id: str) -> bool:
        return any(slot.id == slot_id for slot in self.slots)

    @classmethod
    def of(cls, *pairs: tuple[str, str]) -> "SlotSchema":
        return cls(tuple(SchemaSlot(sid, hint) for sid, hint in pairs))


def default_attribute_schema() -> SlotSchema:
    """Editable default attribute slots for course-material networks."""
    return SlotSchema.of(
        ("definition", "What is this concept?"),
        ("example", "Give an example of this concept."),
        ("properties", "What are its properties?"),
        ("types", "What are its types or kinds?"),
        ("cause_effect", "What causes it, or what does it cause?"),
    )


def default_relation_schema() -> SlotSchema:
    """Editable default relation slots between two concepts."""
    return SlotSchema.of(
        ("difference", "How do the two concepts differ?"),
        ("similarity", "How are the two concepts similar?"),
        ("dependency", "How does one concept depend on the other?"),
    )


@dataclass(frozen=True)
class Entity:
    """A concept node with a total slot -> QATuple-or-NULL map."""

    id: str
    name: str
    aliases: tuple[str, ...]
    topic: str
    attributes: dict[str, QATuple | None]

    def surface_forms(self) -> tuple[str, ...]:
        return (self.name,) + self.aliases

    def normalized_forms(self) -> tuple[str, ...]:
        return tuple(normalize_surface_form(f) for f in self.surface_forms())


@dataclass(frozen=True)
class Edge:
    """Unordered entity pair with a total relation-slot map.

    Stored canonically: ``a`` is the lexicographically smaller entity id.
    """

    a: str
    b: str
    relations: dict[str, QATuple | None]

    @property
    def pair(self) -> tuple[str, str]:
        return (self.a, self.b)


def canonical_pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class ConceptNetwork:
    id: str
    name: str
    topics: tuple[str, ...]
    attribute_schema: SlotSchema
    relation_schema: SlotSchema
    entities: dict[str, Entity] = field(default_factory=dict)
    edges: dict[tuple[str, str], Edge] = field(default_factory=dict)
    version: int = 1

    def edge_between(self, a: str, b: str) -> Edge | None:
        """Edge for the unordered pair, regardless of argument order."""
        return self.edges.get(canonical_pair(a, b))


# ---------------------------------------------------------------------------
# Operations (each returns a new snapshot; inputs are never mutated)
# ---------------------------------------------------------------------------

def new_network(
    network_id: str,
    name: str,
    topics: list[str] | tuple[str, ...],
    attribute_schema: SlotSchema,
    relation_schema: SlotSchema,
) -> ConceptNetwork:
    if not network_id or not network_id.strip():
        raise EmptyId("network id must be non-empty")
    if not _NETWORK_ID_RE.match(network_id):
        raise InvariantViolation(
            "id", f"{network_id!r} is not a lowercase slug"
        )
    return ConceptNetwork(
        id=network_id,
        name=name,
        topics=tuple(topics),
        attribute_schema=attribute_schema,
        relation_schema=relation_schema,
    )


def _ordered_attributes(
    schema: SlotSchema, attributes: Mapping[str, QATuple | None]
) -> dict[str, QATuple | None]:
    """Validate the map covers exactly the schema and reorder to schema order."""
    expected = set(schema.slot_ids)
    actual = set(attributes)
    if actual != expected:
        missing = sorted(expected - actual)
        extra = sorted(actual - expected)
        raise SchemaMismatch(
            f"attribute keys must match the schema exactly "
            f"(missing={missing}, extra={extra})"
        )
    return {sid: attributes[sid] for sid in schema.slot_ids}


def upsert_entity(network: ConceptNetwork, entity: Entity) -> ConceptNetwork:
    """Insert or replace an entity by id; bumps the version."""
    if not entity.id.strip():
        raise EmptyId("entity id must be non-empty")
    if entity.topic not in network.topics:
        raise UnknownTopic(
            f"topic {entity.topic!r} is not one of {list(network.topics)}"
        )
    forms = entity.normalized_forms()
    if not entity.name.strip():
        raise InvariantViolation(f"entities[{entity.id}].name", "must be non-empty")
    if len(set(forms)) != len(forms):
        raise SurfaceFormCollision(
            f"entity {entity.id!r} repeats a surface form among name and aliases"
        )
    for other in network.entities.values():
        if other.id == entity.id:
            continue
        clash = set(forms) & set(other.normalized_forms())
        if clash:
            raise SurfaceFormCollision(
                f"form(s) {sorted(clash)} already map to entity {other.id!r}"
            )
    attributes = _ordered_attributes(network.attribute_schema, entity.attributes)
    stored = Entity(
        id=entity.id,
        name=entity.name,
        aliases=tuple(entity.aliases),
        topic=entity.topic,
        attributes=attributes,
    )
    entities = dict(network.entities)
    entities[stored.id] = stored
    return ConceptNetwork(
        id=network.id,
        name=network.name,
        topics=network.topics,
        attribute_schema=network.attribute_schema,
        relation_schema=network.relation_schema,
        entities=entities,
        edges=network.edges,
        version=network.version + 1,
    )


def upsert_edge_relation(
    network: ConceptNetwork,
    entity_a: str,
    entity_b: str,
    relation_id: str,
    qa_or_null: QATuple | None,
) -> ConceptNetwork:
    """Set one relation slot on the edge for the unordered pair; bumps the version.

    Creates the edge (all other slots NULL) when the pair has none yet.
    """
    if entity_a == entity_b:
        raise SelfLoop(f"cannot relate entity {entity_a!r} to itself")
    for eid in (entity_a, entity_b):
        if eid not in network.entities:
            raise UnknownEntity(f"no entity with id {eid!r}")
    if relation_id not in network.relation_schema:
        raise UnknownRelationSlot(
            f"relation slot {relation_id!r} is not in the schema"
        )
    a, b = canonical_pair(entity_a, entity_b)
    existing = network.edges.get((a, b))
    if existing is not None:
        relations = dict(existing.relations)
    else:
        relations = {sid: None for sid in network.relation_schema.slot_ids}
    relations[relation_id] = qa_or_null
    edges = dict(network.edges)
    edges[(a, b)] = Edge(a=a, b=b, relations=relations)
    return ConceptNetwork(
        id=network.id,
        name=network.name,
        topics=network.topics,
        attribute_schema=network.attribute_schema,
        relation_schema=network.relation_schema,
        entities=network.entities,
        edges=edges,
        version=network.version + 1,
    )


def entity_dictionary(network: ConceptNetwork) -> list[tuple[str, str]]:
    """All (normalized surface form, entity id) pairs, sorted by form."""
    entries = []
    for entity in network.entities.values():
        for form in entity.normalized_forms():
            entries.append((form, entity.id))
    entries.sort()
    return entries


# ---------------------------------------------------------------------------
# Canonical document serialization
# ---------------------------------------------------------------------------

def _qa_to_doc(qa: QATuple | None) -> dict | None:
    if qa is None:
        return None
    return {"question": qa.question, "answer": qa.answer}


def to_document(network: ConceptNetwork) -> dict:
    """Plain-dict form of the network, lists in canonical order."""
    return {
        "format_version": FORMAT_VERSION,
        "id": network.id,
        "name": network.name,
        "topics": list(network.topics),
        "attribute_schema": [
            {"id": s.id, "prompt_hint": s.prompt_hint}
            for s in network.attribute_schema
        ],
        "relation_schema": [
            {"id": s.id, "prompt_hint": s.prompt_hint}
            for s in network.relation_schema
        ],
        "entities": [
            {
                "id": e.id,
                "name": e.name,
                "aliases": list(e.aliases),
                "topic": e.topic,
                "attributes": {
                    sid: _qa_to_doc(qa) for sid, qa in e.attributes.items()
                },
            }
            for e in sorted(network.entities.values(), key=lambda e: e.id)
        ],
        "edges": [
            {
                "a": edge.a,
                "b": edge.b,
                "relations": {
                    sid: _qa_to_doc(qa) for sid, qa in edge.relations.items()
                },
            }
            for edge in sorted(network.edges.values(), key=lambda e: e.pair)
        ],
        "version": network.version,
    }


def serialize(network: ConceptNetwork) -> str:
    """Deterministic canonical text: sorted keys, canonical list orders."""
    return json.dumps(to_document(network), sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


def _require(doc: dict, key: str, kind: type, path: str):
    if key not in doc:
        raise ParseError(f"{path}: missing key {key!r}")
    value = doc[key]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ParseError(f"{path}.{key}: expected a number")
    elif not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ParseError(f"{path}.{key}: expected {kind.__name__}")
    return value


def _qa_from_doc(doc, path: str) -> QATuple | None:
    if doc is None:
        return None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected an object or null")
    question = _require(doc, "question", str, path)
    answer = _require(doc, "answer", str, path)
    try:
        return QATuple(question=question, answer=answer)
    except InvariantViolation as exc:
        raise InvariantViolation(f"{path}.{exc.path}", exc.reason) from None


def _schema_from_doc(doc, path: str) -> SlotSchema:
    if not isinstance(doc, list):
        raise ParseError(f"{path}: expected a list")
    slots = []
    seen = set()
    for i, item in enumerate(doc):
        if not isinstance(item, dict):
            raise ParseError(f"{path}[{i}]: expected an object")
        sid = _require(item, "id", str, f"{path}[{i}]")
        hint = _require(item, "prompt_hint", str, f"{path}[{i}]")
        if sid in seen:
            raise InvariantViolation(f"{path}[{i}].id", f"duplicate slot id {sid!r}")
        seen.add(sid)
        try:
            slots.append(SchemaSlot(sid, hint))
        except InvariantViolation:
            raise InvariantViolation(
                f"{path}[{i}].id", f"{sid!r} is not a lowercase token"
            ) from None
    return SlotSchema(tuple(slots))


def _slot_map_from_doc(doc, schema: SlotSchema, path: str) -> dict[str, QATuple | None]:
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected an object")
    expected = set(schema.slot_ids)
    if set(doc) != expected:
        missing = sorted(expected - set(doc))
        extra = sorted(set(doc) - expected)
        raise InvariantViolation(
            path, f"slot keys must match the schema (missing={missing}, extra={extra})"
        )
    return {sid: _qa_from_doc(doc[sid], f"{path}.{sid}") for sid in schema.slot_ids}


def from_document(doc: dict) -> ConceptNetwork:
    """Build and fully validate a network from its plain-dict document."""
    if not isinstance(doc, dict):
        raise ParseError("document: expected a JSON object")
    fv = _require(doc, "format_version", int, "document")
    if fv != FORMAT_VERSION:
        raise ParseError(f"document.format_version: unsupported version {fv}")
    network_id = _require(doc, "id", str, "document")
    if not _NETWORK_ID_RE.match(network_id):
        raise InvariantViolation("id", f"{network_id!r} is not a lowercase slug")
    name = _require(doc, "name", str, "document")
    topics = _require(doc, "topics", list, "document")
    if not all(isinstance(t, str) for t in topics):
        raise ParseError("document.topics: expected a list of strings")
    attribute_schema = _schema_from_doc(doc.get("attribute_schema"), "attribute_schema")
    relation_schema = _schema_from_doc(doc.get("relation_schema"), "relation_schema")
    version = _require(doc, "version", int, "document")
    if version < 1:
        raise InvariantViolation("version", "must be >= 1")

    entity_docs = _require(doc, "entities", list, "document")
    entities: dict[str, Entity] = {}
    seen_forms: dict[str, str] = {}
    for i, edoc in enumerate(entity_docs):
        path = f"entities[{i}]"
        if not isinstance(edoc, dict):
            raise ParseError(f"{path}: expected an object")
        eid = _require(edoc, "id", str, path)
        ename = _require(edoc, "name", str, path)
        aliases = _require(edoc, "aliases", list, path)
        topic = _require(edoc, "topic", str, path)
        if not eid.strip():
            raise InvariantViolation(f"{path}.id", "must be non-empty")
        if not ename.strip():
            raise InvariantViolation(f"{path}.name", "must be non-empty")
        if eid in entities:
            raise InvariantViolation(f"{path}.id", f"duplicate entity id {eid!r}")
        if topic not in topics:
            raise InvariantViolation(
                f"{path}.topic", f"{topic!r} is not in the network topics"
            )
        if not all(isinstance(a, str) for a in aliases):
            raise ParseError(f"{path}.aliases: expected a list of strings")
        entity = Entity(
            id=eid,
            name=ename,
            aliases=tuple(aliases),
            topic=topic,
            attributes=_slot_map_from_doc(
                edoc.get("attributes"), attribute_schema, f"{path}.attributes"
            ),
        )
        forms = entity.normalized_forms()
        if len(set(forms)) != len(forms):
            raise InvariantViolation(
                f"{path}.aliases", "surface forms repeat within the entity"
            )
        for form in forms:
            if form in seen_forms:
                raise InvariantViolation(
                    f"{path}", f"surface form {form!r} already maps to "
                    f"entity {seen_forms[form]!r}"
                )
            seen_forms[form] = eid
        entities[eid] = entity

    edge_docs = _require(doc, "edges", list, "document")
    edges: dict[tuple[str, str], Edge] = {}
    for i, gdoc in enumerate(edge_docs):
        path = f"edges[{i}]"
        if not isinstance(gdoc, dict):
            raise ParseError(f"{path}: expected an object")
        a = _require(gdoc, "a", str, path)
        b = _require(gdoc, "b", str, path)
        if a == b:
            raise InvariantViolation(path, "edge endpoints must be distinct")
        if a > b:
            raise InvariantViolation(
                path, f"pair ({a!r}, {b!r}) is not in canonical order"
            )
        for eid in (a, b):
            if eid not in entities:
                raise InvariantViolation(
                    f"{path}", f"edge references unknown entity {eid!r}"
                )
        if (a, b) in edges:
            raise InvariantViolation(path, f"duplicate edge for pair ({a!r}, {b!r})")
        edges[(a, b)] = Edge(
            a=a,
            b=b,
            relations=_slot_map_from_doc(
                gdoc.get("relations"), relation_schema, f"{path}.relations"
            ),
        )

    return ConceptNetwork(
        id=network_id,
        name=name,
        topics=tuple(topics),
        attribute_schema=attribute_schema,
        relation_schema=relation_schema,
        entities=entities,
        edges=edges,
        version=version,
    )


def deserialize(document: str) -> ConceptNetwork:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return from_document(doc)


def all_stored_questions(network: ConceptNetwork) -> Iterator[tuple[object, QATuple]]:
    """Every non-NULL slot as (slot reference, tuple).

    Attribute slots yield ``(entity_id, slot_id)`` and relation slots yield
    ``((a, b), slot_id)`` references.
    """
    for entity in network.entities.values():
        for sid, qa in entity.attributes.items():
            if qa is not None:
                yield (entity.id, sid), qa
    for edge in network.edges.values():
        for sid, qa in edge.relations.items():
            if qa is not None:
                yield (edge.pair, sid), qa
