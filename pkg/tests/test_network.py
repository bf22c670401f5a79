import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conceptqa.errors import (
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
from conceptqa.network import (
    Entity,
    QATuple,
    SchemaSlot,
    SlotSchema,
    canonical_pair,
    default_attribute_schema,
    default_relation_schema,
    deserialize,
    entity_dictionary,
    from_document,
    new_network,
    serialize,
    to_document,
    upsert_edge_relation,
    upsert_entity,
)


def make_network(**kwargs):
    defaults = dict(
        network_id="force8",
        name="Force and Pressure",
        topics=["forces", "pressure"],
        attribute_schema=default_attribute_schema(),
        relation_schema=default_relation_schema(),
    )
    defaults.update(kwargs)
    return new_network(**defaults)


def make_entity(network, eid, name=None, aliases=(), topic="forces", **filled):
    attributes = {sid: None for sid in network.attribute_schema.slot_ids}
    for sid, (q, a) in filled.items():
        attributes[sid] = QATuple(q, a)
    return Entity(
        id=eid, name=name or eid, aliases=tuple(aliases), topic=topic,
        attributes=attributes,
    )


class TestConstruction:
    def test_new_network_is_empty_at_version_1(self):
        net = make_network()
        assert net.version == 1
        assert net.entities == {} and net.edges == {}

    def test_duplicate_slot_id_rejected(self):
        with pytest.raises(DuplicateSlotId):
            SlotSchema.of(("definition", ""), ("definition", "again"))

    def test_empty_network_id_rejected(self):
        with pytest.raises(EmptyId):
            make_network(network_id="")

    def test_slot_ids_must_be_lowercase_tokens(self):
        with pytest.raises(InvariantViolation):
            SchemaSlot("Definition", "")

    def test_qa_tuple_fields_must_be_non_empty(self):
        with pytest.raises(InvariantViolation):
            QATuple("  ", "answer")
        with pytest.raises(InvariantViolation):
            QATuple("question", "\t\n")


class TestUpsertEntity:
    def test_insert_bumps_version(self):
        net = make_network()
        net2 = upsert_entity(net, make_entity(net, "force"))
        assert net2.version == 2
        assert "force" in net2.entities
        assert net.entities == {}, "original snapshot untouched"

    def test_replace_keeps_single_record(self):
        net = make_network()
        net = upsert_entity(net, make_entity(net, "force"))
        net = upsert_entity(
            net, make_entity(net, "force", definition=("What is force?", "a push"))
        )
        assert len(net.entities) == 1
        assert net.version == 3
        assert net.entities["force"].attributes["definition"] is not None

    def test_schema_mismatch_on_extra_key(self):
        net = make_network()
        entity = make_entity(net, "force")
        entity.attributes["history"] = None
        with pytest.raises(SchemaMismatch):
            upsert_entity(net, entity)

    def test_schema_mismatch_on_missing_key(self):
        net = make_network()
        entity = make_entity(net, "force")
        del entity.attributes["types"]
        with pytest.raises(SchemaMismatch):
            upsert_entity(net, entity)

    def test_surface_form_collision_across_entities(self):
        net = make_network()
        net = upsert_entity(net, make_entity(net, "force"))
        with pytest.raises(SurfaceFormCollision):
            upsert_entity(net, make_entity(net, "pressure", aliases=("Force",)))

    def test_surface_form_collision_within_entity(self):
        net = make_network()
        with pytest.raises(SurfaceFormCollision):
            upsert_entity(net, make_entity(net, "force", aliases=("FORCE",)))

    def test_unknown_topic_rejected(self):
        net = make_network()
        with pytest.raises(UnknownTopic):
            upsert_entity(net, make_entity(net, "light", topic="optics"))

    def test_attributes_reordered_to_schema_order(self):
        net = make_network()
        entity = make_entity(net, "force")
        scrambled = dict(reversed(list(entity.attributes.items())))
        net = upsert_entity(
            net,
            Entity(id="force", name="force", aliases=(), topic="forces",
                   attributes=scrambled),
        )
        assert tuple(net.entities["force"].attributes) == net.attribute_schema.slot_ids


class TestUpsertEdgeRelation:
    @pytest.fixture()
    def net(self):
        net = make_network()
        net = upsert_entity(net, make_entity(net, "contact force"))
        net = upsert_entity(net, make_entity(net, "non contact force"))
        return net

    def test_fill_one_slot_leaves_others_null(self, net):
        qa = QATuple("What is the difference between them?", "one needs touch")
        net2 = upsert_edge_relation(
            net, "non contact force", "contact force", "difference", qa
        )
        edge = net2.edges[("contact force", "non contact force")]
        assert edge.relations["difference"] == qa
        assert edge.relations["similarity"] is None
        assert edge.relations["dependency"] is None
        assert net2.version == net.version + 1

    def test_pair_stored_canonically_and_queryable_both_ways(self, net):
        qa = QATuple("How are they similar?", "both are forces")
        net2 = upsert_edge_relation(
            net, "non contact force", "contact force", "similarity", qa
        )
        assert net2.edge_between("contact force", "non contact force") is not None
        assert net2.edge_between("non contact force", "contact force") is not None
        (edge,) = net2.edges.values()
        assert edge.a < edge.b

    def test_unknown_relation_slot(self, net):
        with pytest.raises(UnknownRelationSlot):
            upsert_edge_relation(
                net, "contact force", "non contact force", "causes",
                QATuple("q", "a"),
            )

    def test_self_loop_rejected(self, net):
        with pytest.raises(SelfLoop):
            upsert_edge_relation(
                net, "contact force", "contact force", "difference", QATuple("q", "a")
            )

    def test_unknown_entity_rejected(self, net):
        with pytest.raises(UnknownEntity):
            upsert_edge_relation(
                net, "contact force", "light", "difference", QATuple("q", "a")
            )


class TestEntityDictionary:
    def test_names_and_aliases_enumerated_sorted(self):
        net = make_network()
        net = upsert_entity(net, make_entity(net, "force", aliases=("forces",)))
        net = upsert_entity(net, make_entity(net, "non contact force"))
        assert entity_dictionary(net) == [
            ("force", "force"),
            ("forces", "force"),
            ("non contact force", "non contact force"),
        ]

    def test_empty_network(self):
        assert entity_dictionary(make_network()) == []

    def test_forms_are_normalized(self):
        net = make_network()
        net = upsert_entity(net, make_entity(net, "contact-force", name="Contact  Force"))
        assert entity_dictionary(net) == [("contact force", "contact-force")]


class TestSerialization:
    def test_round_trip_is_byte_fixpoint(self, fixture_document):
        network = deserialize(fixture_document)
        assert serialize(network) == fixture_document
        assert serialize(deserialize(serialize(network))) == serialize(network)

    def test_round_trip_preserves_structure(self, fixture_network):
        again = deserialize(serialize(fixture_network))
        assert again == fixture_network

    def test_unknown_format_version(self, fixture_network):
        doc = to_document(fixture_network)
        doc["format_version"] = 999
        with pytest.raises(ParseError):
            from_document(doc)

    def test_malformed_json(self):
        with pytest.raises(ParseError):
            deserialize("{not json")

    def test_edge_referencing_unknown_entity(self, fixture_network):
        doc = to_document(fixture_network)
        doc["edges"][0]["a"] = "aaa-not-there"
        with pytest.raises(InvariantViolation) as err:
            from_document(doc)
        assert "edges[0]" in err.value.path

    def test_non_canonical_pair_rejected(self, fixture_network):
        doc = to_document(fixture_network)
        edge = doc["edges"][0]
        edge["a"], edge["b"] = edge["b"], edge["a"]
        with pytest.raises(InvariantViolation):
            from_document(doc)

    def test_duplicate_surface_form_rejected_with_path(self, fixture_network):
        doc = to_document(fixture_network)
        doc["entities"][1]["aliases"].append(doc["entities"][0]["name"])
        with pytest.raises(InvariantViolation) as err:
            from_document(doc)
        assert "entities[1]" in err.value.path

    def test_missing_slot_key_rejected(self, fixture_network):
        doc = to_document(fixture_network)
        del doc["entities"][0]["attributes"]["definition"]
        with pytest.raises(InvariantViolation):
            from_document(doc)

    def test_serialization_is_deterministic(self, fixture_network):
        assert serialize(fixture_network) == serialize(fixture_network)
        parsed = json.loads(serialize(fixture_network))
        ids = [e["id"] for e in parsed["entities"]]
        assert ids == sorted(ids)
        pairs = [(e["a"], e["b"]) for e in parsed["edges"]]
        assert pairs == sorted(pairs)


# -- property tests ---------------------------------------------------------

slot_ids = st.lists(
    st.from_regex(r"[a-z][a-z0-9_]{0,8}", fullmatch=True),
    min_size=1, max_size=6, unique=True,
)
entity_ids = st.lists(
    st.from_regex(r"[a-z][a-z ]{0,10}", fullmatch=True).map(lambda s: " ".join(s.split())).filter(bool),
    min_size=1, max_size=8, unique=True,
)


@settings(max_examples=60, deadline=None)
@given(slots=slot_ids, eids=entity_ids, data=st.data())
def test_upsert_always_covers_schema_and_counts_versions(slots, eids, data):
    schema = SlotSchema.of(*[(sid, "") for sid in slots])
    net = new_network("prop", "prop", ["topic"], schema, default_relation_schema())
    mutations = 0
    for eid in eids:
        filled = {
            sid: QATuple(f"q {sid}", f"a {sid}")
            for sid in slots
            if data.draw(st.booleans(), label=f"fill {eid}/{sid}")
        }
        attributes = {sid: filled.get(sid) for sid in slots}
        net = upsert_entity(
            net,
            Entity(id=eid, name=eid, aliases=(), topic="topic", attributes=attributes),
        )
        mutations += 1
        stored = net.entities[eid]
        assert tuple(stored.attributes) == schema.slot_ids
    assert net.version == 1 + mutations


@settings(max_examples=40, deadline=None)
@given(
    pair=st.lists(
        st.from_regex(r"[a-z]{1,8}", fullmatch=True), min_size=2, max_size=2,
        unique=True,
    )
)
def test_edge_pairs_canonical_for_random_ids(pair):
    a, b = pair
    net = make_network()
    net = upsert_entity(net, make_entity(net, a))
    net = upsert_entity(net, make_entity(net, b))
    net = upsert_edge_relation(net, a, b, "difference", QATuple("q", "ans"))
    net = upsert_edge_relation(net, b, a, "similarity", QATuple("q2", "ans2"))
    assert len(net.edges) == 1
    assert net.edge_between(a, b) is net.edge_between(b, a)
    assert canonical_pair(a, b) in net.edges
