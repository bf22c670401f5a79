#!/usr/bin/env python3
"""Regenerate the bundled "Force and Pressure" network fixture.

Builds the network through the public mutation API so the frozen document is
guaranteed to be canonical and invariant-clean, then writes it to
src/conceptqa/fixtures/force_pressure.network.json.
"""

from __future__ import annotations

from pathlib import Path

from conceptqa.network import (
    QATuple,
    Entity,
    default_attribute_schema,
    default_relation_schema,
    new_network,
    serialize,
    upsert_edge_relation,
    upsert_entity,
)

FIXTURE_PATH = (
    Path(__file__).resolve().parent.parent
    / "src" / "conceptqa" / "fixtures" / "force_pressure.network.json"
)

ATTRIBUTE_SLOTS = ("definition", "example", "properties", "types", "cause_effect")


def entity(eid, name, topic, aliases=(), **filled):
    attributes = {slot: None for slot in ATTRIBUTE_SLOTS}
    for slot, (question, answer) in filled.items():
        attributes[slot] = QATuple(question=question, answer=answer)
    return Entity(
        id=eid, name=name, aliases=tuple(aliases), topic=topic, attributes=attributes
    )


ENTITIES = [
    entity(
        "force", "force", "forces", aliases=("forces",),
        definition=("What is force?",
                    "A force is a push or a pull acting on an object."),
        example=("Give an example of force in daily life.",
                 "Kicking a football: the foot pushes the ball and sets it moving."),
        properties=("What are the properties of force?",
                    "A force has both magnitude and direction, and at least two "
                    "objects must interact for it to come into play."),
        types=("What are the types of force?",
               "Forces are of two main kinds: contact forces and non contact forces."),
        cause_effect=("What happens when force is applied to an object?",
                      "An applied force can change the object's state of motion or "
                      "its shape."),
    ),
    entity(
        "contact force", "contact force", "forces", aliases=("contact forces",),
        definition=("What is contact force?",
                    "A contact force acts on a body only when the body and the "
                    "agent are touching each other."),
        example=("Give an example of contact force.",
                 "Pulling a trolley by hand: the hand must touch the trolley."),
        types=("What are the types of contact force?",
               "Muscular force and friction are the common contact forces."),
    ),
    entity(
        "non contact force", "non contact force", "forces",
        aliases=("non contact forces", "non-contact force"),
        definition=("What is non contact force?",
                    "A non contact force acts on an object without touching it, "
                    "from a distance."),
        example=("Give an example of non contact force.",
                 "A magnet pulls an iron pin without touching it."),
        types=("What are the types of non contact force?",
               "Magnetic force, electrostatic force and gravitational force are "
               "non contact forces."),
    ),
    entity(
        "muscular force", "muscular force", "forces",
        definition=("What is muscular force?",
                    "Muscular force is the force exerted by the muscles of a body."),
        example=("Give an example of muscular force.",
                 "Lifting a bucket of water uses the muscular force of your arms."),
    ),
    entity(
        "friction", "friction", "forces",
        aliases=("frictional force", "force of friction"),
        definition=("What is friction?",
                    "Friction is the force that opposes the motion of one surface "
                    "over another surface in contact with it."),
        properties=("What are the properties of friction?",
                    "Friction always acts opposite to the direction of motion and "
                    "depends on the roughness of the surfaces in contact."),
        cause_effect=("What causes friction?",
                      "Friction is caused by the irregularities of the two surfaces "
                      "in contact, which lock into one another."),
    ),
    entity(
        "magnetic force", "magnetic force", "forces",
        definition=("What is magnetic force?",
                    "Magnetic force is the force exerted by a magnet on another "
                    "magnet or on magnetic materials like iron."),
        example=("Give an example of magnetic force.",
                 "A fridge magnet holds itself against the iron door."),
    ),
    entity(
        "electrostatic force", "electrostatic force", "forces",
        definition=("What is electrostatic force?",
                    "Electrostatic force is the force exerted by a charged body on "
                    "another charged or uncharged body."),
        cause_effect=("What causes electrostatic force?",
                      "Electric charge on a body attracts or repels nearby bodies, "
                      "as a rubbed plastic comb attracts bits of paper."),
    ),
    entity(
        "gravitational force", "gravitational force", "forces",
        aliases=("gravity", "force of gravity"),
        definition=("What is gravitational force?",
                    "Gravitational force is the attractive force with which the "
                    "earth pulls every object towards itself."),
        example=("Give an example of gravitational force.",
                 "A coin dropped from a height falls to the ground because the "
                 "earth attracts it."),
    ),
    entity(
        "pressure", "pressure", "pressure",
        definition=("What is pressure?",
                    "Pressure is the force acting on a unit area of a surface."),
        example=("Give an example of pressure in daily life.",
                 "A sharp knife cuts well because the applied push acts on a very "
                 "small area of the blade edge."),
        cause_effect=("What happens to pressure when area decreases?",
                      "For the same applied push, a smaller area means larger "
                      "pressure; that is why nails have pointed tips."),
    ),
    entity(
        "atmospheric pressure", "atmospheric pressure", "pressure",
        definition=("What is atmospheric pressure?",
                    "Atmospheric pressure is the pressure exerted by the envelope "
                    "of air surrounding the earth."),
        cause_effect=("Why do we not feel atmospheric pressure?",
                      "The pressure inside our bodies balances the pressure of the "
                      "air outside, so the two cancel out."),
    ),
    entity(
        "thrust", "thrust", "pressure",
        definition=("What is thrust?",
                    "Thrust is the force acting on an object perpendicular to its "
                    "surface."),
        example=("Give an example of thrust.",
                 "Your weight pressing down on the ground while you stand is a "
                 "thrust on the ground."),
    ),
]

RELATIONS = [
    ("contact force", "non contact force", "difference",
     "What is the difference between contact force and non contact force?",
     "A contact force acts only when the bodies touch, while a non contact "
     "force acts from a distance without touching."),
    ("contact force", "non contact force", "similarity",
     "How are contact force and non contact force similar?",
     "Both are forces: each can change the state of motion or the shape of "
     "an object."),
    ("force", "pressure", "dependency",
     "How does pressure depend on force?",
     "Pressure grows with the applied force: pressure is the force acting "
     "per unit area."),
    ("force", "pressure", "difference",
     "What is the difference between force and pressure?",
     "Force is the push or pull itself, while pressure is that force spread "
     "over the area it acts on."),
    ("friction", "muscular force", "similarity",
     "How are muscular force and friction similar?",
     "Both are contact forces: they act only when surfaces or bodies touch."),
    ("electrostatic force", "magnetic force", "similarity",
     "How similar are magnetic force and electrostatic force?",
     "Both are non contact forces that can attract or repel from a distance."),
    ("electrostatic force", "magnetic force", "difference",
     "What is the difference between magnetic force and electrostatic force?",
     "Magnetic force acts on magnets and magnetic materials, while "
     "electrostatic force acts on charged bodies."),
    ("atmospheric pressure", "pressure", "difference",
     "What is the difference between pressure and atmospheric pressure?",
     "Pressure is force per unit area in general, while atmospheric pressure "
     "is specifically the pressure of the air column around the earth."),
    ("force", "friction", "dependency",
     "How does friction depend on force?",
     "Friction increases when the force pressing the two surfaces together "
     "increases."),
]


def build():
    network = new_network(
        "force-pressure",
        "Force and Pressure",
        ["forces", "pressure"],
        default_attribute_schema(),
        default_relation_schema(),
    )
    for ent in ENTITIES:
        network = upsert_entity(network, ent)
    for a, b, slot, question, answer in RELATIONS:
        network = upsert_edge_relation(
            network, a, b, slot, QATuple(question=question, answer=answer)
        )
    return network


def main():
    network = build()
    filled_attrs = sum(
        1 for e in network.entities.values() for qa in e.attributes.values() if qa
    )
    filled_rels = sum(
        1 for g in network.edges.values() for qa in g.relations.values() if qa
    )
    FIXTURE_PATH.write_text(serialize(network), encoding="utf-8")
    print(
        f"wrote {FIXTURE_PATH.name}: {len(network.entities)} entities, "
        f"{len(network.edges)} edges, {filled_attrs}+{filled_rels} filled slots, "
        f"version {network.version}"
    )


if __name__ == "__main__":
    main()
