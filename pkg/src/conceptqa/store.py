"""Single-writer store of network snapshots with audit log and persistence.

Snapshots are immutable; every mutation is an atomic version-to-version
transition guarded by an expected version (optimistic concurrency). Each
successful mutation appends one audit record, and replaying the audit log
from its first import record reconstructs the current snapshot exactly.

On disk a network occupies three files in the data directory:
``<id>.network.json`` (canonical snapshot), ``<id>.audit.jsonl`` (append-only
mutation log) and ``<id>.tickets.json`` (expert queue state).
"""

from __future__ import annotations

import json
import os
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import network as nw
from .errors import InvariantViolation, ParseError, UnknownEntity, UnknownNetwork, VersionConflict
from .network import ConceptNetwork, Entity, QATuple
from .tickets import TicketQueue


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class AuditRecord:
    seq: int
    actor: str
    at: str
    action: dict
    version_before: int | None
    version_after: int

    def to_document(self) -> dict:
        return {
            "seq": self.seq,
            "actor": self.actor,
            "at": self.at,
            "action": self.action,
            "version_before": self.version_before,
            "version_after": self.version_after,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "AuditRecord":
        return cls(
            seq=doc["seq"],
            actor=doc["actor"],
            at=doc["at"],
            action=doc["action"],
            version_before=doc["version_before"],
            version_after=doc["version_after"],
        )


def _qa_from_doc(doc) -> QATuple | None:
    if doc is None:
        return None
    return QATuple(question=doc["question"], answer=doc["answer"])


def entity_from_doc(doc: dict) -> Entity:
    attributes = doc.get("attributes")
    if not isinstance(attributes, dict):
        raise ParseError("entity.attributes: expected an object")
    return Entity(
        id=doc["id"],
        name=doc["name"],
        aliases=tuple(doc.get("aliases", ())),
        topic=doc["topic"],
        attributes={sid: _qa_from_doc(qa) for sid, qa in attributes.items()},
    )


def apply_action(network: ConceptNetwork, action: dict) -> ConceptNetwork:
    """Apply one non-import audit action to a snapshot (used for replay)."""
    op = action.get("op")
    if op == "upsert_entity":
        return nw.upsert_entity(network, entity_from_doc(action["entity"]))
    if op == "upsert_edge_relation":
        return nw.upsert_edge_relation(
            network,
            action["a"],
            action["b"],
            action["slot"],
            _qa_from_doc(action["qa"]),
        )
    raise ParseError(f"unknown audit action {op!r}")


def replay_audit(records: list[AuditRecord]) -> ConceptNetwork:
    """Reconstruct the snapshot the audit log describes.

    The log must begin with an import record; later imports reset the base.
    """
    network: ConceptNetwork | None = None
    for record in records:
        if record.action.get("op") == "import":
            network = nw.from_document(record.action["document"])
        else:
            if network is None:
                raise InvariantViolation(
                    f"audit[{record.seq}]", "mutation precedes any import record"
                )
            network = apply_action(network, record.action)
        if network.version != record.version_after:
            raise InvariantViolation(
                f"audit[{record.seq}]",
                f"replayed version {network.version} does not match "
                f"recorded {record.version_after}",
            )
    if network is None:
        raise InvariantViolation("audit", "log is empty")
    return network


class NetworkStore:
    """In-memory registry of networks, queues and audit logs.

    Passing ``data_dir`` makes every change durable; without it the store is
    purely in-memory (handy for tests and evaluation runs).
    """

    def __init__(self, data_dir: str | Path | None = None):
        self._networks: dict[str, ConceptNetwork] = {}
        self._queues: dict[str, TicketQueue] = {}
        self._audits: dict[str, list[AuditRecord]] = {}
        self._lock = threading.RLock()
        self._data_dir = Path(data_dir) if data_dir is not None else None
        if self._data_dir is not None:
            self._data_dir.mkdir(parents=True, exist_ok=True)
            self._load_all()

    # -- reads ------------------------------------------------------------

    def get(self, network_id: str) -> ConceptNetwork:
        network = self._networks.get(network_id)
        if network is None:
            raise UnknownNetwork(f"no network with id {network_id!r}")
        return network

    def network_ids(self) -> list[str]:
        return sorted(self._networks)

    def queue(self, network_id: str) -> TicketQueue:
        self.get(network_id)
        with self._lock:
            queue = self._queues.get(network_id)
            if queue is None:
                queue = TicketQueue(on_change=self._tickets_saver(network_id))
                self._queues[network_id] = queue
            return queue

    def audit_log(self, network_id: str) -> list[AuditRecord]:
        self.get(network_id)
        return list(self._audits.get(network_id, ()))

    def replay_audit(self, network_id: str) -> ConceptNetwork:
        return replay_audit(self.audit_log(network_id))

    # -- writes -----------------------------------------------------------

    @contextmanager
    def writer(self, network_id: str | None = None):
        """Writer lock; mutations and resolve flows run inside it."""
        with self._lock:
            yield

    def check_version(self, network_id: str, expected_version: int | None):
        if expected_version is None:
            return
        current = self.get(network_id).version
        if current != expected_version:
            raise VersionConflict(
                f"network {network_id!r} is at version {current}, "
                f"caller expected {expected_version}"
            )

    def import_document(self, document: str, actor: str = "import") -> ConceptNetwork:
        """Register or replace a network from its canonical document."""
        network = nw.deserialize(document)
        with self._lock:
            self._record(
                network,
                actor,
                {"op": "import", "document": nw.to_document(network)},
                version_before=None,
            )
        return network

    def register(self, network: ConceptNetwork, actor: str = "import") -> ConceptNetwork:
        """Register an in-memory network (round-trips through the document form)."""
        return self.import_document(nw.serialize(network), actor=actor)

    def upsert_entity(
        self,
        network_id: str,
        entity: Entity,
        expected_version: int | None,
        actor: str = "editor",
    ) -> ConceptNetwork:
        entity_doc = {
            "id": entity.id,
            "name": entity.name,
            "aliases": list(entity.aliases),
            "topic": entity.topic,
            "attributes": {
                sid: (None if qa is None else {"question": qa.question, "answer": qa.answer})
                for sid, qa in entity.attributes.items()
            },
        }
        return self.upsert_entity_doc(network_id, entity_doc, expected_version, actor)

    def upsert_entity_doc(
        self,
        network_id: str,
        entity_doc: dict,
        expected_version: int | None,
        actor: str = "editor",
    ) -> ConceptNetwork:
        return self._commit(
            network_id,
            expected_version,
            {"op": "upsert_entity", "entity": entity_doc},
            actor,
        )

    def fill_attribute(
        self,
        network_id: str,
        entity_id: str,
        slot: str,
        question: str,
        answer: str,
        expected_version: int | None,
        actor: str = "editor",
    ) -> ConceptNetwork:
        with self._lock:
            network = self.get(network_id)
            entity = network.entities.get(entity_id)
            if entity is None:
                raise UnknownEntity(f"no entity with id {entity_id!r}")
            if slot not in entity.attributes:
                raise InvariantViolation(
                    f"entities[{entity_id}].attributes",
                    f"slot {slot!r} is not in the attribute schema",
                )
            attrs_doc: dict = {}
            for sid, qa in entity.attributes.items():
                if sid == slot:
                    attrs_doc[sid] = {"question": question, "answer": answer}
                elif qa is None:
                    attrs_doc[sid] = None
                else:
                    attrs_doc[sid] = {"question": qa.question, "answer": qa.answer}
            entity_doc = {
                "id": entity.id,
                "name": entity.name,
                "aliases": list(entity.aliases),
                "topic": entity.topic,
                "attributes": attrs_doc,
            }
            return self.upsert_entity_doc(network_id, entity_doc, expected_version, actor)

    def upsert_edge_relation(
        self,
        network_id: str,
        a: str,
        b: str,
        slot: str,
        qa_doc: dict | None,
        expected_version: int | None,
        actor: str = "editor",
    ) -> ConceptNetwork:
        return self._commit(
            network_id,
            expected_version,
            {"op": "upsert_edge_relation", "a": a, "b": b, "slot": slot, "qa": qa_doc},
            actor,
        )

    def _commit(
        self,
        network_id: str,
        expected_version: int | None,
        action: dict,
        actor: str,
    ) -> ConceptNetwork:
        with self._lock:
            current = self.get(network_id)
            self.check_version(network_id, expected_version)
            updated = apply_action(current, action)
            self._record(updated, actor, action, version_before=current.version)
            return updated

    def _record(
        self,
        network: ConceptNetwork,
        actor: str,
        action: dict,
        version_before: int | None,
    ):
        log = self._audits.setdefault(network.id, [])
        record = AuditRecord(
            seq=len(log) + 1,
            actor=actor,
            at=_now(),
            action=action,
            version_before=version_before,
            version_after=network.version,
        )
        log.append(record)
        self._networks[network.id] = network
        if self._data_dir is not None:
            self._persist_network(network)
            self._append_audit(network.id, record)

    # -- persistence --------------------------------------------------------

    def _network_path(self, network_id: str) -> Path:
        return self._data_dir / f"{network_id}.network.json"

    def _tickets_path(self, network_id: str) -> Path:
        return self._data_dir / f"{network_id}.tickets.json"

    def _audit_path(self, network_id: str) -> Path:
        return self._data_dir / f"{network_id}.audit.jsonl"

    def _persist_network(self, network: ConceptNetwork):
        _atomic_write(self._network_path(network.id), nw.serialize(network))

    def _append_audit(self, network_id: str, record: AuditRecord):
        with self._audit_path(network_id).open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record.to_document(), sort_keys=True) + "\n")

    def _tickets_saver(self, network_id: str):
        def save(queue: TicketQueue):
            if self._data_dir is not None:
                _atomic_write(
                    self._tickets_path(network_id),
                    json.dumps(queue.to_document(), indent=2, sort_keys=True) + "\n",
                )

        return save

    def _load_all(self):
        for path in sorted(self._data_dir.glob("*.network.json")):
            network = nw.deserialize(path.read_text(encoding="utf-8"))
            self._networks[network.id] = network
            audit_path = self._audit_path(network.id)
            if audit_path.exists():
                records = [
                    AuditRecord.from_document(json.loads(line))
                    for line in audit_path.read_text(encoding="utf-8").splitlines()
                    if line.strip()
                ]
                self._audits[network.id] = records
            tickets_path = self._tickets_path(network.id)
            if tickets_path.exists():
                self._queues[network.id] = TicketQueue.from_document(
                    json.loads(tickets_path.read_text(encoding="utf-8")),
                    on_change=self._tickets_saver(network.id),
                )


def _atomic_write(path: Path, content: str):
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(content, encoding="utf-8")
    os.replace(tmp, path)
