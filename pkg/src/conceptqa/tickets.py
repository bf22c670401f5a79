"""Pending-question queue and expert resolution actions.

Unanswerable questions park here until a human either enriches the network
(add an entity, fill an attribute, add a relation) or dismisses the ticket.
Non-dismiss resolutions apply their network mutation and mark the ticket
resolved atomically; on any mutation failure the ticket stays open.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from .errors import ParseError, TicketNotOpen, UnknownTicket

KIND_NO_ENTITY = "no_entity"
KIND_NO_RELATION = "no_relation"
KIND_LOW_CONFIDENCE = "low_confidence"
KINDS = (KIND_NO_ENTITY, KIND_NO_RELATION, KIND_LOW_CONFIDENCE)

STATUS_OPEN = "open"
STATUS_RESOLVED = "resolved"
STATUS_DISMISSED = "dismissed"

TICKETS_FORMAT_VERSION = 1


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _normalize_question(text: str) -> str:
    return " ".join(text.lower().split())


@dataclass(frozen=True)
class PendingTicket:
    id: str
    question_text: str
    kind: str
    created_at: str
    entity_pair: tuple[str, str] | None = None
    best_slot: object | None = None
    best_score: float | None = None
    status: str = STATUS_OPEN
    resolution: dict | None = None

    def __post_init__(self):
        if self.status == STATUS_OPEN and self.resolution is not None:
            raise ValueError("open tickets carry no resolution")
        if self.status != STATUS_OPEN and self.resolution is None:
            raise ValueError("closed tickets must carry a resolution")

    def to_document(self) -> dict:
        from .retrieval import slot_to_doc

        return {
            "id": self.id,
            "question_text": self.question_text,
            "kind": self.kind,
            "created_at": self.created_at,
            "entity_pair": list(self.entity_pair) if self.entity_pair else None,
            "best_slot": slot_to_doc(self.best_slot),
            "best_score": self.best_score,
            "status": self.status,
            "resolution": self.resolution,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "PendingTicket":
        from .retrieval import slot_from_doc

        if doc.get("kind") not in KINDS:
            raise ParseError(f"unknown ticket kind {doc.get('kind')!r}")
        pair = doc.get("entity_pair")
        return cls(
            id=doc["id"],
            question_text=doc["question_text"],
            kind=doc["kind"],
            created_at=doc["created_at"],
            entity_pair=tuple(pair) if pair else None,
            best_slot=slot_from_doc(doc.get("best_slot")),
            best_score=doc.get("best_score"),
            status=doc.get("status", STATUS_OPEN),
            resolution=doc.get("resolution"),
        )


class TicketQueue:
    """Thread-safe, insertion-ordered ticket collection for one network.

    Enqueueing is idempotent per (normalized question, kind) while a matching
    ticket is still open, so repeated student questions do not flood the
    expert.
    """

    def __init__(self, on_change=None):
        self._tickets: dict[str, PendingTicket] = {}
        self._lock = threading.RLock()
        self._on_change = on_change

    def enqueue(
        self,
        question_text: str,
        kind: str,
        *,
        entity_pair: tuple[str, str] | None = None,
        best_slot: object | None = None,
        best_score: float | None = None,
    ) -> str:
        if kind not in KINDS:
            raise ValueError(f"unknown ticket kind {kind!r}")
        normalized = _normalize_question(question_text)
        with self._lock:
            for ticket in self._tickets.values():
                if (
                    ticket.status == STATUS_OPEN
                    and ticket.kind == kind
                    and _normalize_question(ticket.question_text) == normalized
                ):
                    return ticket.id
            ticket = PendingTicket(
                id=uuid.uuid4().hex[:12],
                question_text=question_text,
                kind=kind,
                created_at=_now(),
                entity_pair=entity_pair,
                best_slot=best_slot,
                best_score=best_score,
            )
            self._tickets[ticket.id] = ticket
            self._notify()
            return ticket.id

    def get(self, ticket_id: str) -> PendingTicket:
        with self._lock:
            ticket = self._tickets.get(ticket_id)
        if ticket is None:
            raise UnknownTicket(f"no ticket with id {ticket_id!r}")
        return ticket

    def list_pending(self, kind: str | None = None) -> list[PendingTicket]:
        """Open tickets, oldest first, optionally filtered by kind."""
        with self._lock:
            return [
                t
                for t in self._tickets.values()
                if t.status == STATUS_OPEN and (kind is None or t.kind == kind)
            ]

    def list_all(self, status: str | None = None) -> list[PendingTicket]:
        with self._lock:
            return [
                t
                for t in self._tickets.values()
                if status is None or t.status == status
            ]

    def __len__(self) -> int:
        return len(self._tickets)

    def close(self, ticket_id: str, status: str, resolution: dict) -> PendingTicket:
        """Mark a ticket resolved or dismissed; internal to the resolve flow."""
        with self._lock:
            ticket = self.get(ticket_id)
            if ticket.status != STATUS_OPEN:
                raise TicketNotOpen(f"ticket {ticket_id!r} is {ticket.status}")
            updated = replace(ticket, status=status, resolution=resolution)
            self._tickets[ticket_id] = updated
            self._notify()
            return updated

    def _notify(self):
        if self._on_change is not None:
            self._on_change(self)

    def to_document(self) -> dict:
        with self._lock:
            return {
                "format_version": TICKETS_FORMAT_VERSION,
                "tickets": [t.to_document() for t in self._tickets.values()],
            }

    @classmethod
    def from_document(cls, doc: dict, on_change=None) -> "TicketQueue":
        if doc.get("format_version") != TICKETS_FORMAT_VERSION:
            raise ParseError(
                f"unsupported tickets format_version {doc.get('format_version')!r}"
            )
        queue = cls(on_change=on_change)
        for tdoc in doc.get("tickets", []):
            ticket = PendingTicket.from_document(tdoc)
            queue._tickets[ticket.id] = ticket
        return queue


# ---------------------------------------------------------------------------
# Resolution actions
# ---------------------------------------------------------------------------

ACTION_ADD_ENTITY = "add_entity"
ACTION_FILL_ATTRIBUTE = "fill_attribute"
ACTION_ADD_RELATION = "add_relation"
ACTION_DISMISS = "dismiss"


def resolve_ticket(
    store,
    network_id: str,
    ticket_id: str,
    action: dict,
    expected_version: int,
) -> tuple[PendingTicket, int]:
    """Apply an expert action to a ticket; returns (ticket, network version).

    Dismissals never touch the network. All other actions run the matching
    network mutation under the store's writer lock and only then close the
    ticket, so a failed mutation leaves the ticket open and the network
    untouched.
    """
    queue = store.queue(network_id)
    ticket = queue.get(ticket_id)
    if ticket.status != STATUS_OPEN:
        raise TicketNotOpen(f"ticket {ticket_id!r} is {ticket.status}")
    action_type = action.get("type")
    if action_type == ACTION_DISMISS:
        with store.writer(network_id):
            store.check_version(network_id, expected_version)
            updated = queue.close(
                ticket_id,
                STATUS_DISMISSED,
                {
                    "action": action,
                    "resulting_network_version": None,
                    "note": action.get("note", ""),
                },
            )
        return updated, store.get(network_id).version

    with store.writer(network_id):
        if action_type == ACTION_ADD_ENTITY:
            network = store.upsert_entity_doc(
                network_id, action["entity"], expected_version, actor="expert"
            )
        elif action_type == ACTION_FILL_ATTRIBUTE:
            network = store.fill_attribute(
                network_id,
                action["entity_id"],
                action["slot"],
                action["question"],
                action["answer"],
                expected_version,
                actor="expert",
            )
        elif action_type == ACTION_ADD_RELATION:
            network = store.upsert_edge_relation(
                network_id,
                action["a"],
                action["b"],
                action["slot"],
                {"question": action["question"], "answer": action["answer"]},
                expected_version,
                actor="expert",
            )
        else:
            raise ParseError(f"unknown resolution action {action_type!r}")
        updated = queue.close(
            ticket_id,
            STATUS_RESOLVED,
            {
                "action": action,
                "resulting_network_version": network.version,
                "note": action.get("note", ""),
            },
        )
    return updated, network.version
