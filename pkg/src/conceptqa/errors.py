"""Exception types shared across the package.

Every error carries a machine-readable ``code`` so the HTTP layer can map
exceptions to API error bodies without string matching.
"""


class ConceptQAError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class EmptyId(ConceptQAError):
    code = "empty_id"


class DuplicateSlotId(ConceptQAError):
    code = "duplicate_slot_id"


class SchemaMismatch(ConceptQAError):
    code = "schema_mismatch"


class SurfaceFormCollision(ConceptQAError):
    code = "surface_form_collision"


class UnknownEntity(ConceptQAError):
    code = "unknown_entity"


class UnknownRelationSlot(ConceptQAError):
    code = "unknown_relation_slot"


class UnknownTopic(ConceptQAError):
    code = "unknown_topic"


class SelfLoop(ConceptQAError):
    code = "self_loop"


class ParseError(ConceptQAError):
    """Malformed document (network, lexicon file, question set, config)."""

    code = "parse_error"


class InvariantViolation(ConceptQAError):
    """A structurally valid document violates a model invariant.

    ``path`` points at the offending element, e.g. ``edges[2].a``.
    """

    code = "invariant_violation"

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class VersionConflict(ConceptQAError):
    code = "version_conflict"


class UnknownNetwork(ConceptQAError):
    code = "unknown_network"


class StaleMatcher(ConceptQAError):
    code = "stale_matcher"


class DanglingPointer(ConceptQAError):
    code = "dangling_pointer"


class NoCandidate(ConceptQAError):
    """No scorable slot exists for the current question routing."""

    code = "no_candidate"


class UnknownTicket(ConceptQAError):
    code = "unknown_ticket"


class TicketNotOpen(ConceptQAError):
    code = "ticket_not_open"


class UnknownReference(ConceptQAError):
    code = "unknown_reference"
