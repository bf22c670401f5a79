/**
 * Framework-free view state for the three panes.
 *
 * Controllers hold the latest server payloads and expose plain state for the
 * render layer; nothing here touches the DOM. Two invariants from the API
 * carry over: an ask outcome is exactly one of answered/pending, and the
 * resolution actions offered for a ticket are fixed by its kind.
 */

import {
  AnswerResultDoc,
  ApiError,
  ConceptQAClient,
  EntityDoc,
  NetworkDoc,
  QADoc,
  ResolutionAction,
  TicketDoc,
  TicketKind,
} from './api.js';

// ---------------------------------------------------------------------------
// Ask pane
// ---------------------------------------------------------------------------

export type AskView =
  | { phase: 'idle' }
  | { phase: 'busy'; question: string }
  | { phase: 'answered'; question: string; result: AnswerResultDoc }
  | { phase: 'pending'; question: string; ticketId: string }
  | { phase: 'error'; question: string; message: string };

/** Map an API result onto the view union; inconsistent payloads are refused. */
export function resultToView(question: string, result: AnswerResultDoc): AskView {
  if (result.status === 'answered' && result.answer !== null && result.ticket_id === null) {
    return { phase: 'answered', question, result };
  }
  if (result.status === 'pending' && result.ticket_id !== null && result.answer === null) {
    return { phase: 'pending', question, ticketId: result.ticket_id };
  }
  throw new Error('inconsistent answer payload: not exactly answered or pending');
}

export class AskController {
  view: AskView = { phase: 'idle' };
  input = '';

  constructor(
    private readonly client: Pick<ConceptQAClient, 'ask'>,
    private readonly networkId: string,
    private readonly onChange: () => void = () => {},
  ) {}

  canSubmit(): boolean {
    return this.input.trim() !== '' && this.view.phase !== 'busy';
  }

  async submit(): Promise<void> {
    if (!this.canSubmit()) return;
    const question = this.input.trim();
    this.view = { phase: 'busy', question };
    this.onChange();
    try {
      const result = await this.client.ask(this.networkId, question);
      this.view = resultToView(question, result);
    } catch (err) {
      // Input stays in place so the student can retry.
      this.view = { phase: 'error', question, message: describeError(err) };
    }
    this.onChange();
  }
}

// ---------------------------------------------------------------------------
// Expert queue pane
// ---------------------------------------------------------------------------

export type ResolutionType = 'add_entity' | 'fill_attribute' | 'add_relation' | 'dismiss';

/** The only resolutions offered for each ticket kind. */
export function allowedActions(kind: TicketKind): ResolutionType[] {
  switch (kind) {
    case 'no_entity':
      return ['add_entity', 'dismiss'];
    case 'no_relation':
      return ['add_relation', 'dismiss'];
    case 'low_confidence':
      return ['fill_attribute', 'dismiss'];
  }
}

export interface ResolutionForm {
  type: ResolutionType;
  entityId: string;
  entityName: string;
  aliases: string;
  topic: string;
  slot: string;
  question: string;
  answer: string;
  note: string;
}

export function defaultFormFor(ticket: TicketDoc, attributeSlots: string[]): ResolutionForm {
  const primary = allowedActions(ticket.kind)[0] ?? 'dismiss';
  let slot = attributeSlots[0] ?? '';
  if (ticket.kind === 'low_confidence' && ticket.best_slot && 'attribute' in ticket.best_slot) {
    slot = ticket.best_slot.attribute;
  }
  return {
    type: primary,
    entityId: '',
    entityName: '',
    aliases: '',
    topic: '',
    slot,
    question: ticket.question_text,
    answer: '',
    note: '',
  };
}

export type FormResult =
  | { ok: true; action: ResolutionAction }
  | { ok: false; errors: string[] };

export function buildResolutionAction(
  ticket: TicketDoc,
  form: ResolutionForm,
  attributeSlots: string[],
): FormResult {
  if (!allowedActions(ticket.kind).includes(form.type)) {
    return { ok: false, errors: [`action ${form.type} is not allowed for ${ticket.kind}`] };
  }
  const errors: string[] = [];
  if (form.type === 'dismiss') {
    return { ok: true, action: { type: 'dismiss', note: form.note } };
  }
  if (form.type === 'add_entity') {
    if (!form.entityId.trim()) errors.push('entity id is required');
    if (!form.entityName.trim()) errors.push('entity name is required');
    if (!form.topic.trim()) errors.push('topic is required');
    if (!form.slot) errors.push('a slot for the stored answer is required');
    if (!form.question.trim()) errors.push('stored question is required');
    if (!form.answer.trim()) errors.push('answer is required');
    if (errors.length) return { ok: false, errors };
    const attributes: Record<string, QADoc | null> = {};
    for (const slot of attributeSlots) attributes[slot] = null;
    attributes[form.slot] = { question: form.question.trim(), answer: form.answer.trim() };
    const entity: EntityDoc = {
      id: form.entityId.trim(),
      name: form.entityName.trim(),
      aliases: form.aliases.split(',').map((a) => a.trim()).filter(Boolean),
      topic: form.topic.trim(),
      attributes,
    };
    return { ok: true, action: { type: 'add_entity', entity, note: form.note } };
  }
  if (form.type === 'fill_attribute') {
    if (!form.entityId.trim()) errors.push('entity id is required');
    if (!form.slot) errors.push('slot is required');
    if (!form.question.trim()) errors.push('stored question is required');
    if (!form.answer.trim()) errors.push('answer is required');
    if (errors.length) return { ok: false, errors };
    return {
      ok: true,
      action: {
        type: 'fill_attribute',
        entity_id: form.entityId.trim(),
        slot: form.slot,
        question: form.question.trim(),
        answer: form.answer.trim(),
        note: form.note,
      },
    };
  }
  // add_relation: the pair comes from the ticket itself.
  if (!ticket.entity_pair) {
    return { ok: false, errors: ['ticket carries no entity pair'] };
  }
  if (!form.slot) errors.push('relation slot is required');
  if (!form.question.trim()) errors.push('stored question is required');
  if (!form.answer.trim()) errors.push('answer is required');
  if (errors.length) return { ok: false, errors };
  const [a, b] = ticket.entity_pair;
  return {
    ok: true,
    action: {
      type: 'add_relation',
      a,
      b,
      slot: form.slot,
      question: form.question.trim(),
      answer: form.answer.trim(),
      note: form.note,
    },
  };
}

type QueueClient = Pick<ConceptQAClient, 'tickets' | 'resolveTicket'>;

export class QueueController {
  tickets: TicketDoc[] = [];
  version: number | null = null;
  selectedId: string | null = null;
  form: ResolutionForm | null = null;
  formErrors: string[] = [];
  conflict = false;
  error: string | null = null;
  busy = false;

  constructor(
    private readonly client: QueueClient,
    private readonly networkId: string,
    private readonly attributeSlots: () => string[],
    private readonly relationSlots: () => string[],
    private readonly onChange: () => void = () => {},
  ) {}

  selected(): TicketDoc | null {
    return this.tickets.find((t) => t.id === this.selectedId) ?? null;
  }

  async refresh(): Promise<void> {
    try {
      const body = await this.client.tickets(this.networkId, 'open');
      this.tickets = body.tickets;
      this.version = body.version;
      this.error = null;
      if (this.selectedId && !this.selected()) {
        this.selectedId = null;
        this.form = null;
      }
    } catch (err) {
      this.error = describeError(err);
    }
    this.onChange();
  }

  select(ticketId: string): void {
    const ticket = this.tickets.find((t) => t.id === ticketId);
    if (!ticket) return;
    this.selectedId = ticketId;
    const slots =
      ticket.kind === 'no_relation' ? this.relationSlots() : this.attributeSlots();
    this.form = defaultFormFor(ticket, slots);
    this.formErrors = [];
    this.conflict = false;
    this.onChange();
  }

  /** Resolve the selected ticket. Returns true when the queue shrank. */
  async submit(): Promise<boolean> {
    const ticket = this.selected();
    if (!ticket || !this.form || this.version === null || this.busy) return false;
    const slots =
      ticket.kind === 'no_relation' ? this.relationSlots() : this.attributeSlots();
    const built = buildResolutionAction(ticket, this.form, slots);
    if (!built.ok) {
      this.formErrors = built.errors;
      this.onChange();
      return false;
    }
    this.busy = true;
    this.formErrors = [];
    this.onChange();
    try {
      const body = await this.client.resolveTicket(
        this.networkId, ticket.id, built.action, this.version,
      );
      this.version = body.version;
      this.tickets = this.tickets.filter((t) => t.id !== ticket.id);
      this.selectedId = null;
      this.form = null;
      this.conflict = false;
      return true;
    } catch (err) {
      if (err instanceof ApiError && err.code === 'version_conflict') {
        // Keep the form exactly as typed; the user decides when to retry.
        this.conflict = true;
      } else {
        this.error = describeError(err);
      }
      return false;
    } finally {
      this.busy = false;
      this.onChange();
    }
  }

  /** Conflict recovery: pick up the latest version, then retry the same form. */
  async retryAfterConflict(): Promise<boolean> {
    const keepSelection = this.selectedId;
    const keepForm = this.form;
    try {
      const body = await this.client.tickets(this.networkId, 'open');
      this.tickets = body.tickets;
      this.version = body.version;
    } catch (err) {
      this.error = describeError(err);
      this.onChange();
      return false;
    }
    this.selectedId = keepSelection;
    this.form = keepForm;
    if (this.selectedId && !this.selected()) {
      // Someone else closed it while we were looking at it.
      this.selectedId = null;
      this.form = null;
      this.conflict = false;
      this.onChange();
      return false;
    }
    this.conflict = false;
    return this.submit();
  }
}

// ---------------------------------------------------------------------------
// Network browser pane
// ---------------------------------------------------------------------------

type NetworkClient = Pick<ConceptQAClient, 'exportNetwork' | 'putEntity' | 'putEdgeRelation'>;

export class NetworkController {
  doc: NetworkDoc | null = null;
  error: string | null = null;
  selectedEntityId: string | null = null;

  constructor(
    private readonly client: NetworkClient,
    private readonly networkId: string,
    private readonly onChange: () => void = () => {},
  ) {}

  async load(): Promise<void> {
    try {
      this.doc = await this.client.exportNetwork(this.networkId);
      this.error = null;
    } catch (err) {
      this.error = describeError(err);
    }
    this.onChange();
  }

  entitiesByTopic(): Map<string, EntityDoc[]> {
    const grouped = new Map<string, EntityDoc[]>();
    if (!this.doc) return grouped;
    for (const topic of this.doc.topics) grouped.set(topic, []);
    for (const entity of this.doc.entities) {
      const bucket = grouped.get(entity.topic);
      if (bucket) bucket.push(entity);
      else grouped.set(entity.topic, [entity]);
    }
    return grouped;
  }

  entity(entityId: string): EntityDoc | null {
    return this.doc?.entities.find((e) => e.id === entityId) ?? null;
  }

  edgesOf(entityId: string) {
    return this.doc?.edges.filter((e) => e.a === entityId || e.b === entityId) ?? [];
  }

  /** Write one attribute slot through the PUT endpoint; reloads on success. */
  async saveAttribute(entityId: string, slot: string, qa: QADoc | null): Promise<boolean> {
    if (!this.doc) return false;
    const entity = this.entity(entityId);
    if (!entity) return false;
    const updated: EntityDoc = {
      ...entity,
      attributes: { ...entity.attributes, [slot]: qa },
    };
    try {
      await this.client.putEntity(this.networkId, updated, this.doc.version);
      await this.load();
      return true;
    } catch (err) {
      this.error = describeError(err);
      this.onChange();
      return false;
    }
  }

  async saveRelation(a: string, b: string, slot: string, qa: QADoc | null): Promise<boolean> {
    if (!this.doc) return false;
    try {
      await this.client.putEdgeRelation(this.networkId, a, b, slot, qa, this.doc.version);
      await this.load();
      return true;
    } catch (err) {
      this.error = describeError(err);
      this.onChange();
      return false;
    }
  }
}

export function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    return err.status ? `${err.code}: ${err.message}` : err.message;
  }
  return String(err);
}
