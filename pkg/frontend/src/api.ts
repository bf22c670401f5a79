/**
 * Typed client for the conceptqa HTTP API (/v1).
 *
 * Every non-2xx response carries a single {code, message, details?} body;
 * the client rethrows it as ApiError so callers can branch on the code
 * (e.g. "version_conflict") without touching response plumbing.
 */

export type SlotDoc =
  | { attribute: string }
  | { pair: [string, string]; relation: string };

export interface QADoc {
  question: string;
  answer: string;
}

export interface AnswerResultDoc {
  status: 'answered' | 'pending';
  answer: string | null;
  matched_entities: string[];
  matched_slot: SlotDoc | null;
  confidence: number | null;
  ticket_id: string | null;
}

export type TicketKind = 'no_entity' | 'no_relation' | 'low_confidence';

export interface TicketDoc {
  id: string;
  question_text: string;
  kind: TicketKind;
  created_at: string;
  entity_pair: [string, string] | null;
  best_slot: SlotDoc | null;
  best_score: number | null;
  status: 'open' | 'resolved' | 'dismissed';
  resolution: Record<string, unknown> | null;
}

export interface EntityDoc {
  id: string;
  name: string;
  aliases: string[];
  topic: string;
  attributes: Record<string, QADoc | null>;
}

export interface EdgeDoc {
  a: string;
  b: string;
  relations: Record<string, QADoc | null>;
}

export interface NetworkDoc {
  format_version: number;
  id: string;
  name: string;
  topics: string[];
  attribute_schema: { id: string; prompt_hint: string }[];
  relation_schema: { id: string; prompt_hint: string }[];
  entities: EntityDoc[];
  edges: EdgeDoc[];
  version: number;
}

export interface NetworkSummary {
  id: string;
  name: string;
  version: number;
  entities: number;
  edges: number;
}

export type ResolutionAction =
  | { type: 'add_entity'; entity: EntityDoc; note?: string }
  | { type: 'fill_attribute'; entity_id: string; slot: string; question: string; answer: string; note?: string }
  | { type: 'add_relation'; a: string; b: string; slot: string; question: string; answer: string; note?: string }
  | { type: 'dismiss'; note?: string };

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details?: unknown,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

export interface ClientOptions {
  baseUrl?: string;
  authToken?: string;
  fetchFn?: typeof fetch;
}

export class ConceptQAClient {
  private readonly baseUrl: string;
  private readonly authToken?: string;
  private readonly fetchFn: typeof fetch;

  constructor(options: ClientOptions = {}) {
    this.baseUrl = options.baseUrl ?? '';
    this.authToken = options.authToken;
    this.fetchFn = options.fetchFn ?? fetch.bind(globalThis);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers['content-type'] = 'application/json';
    if (this.authToken) headers['x-auth-token'] = this.authToken;
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        method,
        headers,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError(0, 'unreachable', `service unreachable: ${String(err)}`);
    }
    const text = await response.text();
    let data: unknown = null;
    if (text) {
      try {
        data = JSON.parse(text);
      } catch {
        throw new ApiError(response.status, 'bad_payload', 'response was not JSON');
      }
    }
    if (!response.ok) {
      const err = data as { code?: string; message?: string; details?: unknown } | null;
      throw new ApiError(
        response.status,
        err?.code ?? 'http_error',
        err?.message ?? response.statusText,
        err?.details,
      );
    }
    return data as T;
  }

  importNetwork(document: object): Promise<{ id: string; version: number }> {
    return this.request('POST', '/v1/networks', document);
  }

  listNetworks(): Promise<{ networks: NetworkSummary[] }> {
    return this.request('GET', '/v1/networks');
  }

  exportNetwork(networkId: string): Promise<NetworkDoc> {
    return this.request('GET', `/v1/networks/${encodeURIComponent(networkId)}`);
  }

  ask(networkId: string, question: string): Promise<AnswerResultDoc> {
    return this.request('POST', `/v1/networks/${encodeURIComponent(networkId)}/ask`, {
      question,
    });
  }

  tickets(
    networkId: string,
    status: 'open' | 'resolved' | 'dismissed' | 'all' = 'open',
  ): Promise<{ tickets: TicketDoc[]; version: number }> {
    return this.request(
      'GET',
      `/v1/networks/${encodeURIComponent(networkId)}/tickets?status=${status}`,
    );
  }

  resolveTicket(
    networkId: string,
    ticketId: string,
    action: ResolutionAction,
    expectedVersion: number,
  ): Promise<{ ticket: TicketDoc; version: number }> {
    return this.request(
      'POST',
      `/v1/networks/${encodeURIComponent(networkId)}/tickets/${encodeURIComponent(ticketId)}/resolve`,
      { action, expected_version: expectedVersion },
    );
  }

  putEntity(
    networkId: string,
    entity: EntityDoc,
    expectedVersion: number,
  ): Promise<{ id: string; version: number }> {
    return this.request(
      'PUT',
      `/v1/networks/${encodeURIComponent(networkId)}/entities/${encodeURIComponent(entity.id)}`,
      {
        name: entity.name,
        aliases: entity.aliases,
        topic: entity.topic,
        attributes: entity.attributes,
        expected_version: expectedVersion,
      },
    );
  }

  putEdgeRelation(
    networkId: string,
    a: string,
    b: string,
    slot: string,
    qa: QADoc | null,
    expectedVersion: number,
  ): Promise<{ version: number }> {
    const path =
      `/v1/networks/${encodeURIComponent(networkId)}/edges/` +
      `${encodeURIComponent(a)}/${encodeURIComponent(b)}/relations/${encodeURIComponent(slot)}`;
    return this.request('PUT', path, { qa, expected_version: expectedVersion });
  }
}
