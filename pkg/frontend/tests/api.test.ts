import { describe, expect, it } from 'vitest';

import { ApiError, ConceptQAClient } from '../src/api.js';

interface Captured {
  url: string;
  method: string;
  headers: Record<string, string>;
  body?: string;
}

function stubClient(status: number, payload: unknown, captured: Captured[] = []) {
  const fetchFn = (async (url: RequestInfo | URL, init?: RequestInit) => {
    captured.push({
      url: String(url),
      method: init?.method ?? 'GET',
      headers: (init?.headers ?? {}) as Record<string, string>,
      body: init?.body as string | undefined,
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { 'content-type': 'application/json' },
    });
  }) as typeof fetch;
  return { client: new ConceptQAClient({ baseUrl: 'http://svc', fetchFn }), captured };
}

describe('ConceptQAClient', () => {
  it('asks with a JSON body against the versioned path', async () => {
    const { client, captured } = stubClient(200, {
      status: 'pending', answer: null, matched_entities: [],
      matched_slot: null, confidence: null, ticket_id: 't1',
    });
    const result = await client.ask('force-pressure', 'What is a lever?');
    expect(result.ticket_id).toBe('t1');
    expect(captured[0]!.url).toBe('http://svc/v1/networks/force-pressure/ask');
    expect(captured[0]!.method).toBe('POST');
    expect(JSON.parse(captured[0]!.body!)).toEqual({ question: 'What is a lever?' });
  });

  it('URL-encodes ids containing spaces', async () => {
    const { client, captured } = stubClient(200, { version: 22 });
    await client.putEdgeRelation(
      'force-pressure', 'muscular force', 'friction', 'dependency',
      { question: 'q', answer: 'a' }, 21,
    );
    expect(captured[0]!.url).toContain('/edges/muscular%20force/friction/relations/dependency');
  });

  it('rethrows API error bodies with their code', async () => {
    const { client } = stubClient(409, {
      code: 'version_conflict', message: 'network moved on',
    });
    const err = await client
      .resolveTicket('net', 't1', { type: 'dismiss' }, 3)
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).code).toBe('version_conflict');
    expect((err as ApiError).status).toBe(409);
  });

  it('attaches the shared token header when configured', async () => {
    const captured: Captured[] = [];
    const fetchFn = (async (url: RequestInfo | URL, init?: RequestInit) => {
      captured.push({
        url: String(url), method: init?.method ?? 'GET',
        headers: (init?.headers ?? {}) as Record<string, string>,
      });
      return new Response(JSON.stringify({ networks: [] }), { status: 200 });
    }) as typeof fetch;
    const client = new ConceptQAClient({ baseUrl: '', authToken: 'sekrit', fetchFn });
    await client.listNetworks();
    expect(captured[0]!.headers['x-auth-token']).toBe('sekrit');
  });

  it('wraps network failures as unreachable', async () => {
    const fetchFn = (async () => {
      throw new TypeError('connect ECONNREFUSED');
    }) as unknown as typeof fetch;
    const client = new ConceptQAClient({ fetchFn });
    const err = await client.listNetworks().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).code).toBe('unreachable');
  });
});
