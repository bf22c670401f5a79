/**
 * App bootstrap: hash router over the three panes plus queue polling.
 *
 * Configuration comes from window.CONCEPTQA_CONFIG (service base URL,
 * network id, optional shared token, poll interval).
 */

import { ConceptQAClient } from './api.js';
import { AskController, NetworkController, QueueController } from './state.js';
import { renderAsk, renderHeader, renderNetwork, renderQueue } from './views.js';

interface AppConfig {
  baseUrl?: string;
  networkId?: string;
  authToken?: string;
  pollIntervalMs?: number;
}

declare global {
  interface Window {
    CONCEPTQA_CONFIG?: AppConfig;
  }
}

export type Route = 'ask' | 'queue' | 'network';

export function parseRoute(hash: string): Route {
  const name = hash.replace(/^#\/?/, '');
  if (name === 'queue' || name === 'network') return name;
  return 'ask';
}

export function startApp(root: HTMLElement): void {
  const config = window.CONCEPTQA_CONFIG ?? {};
  const networkId = config.networkId ?? 'force-pressure';
  const pollInterval = config.pollIntervalMs ?? 5000;
  const client = new ConceptQAClient({
    baseUrl: config.baseUrl ?? '',
    authToken: config.authToken,
  });

  const header = document.createElement('header');
  const nav = document.createElement('nav');
  nav.innerHTML =
    '<a href="#/ask">ask</a> <a href="#/queue">queue</a> <a href="#/network">network</a>';
  const pane = document.createElement('main');
  root.replaceChildren(header, nav, pane);

  const repaint = () => render();
  const ask = new AskController(client, networkId, repaint);
  const network = new NetworkController(client, networkId, repaint);
  const queue = new QueueController(
    client,
    networkId,
    () => network.doc?.attribute_schema.map((s) => s.id) ?? [],
    () => network.doc?.relation_schema.map((s) => s.id) ?? [],
    repaint,
  );

  function currentVersion(): number | null {
    // Prefer the freshest payload: queue responses carry the live version.
    return queue.version ?? network.doc?.version ?? null;
  }

  function render(): void {
    renderHeader(header, networkId, currentVersion());
    const route = parseRoute(location.hash);
    if (route === 'ask') renderAsk(pane, ask);
    else if (route === 'queue') renderQueue(pane, queue);
    else renderNetwork(pane, network);
  }

  window.addEventListener('hashchange', () => {
    const route = parseRoute(location.hash);
    if (route === 'queue') void queue.refresh();
    if (route === 'network') void network.load();
    render();
  });

  setInterval(() => {
    if (parseRoute(location.hash) === 'queue') void queue.refresh();
  }, pollInterval);

  void network.load();
  void queue.refresh();
  render();
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  startApp(document.getElementById('app') as HTMLElement);
}
