/**
 * DOM rendering for the three panes. Render functions rebuild their pane
 * from controller state on every change; every displayed fact comes from the
 * latest fetched payload, never from locally invented state.
 */

import { EntityDoc, QADoc, TicketDoc } from './api.js';
import {
  AskController,
  NetworkController,
  QueueController,
  allowedActions,
} from './state.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === 'class') node.className = value;
    else node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

// ---------------------------------------------------------------------------
// Ask pane
// ---------------------------------------------------------------------------

export function renderAsk(root: HTMLElement, ask: AskController): void {
  root.replaceChildren();
  const input = el('textarea', {
    id: 'ask-input',
    placeholder: 'Ask a question about the chapter…',
  });
  input.value = ask.input;
  input.addEventListener('input', () => {
    ask.input = input.value;
    button.disabled = !ask.canSubmit();
  });
  const button = el('button', { id: 'ask-submit' }, 'Ask');
  button.disabled = !ask.canSubmit();
  button.addEventListener('click', () => void ask.submit());

  const outcome = el('div', { id: 'ask-outcome' });
  const view = ask.view;
  if (view.phase === 'busy') {
    outcome.append(el('p', { class: 'muted' }, 'Asking…'));
  } else if (view.phase === 'answered') {
    const confidence = view.result.confidence ?? 0;
    outcome.append(
      el(
        'div',
        { class: 'card answer-card' },
        el('p', { id: 'answer-text' }, view.result.answer ?? ''),
        el(
          'p',
          { class: 'muted' },
          `confidence ${confidence.toFixed(2)} · matched ${view.result.matched_entities.join(', ')}`,
        ),
      ),
    );
  } else if (view.phase === 'pending') {
    outcome.append(
      el(
        'div',
        { class: 'card pending-card' },
        el(
          'p',
          { id: 'pending-text' },
          `No stored answer yet — your question was forwarded to your teacher (ticket ${view.ticketId}).`,
        ),
      ),
    );
  } else if (view.phase === 'error') {
    outcome.append(el('div', { class: 'banner error', id: 'ask-error' }, view.message));
  }
  root.append(el('h2', {}, 'Ask'), input, button, outcome);
}

// ---------------------------------------------------------------------------
// Queue pane
// ---------------------------------------------------------------------------

function ticketLabel(ticket: TicketDoc): string {
  switch (ticket.kind) {
    case 'no_entity':
      return 'unknown concept';
    case 'no_relation':
      return `missing relation (${ticket.entity_pair?.join(' ↔ ') ?? '?'})`;
    case 'low_confidence':
      return `low confidence (best ${(ticket.best_score ?? 0).toFixed(2)})`;
  }
}

export function renderQueue(root: HTMLElement, queue: QueueController): void {
  root.replaceChildren();
  root.append(el('h2', {}, 'Pending tickets'));
  if (queue.error) {
    root.append(el('div', { class: 'banner error' }, queue.error));
  }
  const list = el('ul', { id: 'ticket-list' });
  for (const ticket of queue.tickets) {
    const item = el(
      'li',
      { class: ticket.id === queue.selectedId ? 'ticket selected' : 'ticket', 'data-id': ticket.id },
      el('span', { class: 'question' }, ticket.question_text),
      ' ',
      el('span', { class: 'kind' }, ticketLabel(ticket)),
      el('span', { class: 'muted' }, ` · ${ticket.created_at}`),
    );
    item.addEventListener('click', () => queue.select(ticket.id));
    list.append(item);
  }
  if (!queue.tickets.length) {
    list.append(el('li', { class: 'muted' }, 'queue is empty'));
  }
  root.append(list);

  const ticket = queue.selected();
  const form = queue.form;
  if (!ticket || !form) return;

  const panel = el('div', { class: 'card', id: 'resolve-panel' });
  panel.append(el('h3', {}, `Resolve: ${ticket.question_text}`));

  const actionSelect = el('select', { id: 'resolve-action' });
  for (const option of allowedActions(ticket.kind)) {
    const opt = el('option', { value: option }, option.replace('_', ' '));
    if (option === form.type) opt.setAttribute('selected', 'selected');
    actionSelect.append(opt);
  }
  actionSelect.addEventListener('change', () => {
    form.type = actionSelect.value as typeof form.type;
    queue.formErrors = [];
    renderQueue(root, queue);
  });
  panel.append(el('label', {}, 'action ', actionSelect));

  const field = (
    id: keyof typeof form & string,
    label: string,
    kind: 'input' | 'textarea' = 'input',
  ) => {
    const control = el(kind, { id: `resolve-${id}` });
    control.value = String(form[id]);
    control.addEventListener('input', () => {
      (form as unknown as Record<string, string>)[id] = control.value;
    });
    return el('label', {}, `${label} `, control);
  };

  if (form.type === 'add_entity') {
    panel.append(
      field('entityId', 'entity id'),
      field('entityName', 'name'),
      field('aliases', 'aliases (comma separated)'),
      field('topic', 'topic'),
      field('slot', 'slot'),
      field('question', 'stored question'),
      field('answer', 'answer', 'textarea'),
    );
  } else if (form.type === 'fill_attribute') {
    panel.append(
      field('entityId', 'entity id'),
      field('slot', 'slot'),
      field('question', 'stored question'),
      field('answer', 'answer', 'textarea'),
    );
  } else if (form.type === 'add_relation') {
    panel.append(
      el('p', { class: 'muted' }, `pair: ${ticket.entity_pair?.join(' ↔ ') ?? '?'}`),
      field('slot', 'relation slot'),
      field('question', 'stored question'),
      field('answer', 'answer', 'textarea'),
    );
  } else {
    panel.append(field('note', 'note'));
  }

  for (const message of queue.formErrors) {
    panel.append(el('p', { class: 'banner error' }, message));
  }
  if (queue.conflict) {
    const retry = el('button', { id: 'resolve-retry' }, 'Refresh and retry');
    retry.addEventListener('click', () => void queue.retryAfterConflict());
    panel.append(
      el(
        'div',
        { class: 'banner warn', id: 'conflict-banner' },
        'The network changed under you. Your form is untouched — refresh and retry. ',
        retry,
      ),
    );
  }
  const submit = el('button', { id: 'resolve-submit' }, 'Apply');
  submit.disabled = queue.busy;
  submit.addEventListener('click', () => void queue.submit());
  panel.append(submit);
  root.append(panel);
}

// ---------------------------------------------------------------------------
// Network pane
// ---------------------------------------------------------------------------

function slotRow(
  slot: string,
  qa: QADoc | null,
  onSave: (qa: QADoc) => void,
): HTMLElement {
  const row = el('div', { class: 'slot', 'data-slot': slot });
  row.append(el('strong', {}, slot), qa ? el('span', {}, ` ${qa.question} → ${qa.answer}`)
                                        : el('span', { class: 'null-slot' }, ' NULL'));
  const question = el('input', { placeholder: 'stored question' });
  const answer = el('input', { placeholder: 'answer' });
  if (qa) {
    question.value = qa.question;
    answer.value = qa.answer;
  }
  const save = el('button', {}, 'save');
  save.addEventListener('click', () => {
    if (question.value.trim() && answer.value.trim()) {
      onSave({ question: question.value.trim(), answer: answer.value.trim() });
    }
  });
  row.append(el('div', { class: 'edit' }, question, answer, save));
  return row;
}

export function renderNetwork(root: HTMLElement, network: NetworkController): void {
  root.replaceChildren();
  root.append(el('h2', {}, 'Network'));
  if (network.error) {
    root.append(el('div', { class: 'banner error' }, network.error));
  }
  const doc = network.doc;
  if (!doc) {
    root.append(el('p', { class: 'muted' }, 'loading…'));
    return;
  }
  const columns = el('div', { class: 'columns' });
  const index = el('div', { class: 'col', id: 'entity-index' });
  for (const [topic, entities] of network.entitiesByTopic()) {
    index.append(el('h3', {}, topic));
    const list = el('ul', {});
    for (const entity of entities) {
      const item = el('li', { class: 'entity', 'data-id': entity.id }, entity.name);
      item.addEventListener('click', () => {
        network.selectedEntityId = entity.id;
        renderNetwork(root, network);
      });
      list.append(item);
    }
    index.append(list);
  }
  columns.append(index);

  const detail = el('div', { class: 'col', id: 'entity-detail' });
  const selected = network.selectedEntityId
    ? network.entity(network.selectedEntityId)
    : null;
  if (selected) {
    detail.append(el('h3', {}, selected.name));
    if (selected.aliases.length) {
      detail.append(el('p', { class: 'muted' }, `aliases: ${selected.aliases.join(', ')}`));
    }
    for (const schemaSlot of doc.attribute_schema) {
      detail.append(
        slotRow(schemaSlot.id, selected.attributes[schemaSlot.id] ?? null, (qa) => {
          void network.saveAttribute(selected.id, schemaSlot.id, qa);
        }),
      );
    }
    detail.append(el('h4', {}, 'edges'));
    for (const edge of network.edgesOf(selected.id)) {
      const other = edge.a === selected.id ? edge.b : edge.a;
      const box = el('div', { class: 'edge card' }, el('strong', {}, `↔ ${other}`));
      for (const schemaSlot of doc.relation_schema) {
        box.append(
          slotRow(schemaSlot.id, edge.relations[schemaSlot.id] ?? null, (qa) => {
            void network.saveRelation(edge.a, edge.b, schemaSlot.id, qa);
          }),
        );
      }
      detail.append(box);
    }
  } else {
    detail.append(el('p', { class: 'muted' }, 'pick an entity'));
  }
  columns.append(detail);
  root.append(columns);
}

export function renderHeader(
  root: HTMLElement,
  networkId: string,
  version: number | null,
): void {
  root.replaceChildren(
    el('span', { class: 'brand' }, 'conceptqa console'),
    el('span', { class: 'muted', id: 'header-network' }, ` ${networkId}`),
    el(
      'span',
      { class: 'version', id: 'header-version' },
      version === null ? 'version —' : `version ${version}`,
    ),
  );
}
