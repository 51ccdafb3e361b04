/** DOM rendering for the two task screens.
 *
 * Summaries are rendered in the server's display order (no client-side
 * shuffle, so the server's audit trail stays authoritative), with no model
 * information anywhere in the DOM. Handlers mutate the pure task state and
 * re-derive the submit button's disabled flag from it.
 */

import type { Locale } from './locale.js';
import { BwsTaskState, LikertTaskState } from './state.js';
import type { BwsSubmission, LikertSubmission } from './types.js';
import { LIKERT_DIMENSIONS, type AssignmentView } from './types.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function debatePanel(view: AssignmentView, locale: Locale): HTMLElement {
  const panel = el('section', 'debate');
  panel.appendChild(el('h2', undefined, locale.debateHeading));
  const body = el('pre', 'debate-text', view.debate_text);
  panel.appendChild(body);
  return panel;
}

export function renderBwsTask(
  container: HTMLElement,
  view: AssignmentView,
  locale: Locale,
  onSubmit: (payload: BwsSubmission) => void,
): BwsTaskState {
  const state = new BwsTaskState(view);
  container.replaceChildren();
  container.appendChild(el('p', 'instructions', locale.bwsInstructions));
  container.appendChild(debatePanel(view, locale));

  const list = el('section', 'summaries');
  list.appendChild(el('h2', undefined, locale.summariesHeading));
  const submit = el('button', 'submit', locale.submit);
  submit.disabled = true;

  const refresh = () => {
    submit.disabled = !state.canSubmit();
    for (const input of container.querySelectorAll<HTMLInputElement>('input[type=radio]')) {
      const sid = input.dataset.summary!;
      input.checked =
        input.name === 'best' ? state.best === sid : state.worst === sid;
    }
  };

  view.summaries.forEach((summary, index) => {
    const card = el('article', 'summary-card');
    card.appendChild(el('h3', undefined, `${index + 1}`));
    card.appendChild(el('p', 'summary-text', summary.text));
    for (const role of ['best', 'worst'] as const) {
      const label = el('label', `pick pick-${role}`);
      const input = el('input');
      input.type = 'radio';
      input.name = role;
      input.dataset.summary = summary.summary_id;
      input.addEventListener('change', () => {
        if (role === 'best') state.pickBest(summary.summary_id);
        else state.pickWorst(summary.summary_id);
        refresh();
      });
      label.appendChild(input);
      label.appendChild(
        document.createTextNode(role === 'best' ? locale.best : locale.worst),
      );
      card.appendChild(label);
    }
    list.appendChild(card);
  });
  container.appendChild(list);

  submit.addEventListener('click', () => {
    const payload = state.payload();
    if (payload) onSubmit(payload);
  });
  container.appendChild(submit);
  return state;
}

export function renderLikertTask(
  container: HTMLElement,
  view: AssignmentView,
  locale: Locale,
  onSubmit: (payload: LikertSubmission) => void,
): LikertTaskState {
  const state = new LikertTaskState(view);
  container.replaceChildren();
  container.appendChild(el('p', 'instructions', locale.likertInstructions));
  container.appendChild(debatePanel(view, locale));

  const card = el('article', 'summary-card');
  card.appendChild(el('h3', undefined, locale.summariesHeading));
  card.appendChild(el('p', 'summary-text', view.summaries[0].text));
  container.appendChild(card);

  const submit = el('button', 'submit', locale.submit);
  submit.disabled = true;

  const form = el('section', 'likert-form');
  for (const dimension of LIKERT_DIMENSIONS) {
    const block = el('fieldset', `dimension dimension-${dimension}`);
    block.appendChild(el('legend', undefined, locale.dimensions[dimension].label));
    block.appendChild(el('p', 'help', locale.dimensions[dimension].help));
    for (const value of [1, 2, 3, 4] as const) {
      const label = el('label', 'scale-option');
      const input = el('input');
      input.type = 'radio';
      input.name = dimension;
      input.value = String(value);
      input.addEventListener('change', () => {
        state.rate(dimension, value);
        submit.disabled = !state.canSubmit();
      });
      label.appendChild(input);
      label.appendChild(
        document.createTextNode(`${value} (${locale.scaleLabels[value]})`),
      );
      block.appendChild(label);
    }
    form.appendChild(block);
  }
  container.appendChild(form);

  submit.addEventListener('click', () => {
    const payload = state.payload();
    if (payload) onSubmit(payload);
  });
  container.appendChild(submit);
  return state;
}

export function renderDone(container: HTMLElement, locale: Locale): void {
  container.replaceChildren(el('p', 'done', locale.allDone));
}

export function renderNotice(container: HTMLElement, text: string, retry?: () => void, retryLabel?: string): void {
  const notice = el('div', 'notice');
  notice.appendChild(el('p', undefined, text));
  if (retry) {
    const button = el('button', 'retry', retryLabel ?? 'retry');
    button.addEventListener('click', retry);
    notice.appendChild(button);
  }
  container.prepend(notice);
}
