// @vitest-environment jsdom

import { describe, expect, it } from 'vitest';

import { renderBwsTask, renderLikertTask } from '../src/dom.js';
import { en, es } from '../src/locale.js';
import type { BwsSubmission, LikertSubmission } from '../src/types.js';
import { bwsView, likertView } from './mockService.js';

function container(): HTMLElement {
  const node = document.createElement('div');
  document.body.appendChild(node);
  return node;
}

function submitButton(root: HTMLElement): HTMLButtonElement {
  return root.querySelector('button.submit')!;
}

function pick(root: HTMLElement, role: 'best' | 'worst', summaryId: string): void {
  const input = root.querySelector<HTMLInputElement>(
    `input[name=${role}][data-summary="${summaryId}"]`,
  )!;
  input.dispatchEvent(new Event('change'));
}

describe('renderBwsTask', () => {
  it('shows the debate, four summaries, and a disabled submit', () => {
    const root = container();
    renderBwsTask(root, bwsView('a1', 'd1'), es, () => {});
    expect(root.textContent).toContain('texto del debate d1');
    expect(root.querySelectorAll('.summary-card')).toHaveLength(4);
    expect(submitButton(root).disabled).toBe(true);
  });

  it('keeps submit disabled while best equals worst', () => {
    const root = container();
    renderBwsTask(root, bwsView('a1', 'd1'), es, () => {});
    pick(root, 'best', 'd1-s2');
    expect(submitButton(root).disabled).toBe(true);
    pick(root, 'worst', 'd1-s2');
    expect(submitButton(root).disabled).toBe(true);
    pick(root, 'worst', 'd1-s0');
    expect(submitButton(root).disabled).toBe(false);
  });

  it('submits the state payload on click', () => {
    const root = container();
    let submitted: BwsSubmission | null = null;
    renderBwsTask(root, bwsView('a1', 'd1'), es, (payload) => {
      submitted = payload;
    });
    pick(root, 'best', 'd1-s1');
    pick(root, 'worst', 'd1-s3');
    submitButton(root).click();
    expect(submitted).toEqual({
      assignment_id: 'a1',
      best_summary_id: 'd1-s1',
      worst_summary_id: 'd1-s3',
    });
  });

  it('never exposes model information in the DOM', () => {
    const root = container();
    renderBwsTask(root, bwsView('a1', 'd1'), es, () => {});
    expect(root.innerHTML).not.toMatch(/model/i);
  });
});

function rate(root: HTMLElement, dimension: string, value: number): void {
  const input = root.querySelector<HTMLInputElement>(
    `.dimension-${dimension} input[value="${value}"]`,
  )!;
  input.dispatchEvent(new Event('change'));
}

describe('renderLikertTask', () => {
  it('renders four labelled scales with help text', () => {
    const root = container();
    renderLikertTask(root, likertView('a2', 'd2'), es, () => {});
    expect(root.querySelectorAll('fieldset.dimension')).toHaveLength(4);
    expect(root.querySelectorAll('input[type=radio]')).toHaveLength(16);
    expect(root.textContent).toContain(es.dimensions.consistency.help);
  });

  it('renders the agreement scale labels (English locale)', () => {
    const root = container();
    renderLikertTask(root, likertView('a2', 'd2'), en, () => {});
    expect(root.textContent).toContain('1 (Strongly disagree)');
    expect(root.textContent).toContain('4 (Strongly agree)');
  });

  it('enables submit only when all four dimensions are rated', () => {
    const root = container();
    renderLikertTask(root, likertView('a2', 'd2'), es, () => {});
    rate(root, 'informativeness', 3);
    rate(root, 'fluency', 2);
    rate(root, 'consistency', 4);
    expect(submitButton(root).disabled).toBe(true);
    rate(root, 'creativity', 1);
    expect(submitButton(root).disabled).toBe(false);
  });

  it('submits the collected ratings', () => {
    const root = container();
    let submitted: LikertSubmission | null = null;
    renderLikertTask(root, likertView('a2', 'd2'), es, (payload) => {
      submitted = payload;
    });
    rate(root, 'informativeness', 3);
    rate(root, 'fluency', 2);
    rate(root, 'consistency', 4);
    rate(root, 'creativity', 1);
    submitButton(root).click();
    expect(submitted).toEqual({
      summary_id: 'd2-s0',
      ratings: { informativeness: 3, fluency: 2, consistency: 4, creativity: 1 },
      assignment_id: 'a2',
    });
  });
});
