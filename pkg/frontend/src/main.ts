/** Browser entry point.
 *
 * Connects to the evaluation service named by ?service=... (same origin by
 * default), identifying the evaluator via ?evaluator=...; locale via
 * ?lang=es|en (Spanish by default).
 */

import { ApiClient } from './client.js';
import { renderBwsTask, renderDone, renderLikertTask, renderNotice } from './dom.js';
import { pickLocale } from './locale.js';
import { EvaluatorSession, type Screen } from './session.js';

function progressBar(openCount: number, label: (n: number) => string): HTMLElement {
  const bar = document.createElement('p');
  bar.className = 'progress';
  bar.textContent = label(openCount);
  return bar;
}

async function showNext(
  session: EvaluatorSession,
  root: HTMLElement,
  locale: ReturnType<typeof pickLocale>,
): Promise<void> {
  let screen: Screen;
  try {
    screen = await session.loadNext();
  } catch (error) {
    renderNotice(root, `${locale.networkError} (${String(error)})`);
    return;
  }
  if (screen.kind === 'done') {
    renderDone(root, locale);
    return;
  }

  const afterSubmit = async (result: string) => {
    if (result === 'network-error') {
      renderNotice(root, locale.networkError, () => resubmit(), locale.retry);
      return;
    }
    if (result === 'already-submitted') {
      renderNotice(root, locale.alreadySubmitted);
    }
    await showNext(session, root, locale);
  };

  const resubmit = async () => afterSubmit(await session.retry());

  const { view } = screen;
  if (view.kind === 'bws') {
    renderBwsTask(root, view, locale, async (payload) =>
      afterSubmit(await session.submitBws(payload)),
    );
  } else {
    renderLikertTask(root, view, locale, async (payload) =>
      afterSubmit(await session.submitLikert(payload)),
    );
  }
  root.prepend(progressBar(screen.openCount, locale.progress));
}

export async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const locale = pickLocale(params.get('lang'));
  const evaluator = params.get('evaluator') ?? '';
  const service = params.get('service') ?? '';
  const root = document.getElementById('app')!;
  document.title = locale.appTitle;
  if (!evaluator) {
    renderNotice(root, 'missing ?evaluator=<id> parameter');
    return;
  }
  const session = new EvaluatorSession(new ApiClient(service, evaluator));
  await showNext(session, root, locale);
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  void start();
}
