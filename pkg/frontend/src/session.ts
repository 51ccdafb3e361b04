/** Evaluator session: one active assignment at a time, optimistic submit
 * with the server as arbiter.
 *
 * A judgment is preserved locally (``pending``) from the moment the
 * evaluator submits until the server acknowledges it, so a network failure
 * never loses work: retry re-sends the identical payload and the server's
 * idempotent duplicate handling makes that safe. A 409 conflict means the
 * assignment was already submitted (e.g. in another tab); the session
 * reports it and moves on. The progress number always comes from the
 * server's open-assignment count, never from client bookkeeping.
 */

import { ApiClient, TransportFailure, type SubmitOutcome } from './client.js';
import type { AssignmentView, BwsSubmission, LikertSubmission } from './types.js';

export type Screen =
  | { kind: 'task'; view: AssignmentView; openCount: number }
  | { kind: 'done' };

export type SubmitResult = 'submitted' | 'already-submitted' | 'network-error';

type PendingJudgment =
  | { task: 'bws'; payload: BwsSubmission }
  | { task: 'likert'; payload: LikertSubmission };

export class EvaluatorSession {
  private pendingJudgment: PendingJudgment | null = null;
  private lastOpenCount = 0;

  constructor(private readonly client: ApiClient) {}

  get pending(): PendingJudgment | null {
    return this.pendingJudgment;
  }

  get openCount(): number {
    return this.lastOpenCount;
  }

  async loadNext(): Promise<Screen> {
    const response = await this.client.nextAssignment();
    this.lastOpenCount = response.open_count;
    if (response.assignment === null) {
      return { kind: 'done' };
    }
    return { kind: 'task', view: response.assignment, openCount: response.open_count };
  }

  async submitBws(payload: BwsSubmission): Promise<SubmitResult> {
    this.pendingJudgment = { task: 'bws', payload };
    return this.flush();
  }

  async submitLikert(payload: LikertSubmission): Promise<SubmitResult> {
    this.pendingJudgment = { task: 'likert', payload };
    return this.flush();
  }

  /** Re-send the preserved judgment after a transport failure. */
  async retry(): Promise<SubmitResult> {
    if (!this.pendingJudgment) throw new Error('nothing to retry');
    return this.flush();
  }

  private async flush(): Promise<SubmitResult> {
    const pending = this.pendingJudgment;
    if (!pending) throw new Error('nothing to submit');
    let outcome: SubmitOutcome;
    try {
      outcome =
        pending.task === 'bws'
          ? await this.client.submitBws(pending.payload)
          : await this.client.submitLikert(pending.payload);
    } catch (error) {
      if (error instanceof TransportFailure) {
        return 'network-error'; // judgment stays pending
      }
      throw error;
    }
    this.pendingJudgment = null;
    return outcome.kind === 'acknowledged' ? 'submitted' : 'already-submitted';
  }
}
