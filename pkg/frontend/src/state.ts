/** Pure task state machines.
 *
 * All enable/disable logic lives here so it is testable without a DOM and
 * so payload construction is impossible while a task is incomplete: the
 * builders return null until the state satisfies the server's invariants.
 */

import { bwsSubmissionSchema, likertSubmissionSchema } from './schema.js';
import {
  LIKERT_DIMENSIONS,
  type AssignmentView,
  type BwsSubmission,
  type LikertDimension,
  type LikertSubmission,
} from './types.js';

export class BwsTaskState {
  best: string | null = null;
  worst: string | null = null;

  constructor(readonly view: AssignmentView) {
    if (view.kind !== 'bws') throw new Error('not a best-worst task');
  }

  pickBest(summaryId: string): void {
    this.requireMember(summaryId);
    this.best = summaryId;
  }

  pickWorst(summaryId: string): void {
    this.requireMember(summaryId);
    this.worst = summaryId;
  }

  private requireMember(summaryId: string): void {
    if (!this.view.summaries.some((s) => s.summary_id === summaryId)) {
      throw new Error(`summary ${summaryId} is not part of this tuple`);
    }
  }

  /** Submit stays disabled until both picks exist and differ. */
  canSubmit(): boolean {
    return this.best !== null && this.worst !== null && this.best !== this.worst;
  }

  payload(): BwsSubmission | null {
    if (!this.canSubmit()) return null;
    return bwsSubmissionSchema.parse({
      assignment_id: this.view.assignment_id,
      best_summary_id: this.best,
      worst_summary_id: this.worst,
    });
  }
}

export class LikertTaskState {
  private ratings = new Map<LikertDimension, number>();

  constructor(readonly view: AssignmentView) {
    if (view.kind !== 'likert') throw new Error('not a likert task');
  }

  rate(dimension: LikertDimension, value: number): void {
    if (!LIKERT_DIMENSIONS.includes(dimension)) {
      throw new Error(`unknown dimension ${dimension}`);
    }
    if (!Number.isInteger(value) || value < 1 || value > 4) {
      throw new Error(`rating must be an integer in 1..4, got ${value}`);
    }
    this.ratings.set(dimension, value);
  }

  rated(dimension: LikertDimension): number | undefined {
    return this.ratings.get(dimension);
  }

  /** Submit requires all four dimensions. */
  canSubmit(): boolean {
    return LIKERT_DIMENSIONS.every((d) => this.ratings.has(d));
  }

  payload(): LikertSubmission | null {
    if (!this.canSubmit()) return null;
    const ratings = Object.fromEntries(
      LIKERT_DIMENSIONS.map((d) => [d, this.ratings.get(d)!]),
    ) as Record<LikertDimension, number>;
    return likertSubmissionSchema.parse({
      summary_id: this.view.summaries[0].summary_id,
      ratings,
      assignment_id: this.view.assignment_id,
    });
  }
}
