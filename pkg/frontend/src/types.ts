/** Wire types shared with the evaluation service. */

export type TaskKind = 'bws' | 'likert';

export interface SummaryView {
  summary_id: string;
  text: string;
}

/** One task as served by GET /v1/assignments/next: texts in server-chosen
 * display order, opaque summary ids, no model identities anywhere. */
export interface AssignmentView {
  assignment_id: string;
  kind: TaskKind;
  debate_id: string;
  debate_text: string;
  summaries: SummaryView[];
}

export interface NextAssignmentResponse {
  assignment: AssignmentView | null;
  open_count: number;
  detail?: string;
}

export interface BwsSubmission {
  assignment_id: string;
  best_summary_id: string;
  worst_summary_id: string;
}

export const LIKERT_DIMENSIONS = [
  'informativeness',
  'fluency',
  'consistency',
  'creativity',
] as const;

export type LikertDimension = (typeof LIKERT_DIMENSIONS)[number];

export type LikertRatings = Record<LikertDimension, number>;

export interface LikertSubmission {
  summary_id: string;
  ratings: LikertRatings;
  assignment_id?: string;
}

export interface SubmitAck {
  status: 'stored' | 'duplicate';
  assignment_id: string;
}
