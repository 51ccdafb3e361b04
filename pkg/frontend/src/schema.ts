/** Runtime validation of everything that crosses the wire.
 *
 * Outgoing submissions are validated before they leave the client, so the
 * UI cannot construct a request the server would reject; incoming payloads
 * are validated so a malformed response fails loudly instead of rendering
 * a broken task.
 */

import { z } from 'zod';

const rating = z.number().int().min(1).max(4);

export const summaryViewSchema = z
  .object({
    summary_id: z.string().min(1),
    text: z.string(),
  })
  .strict();

export const assignmentViewSchema = z
  .object({
    assignment_id: z.string().min(1),
    kind: z.enum(['bws', 'likert']),
    debate_id: z.string().min(1),
    debate_text: z.string(),
    summaries: z.array(summaryViewSchema).min(1),
  })
  .strict()
  .refine(
    (view) => (view.kind === 'bws' ? view.summaries.length === 4 : view.summaries.length === 1),
    { message: 'bws tasks carry 4 summaries, likert tasks 1' },
  );

export const nextAssignmentSchema = z.object({
  assignment: assignmentViewSchema.nullable(),
  open_count: z.number().int().min(0),
  detail: z.string().optional(),
});

export const bwsSubmissionSchema = z
  .object({
    assignment_id: z.string().min(1),
    best_summary_id: z.string().min(1),
    worst_summary_id: z.string().min(1),
  })
  .strict()
  .refine((body) => body.best_summary_id !== body.worst_summary_id, {
    message: 'best and worst must differ',
  });

export const likertSubmissionSchema = z
  .object({
    summary_id: z.string().min(1),
    ratings: z
      .object({
        informativeness: rating,
        fluency: rating,
        consistency: rating,
        creativity: rating,
      })
      .strict(),
    assignment_id: z.string().min(1).optional(),
  })
  .strict();

export const submitAckSchema = z.object({
  status: z.enum(['stored', 'duplicate']),
  assignment_id: z.string(),
});
