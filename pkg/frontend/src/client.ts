/** HTTP client for the evaluation service.
 *
 * fetch is injectable for tests. Submissions distinguish three outcomes:
 * acknowledged (stored or idempotent duplicate), already submitted with a
 * different answer (server 409; the local answer is discarded and the
 * session moves on), and transport failure (the caller keeps the judgment
 * and offers a retry).
 */

import { nextAssignmentSchema, submitAckSchema } from './schema.js';
import type {
  BwsSubmission,
  LikertSubmission,
  NextAssignmentResponse,
  SubmitAck,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export class ConflictError extends ApiError {}

export class TransportFailure extends Error {}

export type SubmitOutcome =
  | { kind: 'acknowledged'; ack: SubmitAck }
  | { kind: 'already-submitted' };

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly evaluatorId: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private headers(): Record<string, string> {
    return {
      'Content-Type': 'application/json',
      Authorization: `Bearer ${this.evaluatorId}`,
    };
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    let response: Response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}${path}`, {
        ...init,
        headers: { ...this.headers(), ...(init?.headers ?? {}) },
      });
    } catch (error) {
      throw new TransportFailure(String(error));
    }
    return response;
  }

  async nextAssignment(): Promise<NextAssignmentResponse> {
    const response = await this.request('/v1/assignments/next');
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    return nextAssignmentSchema.parse(await response.json());
  }

  private async submit(path: string, body: object): Promise<SubmitOutcome> {
    const response = await this.request(path, {
      method: 'POST',
      body: JSON.stringify(body),
    });
    if (response.status === 409) {
      return { kind: 'already-submitted' };
    }
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    return { kind: 'acknowledged', ack: submitAckSchema.parse(await response.json()) };
  }

  submitBws(body: BwsSubmission): Promise<SubmitOutcome> {
    return this.submit('/v1/judgments/bws', body);
  }

  submitLikert(body: LikertSubmission): Promise<SubmitOutcome> {
    return this.submit('/v1/judgments/likert', body);
  }
}
