/** Client for the rating service's JSON endpoints.
 *
 * Submissions are optimistic with queued retry: each logical form gets
 * one idempotency key, so a duplicate click or a retried request lands
 * as a single effective record server-side.
 */

export interface StudyItem {
  item_id: string;
  sample_id: string;
  protocol: string;
  system_left: string;
  system_right: string;
  anchor_media: string;
  candidate_left_media: string;
  candidate_right_media: string;
  vad_segments: { channel: string; start_s: number; end_s: number }[];
}

export interface NextItemResponse {
  done: boolean;
  item: StudyItem | null;
  completed_ratings?: number;
}

export interface RatingResponse {
  dimension_id: string;
  value: number;
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private nextKey = 0;

  constructor(
    private baseUrl: string,
    private studyId: string,
    private fetchImpl: FetchLike = fetch,
    private maxRetries = 3,
    private retryDelayMs = 50,
  ) {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  newClientKey(): string {
    this.nextKey += 1;
    return `${this.studyId}-${Date.now()}-${this.nextKey}`;
  }

  async register(raterId: string): Promise<void> {
    const response = await this.fetchImpl(
      this.url(`/api/study/${this.studyId}/raters`),
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ rater_id: raterId }),
      },
    );
    if (!response.ok) throw new Error(`registration failed: ${response.status}`);
  }

  async nextItem(raterId: string): Promise<NextItemResponse> {
    const response = await this.fetchImpl(
      this.url(`/api/study/${this.studyId}/next?rater=${encodeURIComponent(raterId)}`),
    );
    if (!response.ok) throw new Error(`next-item failed: ${response.status}`);
    return (await response.json()) as NextItemResponse;
  }

  async protocol(): Promise<unknown> {
    const response = await this.fetchImpl(this.url(`/api/study/${this.studyId}/protocol`));
    if (!response.ok) throw new Error(`protocol fetch failed: ${response.status}`);
    return response.json();
  }

  /** POST with queued retry; the same clientKey is reused on every attempt. */
  private async postWithRetry(path: string, body: unknown): Promise<Response> {
    let lastError: unknown = null;
    for (let attempt = 0; attempt <= this.maxRetries; attempt += 1) {
      try {
        const response = await this.fetchImpl(this.url(path), {
          method: "POST",
          headers: { "content-type": "application/json" },
          body: JSON.stringify(body),
        });
        if (response.ok) return response;
        if (response.status >= 400 && response.status < 500) return response; // not retryable
        lastError = new Error(`status ${response.status}`);
      } catch (error) {
        lastError = error;
      }
      await new Promise((resolve) => setTimeout(resolve, this.retryDelayMs));
    }
    throw lastError instanceof Error ? lastError : new Error("request failed");
  }

  async submitRatings(
    itemId: string,
    raterId: string,
    responses: RatingResponse[],
    clientKey: string,
  ): Promise<Response> {
    return this.postWithRetry("/api/ratings", {
      study_id: this.studyId,
      item_id: itemId,
      rater_id: raterId,
      responses,
      client_key: clientKey,
    });
  }

  async submitFlag(
    itemId: string,
    raterId: string,
    categories: string[],
    note: string,
  ): Promise<Response> {
    return this.postWithRetry("/api/flags", {
      study_id: this.studyId,
      item_id: itemId,
      rater_id: raterId,
      categories,
      note,
    });
  }
}
