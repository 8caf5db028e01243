/**
 * Typed client for the decision-model HTTP API.
 *
 * Every method resolves to the parsed response body.  Non-2xx responses
 * reject with {@link ApiError} carrying the status and the service's error
 * body; transport failures reject with {@link NetworkError}.
 */

import type {
  ConformityResponse,
  DesignDocument,
  ErrorBody,
  MeaningResponse,
  ModelDocument,
  ModelSummary,
  SessionResource,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ErrorBody | null,
  ) {
    super(body?.detail ?? `request failed with status ${status}`);
    this.name = "ApiError";
  }

  /** Machine-readable error code from the response body, if any. */
  get code(): string | null {
    return this.body?.error ?? null;
  }

  get witnesses(): string[] {
    return this.body?.witnesses ?? [];
  }
}

export class NetworkError extends Error {
  constructor(message: string, options?: { cause?: unknown }) {
    super(message, options);
    this.name = "NetworkError";
  }
}

export class ApiClient {
  /** @param base origin of the service, e.g. "http://127.0.0.1:8000"; "" means same origin. */
  constructor(readonly base: string) {}

  listModels(): Promise<ModelSummary[]> {
    return this.request("GET", "/models") as Promise<ModelSummary[]>;
  }

  getModel(modelId: string): Promise<ModelDocument> {
    return this.request(
      "GET",
      `/models/${encodeURIComponent(modelId)}`,
    ) as Promise<ModelDocument>;
  }

  getMeaning(
    modelId: string,
    options: { limit?: number; wellFounded?: boolean } = {},
  ): Promise<MeaningResponse> {
    const query = new URLSearchParams();
    if (options.limit !== undefined) query.set("limit", String(options.limit));
    if (options.wellFounded !== undefined) {
      query.set("wellFounded", String(options.wellFounded));
    }
    const suffix = query.size > 0 ? `?${query}` : "";
    return this.request(
      "GET",
      `/models/${encodeURIComponent(modelId)}/meaning${suffix}`,
    ) as Promise<MeaningResponse>;
  }

  checkConformity(
    modelId: string,
    design: DesignDocument,
  ): Promise<ConformityResponse> {
    return this.request(
      "POST",
      `/models/${encodeURIComponent(modelId)}/conformity`,
      design,
    ) as Promise<ConformityResponse>;
  }

  createSession(modelId: string): Promise<SessionResource> {
    return this.request("POST", "/sessions", { modelId }) as Promise<SessionResource>;
  }

  getSession(sessionId: string): Promise<SessionResource> {
    return this.request(
      "GET",
      `/sessions/${encodeURIComponent(sessionId)}`,
    ) as Promise<SessionResource>;
  }

  choose(
    sessionId: string,
    issue: string,
    alternative: string,
  ): Promise<SessionResource> {
    return this.request(
      "POST",
      `/sessions/${encodeURIComponent(sessionId)}/choices`,
      { issue, alternative },
    ) as Promise<SessionResource>;
  }

  retract(sessionId: string, issue: string): Promise<SessionResource> {
    return this.request(
      "DELETE",
      `/sessions/${encodeURIComponent(sessionId)}/choices/${encodeURIComponent(issue)}`,
    ) as Promise<SessionResource>;
  }

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<unknown> {
    let response: Response;
    try {
      response = await fetch(this.base + path, {
        method,
        headers:
          body === undefined ? undefined : { "content-type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (cause) {
      throw new NetworkError(
        `cannot reach the decision service at ${this.base || "this origin"}`,
        { cause },
      );
    }
    if (!response.ok) {
      let parsed: ErrorBody | null = null;
      try {
        parsed = (await response.json()) as ErrorBody;
      } catch {
        parsed = null;
      }
      throw new ApiError(response.status, parsed);
    }
    return response.json();
  }
}
