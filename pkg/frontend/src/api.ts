import type {
  Actual,
  CreateSessionResponse,
  OutcomeResponse,
  Recommendation,
  SessionStateResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
  }
}

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") {
      return body.detail;
    }
  } catch {
    // non-JSON error body; fall through
  }
  return `request failed with status ${response.status}`;
}

export class AdvisorClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    return (await response.json()) as T;
  }

  createSession(policy?: string): Promise<CreateSessionResponse> {
    return this.request("/v1/sessions", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(policy ? { policy } : {}),
    });
  }

  recommendation(sessionId: string): Promise<Recommendation> {
    return this.request(`/v1/sessions/${sessionId}/recommendation`);
  }

  submitOutcome(sessionId: string, moduleId: string, actual: Actual): Promise<OutcomeResponse> {
    return this.request(`/v1/sessions/${sessionId}/outcomes`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ module_id: moduleId, actual }),
    });
  }

  state(sessionId: string): Promise<SessionStateResponse> {
    return this.request(`/v1/sessions/${sessionId}/state`);
  }
}
