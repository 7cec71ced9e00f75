import type {
  CreateSessionResponse,
  FinishResponse,
  NetworkStats,
  SessionState,
  SpaceInfo,
} from "./types";

export class GatewayError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function errorOf(response: Response): Promise<GatewayError> {
  let message = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.error === "string") message = body.error;
  } catch {
    /* non-JSON error body */
  }
  return new GatewayError(response.status, message);
}

/** Thin fetch wrapper around the gateway; all state lives server-side. */
export class GatewayClient {
  constructor(public baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) throw await errorOf(response);
    return (await response.json()) as T;
  }

  private async postJson<T>(path: string, payload?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: payload === undefined ? "{}" : JSON.stringify(payload),
    });
    if (!response.ok) throw await errorOf(response);
    return (await response.json()) as T;
  }

  space(): Promise<SpaceInfo> {
    return this.getJson("/space");
  }

  createSession(space?: string): Promise<CreateSessionResponse> {
    return this.postJson("/sessions", space ? { space } : {});
  }

  sessionState(sessionId: string): Promise<SessionState> {
    return this.getJson(`/sessions/${sessionId}`);
  }

  choose(sessionId: string, position: number, value: number): Promise<SessionState> {
    return this.postJson(`/sessions/${sessionId}/choice`, { position, value });
  }

  finish(sessionId: string): Promise<FinishResponse> {
    return this.postJson(`/sessions/${sessionId}/finish`);
  }

  networkStats(): Promise<NetworkStats> {
    return this.getJson("/network/stats");
  }

  miniatureUrl(path: string): string {
    return this.baseUrl + path;
  }

  async miniatureBytes(path: string): Promise<ArrayBuffer> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) throw await errorOf(response);
    return response.arrayBuffer();
  }
}
