// Typed client for the semgraph HTTP service. The board never computes a
// measure itself; every number on screen comes from these calls.

export interface MeasureEntry {
  id: string;
  family: string;
  normalized: boolean;
  note: string;
}

export interface Proposal {
  candidate: string;
  projected_average: number;
  delta: number;
}

export interface DecisionRecord {
  candidate: string;
  decision: "accepted" | "rejected";
  resulting_average: number;
}

export interface SessionState {
  session_id: string;
  measure: string;
  base: string[];
  pool: string[];
  current_average: number;
  averages: number[];
  history: DecisionRecord[];
}

export interface ProposeResponse {
  session_id: string;
  current_average: number;
  proposals: Proposal[];
}

export class ServiceError extends Error {
  constructor(message: string, public code: string,
              public details: Record<string, unknown> = {}) {
    super(message);
  }
}

async function fetchJson<T>(url: string, init?: RequestInit): Promise<T> {
  const res = await fetch(url, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  if (!res.ok) {
    let code = `http_${res.status}`;
    let message = `${res.status} ${res.statusText}`;
    let details: Record<string, unknown> = {};
    try {
      const body = await res.json();
      if (body && typeof body.message === "string") {
        code = body.code ?? code;
        message = body.message;
        details = body.details ?? {};
      }
    } catch {
      // non-JSON error body; keep the HTTP status text
    }
    throw new ServiceError(message, code, details);
  }
  return res.json() as Promise<T>;
}

export class ServiceClient {
  constructor(public baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  measures(): Promise<{ measures: MeasureEntry[] }> {
    return fetchJson(this.url("/measures"));
  }

  createSession(base: string[], measure: string,
                candidates: string[]): Promise<SessionState> {
    return fetchJson(this.url("/session"), {
      method: "POST",
      body: JSON.stringify({ base, measure, candidates }),
    });
  }

  getSession(sessionId: string): Promise<SessionState> {
    return fetchJson(this.url(`/session/${encodeURIComponent(sessionId)}`));
  }

  propose(sessionId: string, k?: number): Promise<ProposeResponse> {
    return fetchJson(this.url(`/session/${encodeURIComponent(sessionId)}/propose`), {
      method: "POST",
      body: JSON.stringify(k ? { k } : {}),
    });
  }

  decide(sessionId: string, candidate: string,
         decision: "accepted" | "rejected"): Promise<SessionState> {
    return fetchJson(this.url(`/session/${encodeURIComponent(sessionId)}/decision`), {
      method: "POST",
      body: JSON.stringify({ candidate, decision }),
    });
  }
}
