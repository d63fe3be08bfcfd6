// Board wiring: every user action becomes a service call and the DOM is
// re-rendered from the response (no optimistic updates). The session id is
// kept in the URL hash so a board can be reopened or shared.

import { ServiceClient, ServiceError } from "./api.js";
import { render } from "./render.js";
import {
  BoardState, addChip, initialState, removeChip, withError, withSession,
} from "./state.js";

export class Board {
  state: BoardState;
  client: ServiceClient;

  constructor(public root: HTMLElement, serviceUrl: string,
              client?: ServiceClient) {
    this.client = client ?? new ServiceClient(serviceUrl);
    this.state = initialState(serviceUrl);
  }

  async start(sessionId?: string): Promise<void> {
    try {
      const { measures } = await this.client.measures();
      this.state = { ...this.state, measures };
    } catch (err) {
      this.state = withError(this.state, describe(err));
    }
    if (sessionId) {
      await this.resume(sessionId);
    }
    this.draw();
  }

  async resume(sessionId: string): Promise<void> {
    try {
      const session = await this.client.getSession(sessionId);
      const proposed = await this.client.propose(sessionId);
      this.state = withSession(this.state, session, proposed.proposals);
      this.rememberSession(sessionId);
    } catch (err) {
      this.state = withError(this.state, describe(err));
    }
    this.draw();
  }

  async createSession(): Promise<void> {
    this.state = { ...this.state, busy: true, error: null };
    this.draw();
    try {
      const session = await this.client.createSession(
        this.state.baseDraft, this.state.selectedMeasure,
        this.state.candidateDraft);
      const proposed = await this.client.propose(session.session_id);
      this.state = withSession(this.state, session, proposed.proposals);
      this.rememberSession(session.session_id);
    } catch (err) {
      this.state = withError(this.state, describe(err));
    }
    this.draw();
  }

  async decide(candidate: string,
               decision: "accepted" | "rejected"): Promise<void> {
    const session = this.state.session;
    if (!session) {
      return;
    }
    this.state = { ...this.state, busy: true };
    this.draw();
    try {
      const updated = await this.client.decide(session.session_id, candidate,
                                               decision);
      const proposed = await this.client.propose(updated.session_id);
      this.state = withSession(this.state, updated, proposed.proposals);
    } catch (err) {
      this.state = withError(this.state, describe(err));
    }
    this.draw();
  }

  rememberSession(sessionId: string): void {
    if (typeof window !== "undefined" && window.location) {
      window.location.hash = `session=${sessionId}`;
    }
  }

  draw(): void {
    render(this.root, this.state);
    this.bind();
  }

  bind(): void {
    const baseForm = this.root.querySelector<HTMLFormElement>("#base-form");
    baseForm?.addEventListener("submit", (event) => {
      event.preventDefault();
      const input = this.root.querySelector<HTMLInputElement>("#base-input");
      if (input && input.value.trim()) {
        this.state = { ...this.state,
                       baseDraft: addChip(this.state.baseDraft, input.value) };
        this.draw();
        this.root.querySelector<HTMLInputElement>("#base-input")?.focus();
      }
    });

    const candForm = this.root.querySelector<HTMLFormElement>("#candidate-form");
    candForm?.addEventListener("submit", (event) => {
      event.preventDefault();
      const input = this.root.querySelector<HTMLInputElement>("#candidate-input");
      if (input && input.value.trim()) {
        this.state = { ...this.state,
                       candidateDraft: addChip(this.state.candidateDraft,
                                               input.value) };
        this.draw();
        this.root.querySelector<HTMLInputElement>("#candidate-input")?.focus();
      }
    });

    this.root.querySelectorAll<HTMLButtonElement>(".chip-remove").forEach(
      (button) => button.addEventListener("click", () => {
        const kind = button.dataset.kind;
        const token = button.dataset.token ?? "";
        if (kind === "base") {
          this.state = { ...this.state,
                         baseDraft: removeChip(this.state.baseDraft, token) };
        } else {
          this.state = { ...this.state,
                         candidateDraft: removeChip(this.state.candidateDraft,
                                                    token) };
        }
        this.draw();
      }));

    const select = this.root.querySelector<HTMLSelectElement>("#measure-select");
    select?.addEventListener("change", () => {
      this.state = { ...this.state, selectedMeasure: select.value };
    });

    this.root.querySelector<HTMLButtonElement>("#create-session")
      ?.addEventListener("click", () => { void this.createSession(); });

    this.root.querySelectorAll<HTMLButtonElement>(".decide").forEach(
      (button) => button.addEventListener("click", () => {
        const candidate = button.dataset.candidate ?? "";
        const decision = button.dataset.decision as "accepted" | "rejected";
        void this.decide(candidate, decision);
      }));
  }
}

function describe(err: unknown): string {
  if (err instanceof ServiceError) {
    const extra = err.details && Object.keys(err.details).length
      ? ` (${JSON.stringify(err.details)})` : "";
    return `${err.message}${extra}`;
  }
  return err instanceof Error ? err.message : String(err);
}

export function bootstrap(): void {
  const params = new URLSearchParams(window.location.search);
  const serviceUrl = params.get("service") ?? "http://127.0.0.1:8034";
  const hash = new URLSearchParams(window.location.hash.replace(/^#/, ""));
  const sessionId = hash.get("session") ?? undefined;
  const root = document.getElementById("app");
  if (root) {
    void new Board(root, serviceUrl).start(sessionId);
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  bootstrap();
}
