// Replay of the worked suggestion session against a stubbed service:
// base {bird, crayon, desk, hand, paper} shows average 0.39 with origami
// ranked first; rejecting origami promotes greeting_card. The stub returns
// scripted values only - the board never computes measures.

import { beforeEach, describe, expect, it, vi } from "vitest";

import { Board } from "../src/main.js";
import { addChip, canCreate, initialState, removeChip } from "../src/state.js";
import { escapeHtml, sparklineSvg } from "../src/render.js";

const BASE = ["bird", "crayon", "desk", "hand", "paper"];
const RANKED = [
  { candidate: "origami", projected_average: 0.2943, delta: -0.095 },
  { candidate: "greeting_card", projected_average: 0.3506, delta: -0.0387 },
  { candidate: "sketch", projected_average: 0.3923, delta: -0.0007 },
  { candidate: "drawing", projected_average: 0.3968, delta: 0.0075 },
];

interface StubSession {
  base: string[];
  decided: Map<string, string>;
  history: { candidate: string; decision: string; resulting_average: number }[];
  averages: number[];
  current: number;
}

function makeStubFetch() {
  const sessions = new Map<string, StubSession>();
  let counter = 0;

  function sessionState(id: string) {
    const s = sessions.get(id)!;
    return {
      session_id: id,
      measure: "sim:lin:sanchez-batet",
      base: s.base,
      pool: RANKED.map((p) => p.candidate)
        .filter((c) => !s.decided.has(c)),
      current_average: s.current,
      averages: s.averages,
      history: s.history,
    };
  }

  const calls: string[] = [];
  const stub = vi.fn(async (url: string | URL | Request, init?: RequestInit) => {
    const path = String(url).replace(/^https?:\/\/[^/]+/, "");
    calls.push(path);
    const ok = (body: unknown) => new Response(JSON.stringify(body), {
      status: 200, headers: { "Content-Type": "application/json" },
    });

    if (path === "/measures") {
      return ok({ measures: [{ id: "sim:lin:sanchez-batet", family: "ic-similarity", normalized: false, note: "" }] });
    }
    if (path === "/session" && init?.method === "POST") {
      const id = `stub${++counter}`;
      sessions.set(id, { base: [...BASE], decided: new Map(), history: [],
                         averages: [0.3893], current: 0.3893 });
      return ok(sessionState(id));
    }
    const propose = path.match(/^\/session\/([^/]+)\/propose$/);
    if (propose) {
      const s = sessions.get(propose[1])!;
      const proposals = RANKED.filter((p) => !s.decided.has(p.candidate));
      return ok({ session_id: propose[1], current_average: s.current, proposals });
    }
    const decision = path.match(/^\/session\/([^/]+)\/decision$/);
    if (decision) {
      const s = sessions.get(decision[1])!;
      const body = JSON.parse(String(init?.body));
      s.decided.set(body.candidate, body.decision);
      if (body.decision === "accepted") {
        s.base = [...s.base, body.candidate].sort();
        s.current = RANKED.find((p) => p.candidate === body.candidate)!
          .projected_average;
        s.averages = [...s.averages, s.current];
      }
      s.history.push({ candidate: body.candidate, decision: body.decision,
                       resulting_average: s.current });
      return ok(sessionState(decision[1]));
    }
    const get = path.match(/^\/session\/([^/]+)$/);
    if (get && sessions.has(get[1])) {
      return ok(sessionState(get[1]));
    }
    return new Response(JSON.stringify({ code: "unknown", message: "nope", details: {} }),
                        { status: 404 });
  });
  return { stub, calls };
}

function textOf(root: HTMLElement, selector: string): string {
  return root.querySelector(selector)?.textContent?.trim() ?? "";
}

function proposalOrder(root: HTMLElement): string[] {
  return Array.from(root.querySelectorAll(".proposal .candidate"))
    .map((el) => el.textContent ?? "");
}

describe("ideation board replay", () => {
  let root: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="app"></div>';
    root = document.getElementById("app")!;
    window.location.hash = "";
  });

  async function startSession(board: Board) {
    await board.start();
    for (const noun of BASE) {
      board.state = { ...board.state, baseDraft: addChip(board.state.baseDraft, noun) };
    }
    for (const cand of RANKED.map((p) => p.candidate)) {
      board.state = { ...board.state,
                      candidateDraft: addChip(board.state.candidateDraft, cand) };
    }
    board.draw();
    await board.createSession();
  }

  it("renders 0.39 and origami first, greeting_card after rejection", async () => {
    const { stub } = makeStubFetch();
    vi.stubGlobal("fetch", stub);
    const board = new Board(root, "http://stub");
    await startSession(board);

    expect(textOf(root, "#current-average")).toBe("0.3893");
    expect(proposalOrder(root)).toEqual(
      ["origami", "greeting_card", "sketch", "drawing"]);
    expect(textOf(root, ".top-proposal .candidate")).toBe("origami");

    await board.decide("origami", "rejected");
    expect(proposalOrder(root)).toEqual(["greeting_card", "sketch", "drawing"]);
    expect(textOf(root, ".top-proposal .candidate")).toBe("greeting_card");
    expect(textOf(root, ".decision-rejected .candidate")).toBe("origami");
    expect(textOf(root, "#current-average")).toBe("0.3893");
  });

  it("accepting a proposal updates the base, average, and sparkline", async () => {
    const { stub } = makeStubFetch();
    vi.stubGlobal("fetch", stub);
    const board = new Board(root, "http://stub");
    await startSession(board);

    await board.decide("origami", "accepted");
    expect(textOf(root, "#current-average")).toBe("0.2943");
    const chips = Array.from(root.querySelectorAll(".chip-base"))
      .map((el) => el.textContent ?? "");
    expect(chips).toContain("origami");
    expect(root.querySelector(".sparkline")).not.toBeNull();
    expect(textOf(root, ".decision-accepted .verdict")).toBe("accepted");
  });

  it("replayed script yields a deterministic DOM", async () => {
    const run = async () => {
      const { stub } = makeStubFetch();
      vi.stubGlobal("fetch", stub);
      document.body.innerHTML = '<div id="app"></div>';
      const target = document.getElementById("app")!;
      const board = new Board(target, "http://stub");
      await startSession(board);
      await board.decide("origami", "rejected");
      return target.innerHTML;
    };
    const first = await run();
    const second = await run();
    expect(second).toBe(first);
  });

  it("UI order always mirrors the service ranking order", async () => {
    const { stub } = makeStubFetch();
    vi.stubGlobal("fetch", stub);
    const board = new Board(root, "http://stub");
    await startSession(board);
    expect(proposalOrder(root)).toEqual(
      board.state.proposals.map((p) => p.candidate));
  });

  it("create stays disabled with an empty or 1-noun base", async () => {
    const { stub } = makeStubFetch();
    vi.stubGlobal("fetch", stub);
    const board = new Board(root, "http://stub");
    await board.start();
    expect(root.querySelector<HTMLButtonElement>("#create-session")?.disabled)
      .toBe(true);
    board.state = { ...board.state,
                    baseDraft: addChip(board.state.baseDraft, "bird") };
    board.draw();
    expect(root.querySelector<HTMLButtonElement>("#create-session")?.disabled)
      .toBe(true);
  });

  it("service errors render inline without destroying the board", async () => {
    const { stub } = makeStubFetch();
    vi.stubGlobal("fetch", stub);
    const board = new Board(root, "http://stub");
    await startSession(board);
    await board.resume("missing-session");
    expect(textOf(root, ".error")).toContain("nope");
  });

  it("sessions are recoverable by id", async () => {
    const { stub } = makeStubFetch();
    vi.stubGlobal("fetch", stub);
    const first = new Board(root, "http://stub");
    await startSession(first);
    const id = first.state.session!.session_id;

    document.body.innerHTML = '<div id="app"></div>';
    const target = document.getElementById("app")!;
    const second = new Board(target, "http://stub");
    await second.start(id);
    expect(textOf(target, "#current-average")).toBe("0.3893");
    expect(window.location.hash).toBe(`#session=${id}`);
  });
});

describe("state helpers", () => {
  it("chips normalize spaces and dedupe", () => {
    let chips = addChip([], " greeting card ");
    chips = addChip(chips, "greeting_card");
    chips = addChip(chips, "bird");
    expect(chips).toEqual(["greeting_card", "bird"]);
    expect(removeChip(chips, "bird")).toEqual(["greeting_card"]);
  });

  it("canCreate needs two nouns and no session", () => {
    const state = initialState("http://stub");
    expect(canCreate(state)).toBe(false);
    state.baseDraft = ["bird", "paper"];
    expect(canCreate(state)).toBe(true);
  });

  it("escapeHtml neutralizes markup", () => {
    expect(escapeHtml('<img src="x">&')).toBe(
      "&lt;img src=&quot;x&quot;&gt;&amp;");
  });

  it("sparkline maps the value range into the viewbox", () => {
    const svg = sparklineSvg([0.39, 0.35, 0.29]);
    expect(svg).toContain("<svg");
    expect(svg).toContain("polyline");
    expect(sparklineSvg([])).toBe("");
  });
});
