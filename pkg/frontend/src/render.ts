// DOM rendering. The proposals list is rendered in exactly the order the
// service returned it; the first entry (most divergent) is highlighted.

import type { BoardState } from "./state.js";
import { canCreate, trendValues } from "./state.js";

export function escapeHtml(text: string): string {
  return text.replace(/[&<>"']/g, (ch) => (
    { "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;", "'": "&#39;" }[ch] as string
  ));
}

function fmt(value: number): string {
  return value.toFixed(4);
}

export function sparklineSvg(values: number[], width = 220, height = 48): string {
  if (values.length === 0) {
    return "";
  }
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const span = hi - lo || 1;
  const step = values.length > 1 ? width / (values.length - 1) : 0;
  const points = values
    .map((v, i) => `${(i * step).toFixed(1)},${(height - 6 - ((v - lo) / span) * (height - 12) + 3).toFixed(1)}`)
    .join(" ");
  return `<svg class="sparkline" viewBox="0 0 ${width} ${height}" ` +
    `width="${width}" height="${height}" role="img" aria-label="average similarity trend">` +
    `<polyline fill="none" stroke-width="2" points="${points}"></polyline></svg>`;
}

function chipRow(chips: string[], kind: "base" | "candidate",
                 removable: boolean): string {
  const items = chips.map((c) =>
    `<span class="chip chip-${kind}" data-chip="${escapeHtml(c)}">${escapeHtml(c)}` +
    (removable
      ? `<button class="chip-remove" data-kind="${kind}" data-token="${escapeHtml(c)}" aria-label="remove ${escapeHtml(c)}">×</button>`
      : "") +
    `</span>`).join("");
  return `<div class="chips" data-chips="${kind}">${items || '<span class="empty">none yet</span>'}</div>`;
}

export function render(root: HTMLElement, state: BoardState): void {
  const session = state.session;
  const measureOptions = (state.measures.length
    ? state.measures.filter((m) => m.id.startsWith("sim:"))
    : [{ id: state.selectedMeasure, family: "", normalized: true, note: "" }])
    .map((m) => `<option value="${escapeHtml(m.id)}"` +
      (m.id === state.selectedMeasure ? " selected" : "") +
      `>${escapeHtml(m.id)}</option>`).join("");

  const setup = `
    <section class="panel" id="setup" aria-label="Session setup">
      <h2>Design task nouns</h2>
      ${chipRow(session ? session.base : state.baseDraft, "base", !session)}
      ${session ? "" : `
        <form id="base-form" class="chip-form">
          <input id="base-input" type="text" placeholder="add base noun" autocomplete="off">
          <button type="submit">add</button>
        </form>`}
      <h2>Candidate pool</h2>
      ${chipRow(session ? session.pool : state.candidateDraft, "candidate", !session)}
      ${session ? "" : `
        <form id="candidate-form" class="chip-form">
          <input id="candidate-input" type="text" placeholder="add candidate noun" autocomplete="off">
          <button type="submit">add</button>
        </form>
        <label class="measure-row">measure
          <select id="measure-select">${measureOptions}</select>
        </label>
        <button id="create-session" ${canCreate(state) ? "" : "disabled"}>start session</button>`}
    </section>`;

  const average = session
    ? `<section class="panel" id="status" aria-label="Current state">
        <h2>Average similarity</h2>
        <div class="average" id="current-average">${fmt(session.current_average)}</div>
        <div class="measure-id">${escapeHtml(session.measure)}</div>
        ${sparklineSvg(trendValues(state))}
        <div class="session-id">session <code>${escapeHtml(session.session_id)}</code></div>
      </section>`
    : "";

  const proposals = session
    ? `<section class="panel" id="proposals" aria-label="Proposals">
        <h2>Proposals (most divergent first)</h2>
        <ol class="proposal-list">
          ${state.proposals.map((p, i) => `
            <li class="proposal${i === 0 ? " top-proposal" : ""}" data-candidate="${escapeHtml(p.candidate)}">
              <span class="candidate">${escapeHtml(p.candidate)}</span>
              <span class="projected">${fmt(p.projected_average)}</span>
              <span class="delta">(${p.delta >= 0 ? "+" : ""}${fmt(p.delta)})</span>
              <button class="decide" data-candidate="${escapeHtml(p.candidate)}" data-decision="accepted">accept</button>
              <button class="decide" data-candidate="${escapeHtml(p.candidate)}" data-decision="rejected">reject</button>
            </li>`).join("")}
        </ol>
        ${state.proposals.length === 0 ? '<div class="empty">candidate pool exhausted</div>' : ""}
      </section>`
    : "";

  const history = session && session.history.length
    ? `<section class="panel" id="history" aria-label="Decision history">
        <h2>History</h2>
        <ol class="history-list">
          ${session.history.map((h) => `
            <li class="decision decision-${h.decision}">
              <span class="candidate">${escapeHtml(h.candidate)}</span>
              <span class="verdict">${h.decision}</span>
              <span class="resulting">avg ${fmt(h.resulting_average)}</span>
            </li>`).join("")}
        </ol>
      </section>`
    : "";

  const error = state.error
    ? `<div class="error" role="alert">${escapeHtml(state.error)}</div>`
    : "";

  root.innerHTML = `
    <header><h1>semgraph ideation board</h1>
      <span class="service-url">${escapeHtml(state.serviceUrl)}</span></header>
    ${error}
    <main class="board">${setup}${average}${proposals}${history}</main>`;
}
