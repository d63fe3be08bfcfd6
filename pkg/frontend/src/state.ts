// Board state is always derived from the last service response; the client
// never recomputes averages or reorders proposals.

import type { MeasureEntry, Proposal, SessionState } from "./api.js";

export interface BoardState {
  serviceUrl: string;
  measures: MeasureEntry[];
  selectedMeasure: string;
  baseDraft: string[];        // chips being edited before a session exists
  candidateDraft: string[];
  session: SessionState | null;
  proposals: Proposal[];
  error: string | null;
  busy: boolean;
}

export const DEFAULT_MEASURE = "sim:lin:sanchez-batet";

export function initialState(serviceUrl: string): BoardState {
  return {
    serviceUrl,
    measures: [],
    selectedMeasure: DEFAULT_MEASURE,
    baseDraft: [],
    candidateDraft: [],
    session: null,
    proposals: [],
    error: null,
    busy: false,
  };
}

export function addChip(chips: string[], raw: string): string[] {
  const token = raw.trim().replace(/\s+/g, "_");
  if (!token || chips.includes(token)) {
    return chips;
  }
  return [...chips, token];
}

export function removeChip(chips: string[], token: string): string[] {
  return chips.filter((c) => c !== token);
}

export function canCreate(state: BoardState): boolean {
  return state.baseDraft.length >= 2 && !state.busy && state.session === null;
}

export function withSession(state: BoardState, session: SessionState,
                            proposals: Proposal[]): BoardState {
  return { ...state, session, proposals, error: null, busy: false };
}

export function withError(state: BoardState, message: string): BoardState {
  // errors are surfaced inline and never clear the existing board
  return { ...state, error: message, busy: false };
}

/** Sparkline input: the average after session start and each accepted step. */
export function trendValues(state: BoardState): number[] {
  return state.session ? state.session.averages : [];
}
