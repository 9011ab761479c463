// Ballot form state. Ranked ballots use an ordered pick-list: candidates
// move between "available" and "chosen", so duplicates are impossible by
// construction. Score inputs clamp to the election's range. The confirmed
// payload is frozen as a string and submitted verbatim.

import type { CandidateRef, ElectionApi, ReceiptView } from "./api";

export interface RankedFormState {
  available: CandidateRef[];
  chosen: CandidateRef[];
}

export function initialRankedState(candidates: CandidateRef[]): RankedFormState {
  return { available: [...candidates], chosen: [] };
}

export function pick(state: RankedFormState, id: number): RankedFormState {
  const candidate = state.available.find((c) => c.id === id);
  if (!candidate) return state;
  return {
    available: state.available.filter((c) => c.id !== id),
    chosen: [...state.chosen, candidate],
  };
}

export function unpick(state: RankedFormState, id: number): RankedFormState {
  const candidate = state.chosen.find((c) => c.id === id);
  if (!candidate) return state;
  // Returned candidates keep their original roster position.
  const back = [...state.available, candidate].sort((a, b) => a.id - b.id);
  return { available: back, chosen: state.chosen.filter((c) => c.id !== id) };
}

export function move(
  state: RankedFormState,
  index: number,
  delta: -1 | 1,
): RankedFormState {
  const target = index + delta;
  if (index < 0 || index >= state.chosen.length) return state;
  if (target < 0 || target >= state.chosen.length) return state;
  const chosen = [...state.chosen];
  [chosen[index], chosen[target]] = [chosen[target], chosen[index]];
  return { ...state, chosen };
}

export function rankedPayload(
  token: string,
  state: RankedFormState,
): { token: string; ranking: number[] } {
  return { token, ranking: state.chosen.map((c) => c.id) };
}

export function clampScore(value: number, min: number, max: number): number {
  if (Number.isNaN(value)) return min;
  return Math.min(max, Math.max(min, Math.trunc(value)));
}

export function scorePayload(
  token: string,
  entries: ReadonlyMap<number, number>,
  min: number,
  max: number,
): { token: string; scores: Record<string, number> } {
  const scores: Record<string, number> = {};
  for (const id of [...entries.keys()].sort((a, b) => a - b)) {
    scores[String(id)] = clampScore(entries.get(id)!, min, max);
  }
  return { token, scores };
}

/** Freeze the payload for the confirmation step. */
export function confirmSubmission(payload: unknown): string {
  return JSON.stringify(payload);
}

/**
 * Send a confirmed submission. The body transmitted is the exact string
 * produced at confirmation time, byte for byte.
 */
export function submitConfirmed(
  api: ElectionApi,
  electionId: string,
  confirmedBody: string,
): Promise<ReceiptView> {
  return api.castBallotRaw(electionId, confirmedBody);
}
