// Read-only rendering of result documents. Everything shown comes verbatim
// from the API payload; there is no arithmetic here.

import type { CandidateRef, ResultDoc, RoundView } from "./api";

function element(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function nameOf(names: Map<number, string>, id: number): string {
  const name = names.get(id);
  return name === undefined ? `#${id}` : name;
}

export function namesById(candidates: CandidateRef[]): Map<number, string> {
  return new Map(candidates.map((c) => [c.id, c.name]));
}

function winnerGroup(
  className: string,
  heading: string,
  ids: number[],
  names: Map<number, string>,
): HTMLElement {
  const group = element("section", className);
  group.appendChild(element("h3", "group-heading", heading));
  const list = element("ul", "winner-list");
  for (const id of ids) {
    const item = element("li", "winner", nameOf(names, id));
    item.dataset.candidateId = String(id);
    list.appendChild(item);
  }
  if (ids.length === 0) {
    list.appendChild(element("li", "winner none", "nobody"));
  }
  group.appendChild(list);
  return group;
}

function roundsTable(rounds: RoundView[], names: Map<number, string>): HTMLElement {
  const table = element("table", "rounds");
  const head = element("tr", "rounds-head");
  for (const title of ["round", "action", "affected", "tallies"]) {
    head.appendChild(element("th", "rounds-cell", title));
  }
  table.appendChild(head);
  for (const round of rounds) {
    const row = element("tr", "round-row");
    row.appendChild(element("td", "rounds-cell", String(round.round)));
    row.appendChild(element("td", "rounds-cell", round.action));
    row.appendChild(element("td", "rounds-cell",
      round.affected.map((id) => nameOf(names, id)).join(", ")));
    row.appendChild(element("td", "rounds-cell",
      Object.entries(round.tallies)
        .map(([id, value]) => `${nameOf(names, Number(id))}: ${value}`)
        .join("; ")));
    table.appendChild(row);
  }
  return table;
}

export function renderPending(): HTMLElement {
  return element("div", "results pending",
    "No result yet: the election has not been tallied.");
}

export function renderResults(
  doc: ResultDoc,
  candidates: CandidateRef[],
  showRounds = true,
): HTMLElement {
  const names = namesById(candidates);
  const root = element("div", "results");
  const payload = doc.result;

  if (payload.method === "score") {
    root.appendChild(winnerGroup("score-winners", "Highest total",
      payload.winners, names));
    const totals = element("ul", "totals");
    for (const [id, total] of Object.entries(payload.totals)) {
      totals.appendChild(element("li", "total",
        `${nameOf(names, Number(id))}: ${total}`));
    }
    root.appendChild(totals);
  } else if (payload.method === "stv") {
    root.appendChild(element("p", "quota", `Quota: ${payload.quota}`));
    root.appendChild(winnerGroup("quota-winners", "Elected by quota",
      payload.quota_winners, names));
    root.appendChild(winnerGroup("autofill-winners", "Seated by autofill",
      payload.autofill_winners, names));
  } else if (payload.winner === null) {
    root.appendChild(element("p", "no-winner-banner",
      "No winner: this election produced no winner."));
  } else {
    root.appendChild(winnerGroup("single-winner", "Winner",
      [payload.winner], names));
  }

  if (showRounds && doc.rounds.length > 0) {
    root.appendChild(roundsTable(doc.rounds, names));
  }
  return root;
}
