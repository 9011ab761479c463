// Hash-based routing: #/admin, #/vote?election=ID&token=T,
// #/results?election=ID. The API origin defaults to the page origin and can
// be overridden with ?api=... in the hash query.

import { ApiError, ElectionApi } from "./api";
import { renderAdminView } from "./adminView";
import { renderPending, renderResults } from "./resultsView";
import { renderVoteView } from "./voteView";

function parseHash(hash: string): { route: string; query: URLSearchParams } {
  const stripped = hash.replace(/^#\/?/, "");
  const [route, queryText] = stripped.split("?", 2);
  return { route: route || "admin", query: new URLSearchParams(queryText ?? "") };
}

async function render(root: HTMLElement): Promise<void> {
  const { route, query } = parseHash(window.location.hash);
  const api = new ElectionApi(query.get("api") ?? "");
  root.replaceChildren();

  if (route === "vote") {
    const electionId = query.get("election");
    const token = query.get("token");
    if (!electionId || !token) {
      root.textContent = "Voting links carry an election id and a token.";
      return;
    }
    try {
      const election = await api.getElection(electionId);
      root.appendChild(renderVoteView(api, election, token));
    } catch (failure) {
      root.textContent = failure instanceof ApiError
        ? failure.message
        : "The election service is unreachable.";
    }
    return;
  }

  if (route === "results") {
    const electionId = query.get("election");
    if (!electionId) {
      root.textContent = "Results links carry an election id.";
      return;
    }
    try {
      const [doc, election] = [
        await api.getResult(electionId),
        await api.getElection(electionId),
      ];
      root.appendChild(renderResults(doc, election.candidates));
    } catch (failure) {
      if (failure instanceof ApiError && failure.status === 409) {
        root.appendChild(renderPending());
      } else {
        root.textContent = failure instanceof ApiError
          ? failure.message
          : "The election service is unreachable.";
      }
    }
    return;
  }

  root.appendChild(renderAdminView(api));
}

export function start(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const redraw = () => void render(root);
  window.addEventListener("hashchange", redraw);
  redraw();
}

if (!("vitest" in globalThis)) {
  start();
}
