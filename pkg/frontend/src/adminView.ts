// Admin flow: create an election, register voters to mint voting links,
// close the election. Validation here is cosmetic only; the service stays
// the authority and its diagnostics are surfaced inline.

import { ApiError, ElectionApi, type CreateElectionRequest, type Method } from "./api";

function field(label: string, input: HTMLElement): HTMLElement {
  const wrap = document.createElement("label");
  wrap.className = "field";
  wrap.append(label + " ", input);
  return wrap;
}

function numberInput(name: string, value: number): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "number";
  input.name = name;
  input.value = String(value);
  return input;
}

export function buildCreateRequest(
  method: Method,
  namesText: string,
  params: { [key: string]: number },
): CreateElectionRequest {
  const candidates = namesText
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  const request: CreateElectionRequest = { method, candidates };
  if (method === "score") {
    request.min_score = params.min_score;
    request.max_score = params.max_score;
  } else if (method === "borda") {
    request.max_tied_placements = params.max_tied_placements;
  } else if (method === "stv") {
    request.seats = params.seats;
  }
  return request;
}

export function votingLink(electionId: string, token: string): string {
  return `#/vote?election=${electionId}&token=${encodeURIComponent(token)}`;
}

export function renderAdminView(api: ElectionApi): HTMLElement {
  const root = document.createElement("div");
  root.className = "admin";

  const form = document.createElement("form");
  form.className = "create-election";
  const method = document.createElement("select");
  for (const value of ["score", "irv", "borda", "stv"]) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = value;
    method.appendChild(option);
  }
  const names = document.createElement("textarea");
  names.name = "candidates";
  names.placeholder = "one candidate name per line";
  const minScore = numberInput("min_score", 0);
  const maxScore = numberInput("max_score", 5);
  const tied = numberInput("max_tied_placements", 1);
  const seats = numberInput("seats", 1);
  const submit = document.createElement("button");
  submit.type = "submit";
  submit.textContent = "Create election";
  const error = document.createElement("p");
  error.className = "inline-error";
  const created = document.createElement("div");
  created.className = "created";

  form.append(
    field("Method", method),
    field("Candidates", names),
    field("Min score", minScore),
    field("Max score", maxScore),
    field("Tied placements to resolve", tied),
    field("Seats", seats),
    submit,
    error,
  );

  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    error.textContent = "";
    const request = buildCreateRequest(method.value as Method, names.value, {
      min_score: Number(minScore.value),
      max_score: Number(maxScore.value),
      max_tied_placements: Number(tied.value),
      seats: Number(seats.value),
    });
    try {
      const election = await api.createElection(request);
      const panel = renderElectionPanel(api, election.id);
      created.replaceChildren(panel);
    } catch (failure) {
      // Surface the diagnostic inline; the admin edits and resubmits.
      error.textContent = failure instanceof ApiError
        ? `${failure.rule}: ${failure.message}`
        : "network failure, try again";
    }
  });

  root.append(form, created);
  return root;
}

export function renderElectionPanel(api: ElectionApi, electionId: string): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "election-panel";
  panel.dataset.electionId = electionId;
  const title = document.createElement("h2");
  title.textContent = `Election ${electionId}`;

  const contact = document.createElement("input");
  contact.placeholder = "voter contact";
  const registerButton = document.createElement("button");
  registerButton.textContent = "Register voter";
  const links = document.createElement("ul");
  links.className = "voting-links";
  registerButton.addEventListener("click", async () => {
    if (!contact.value) return;
    const issued = await api.registerVoter(electionId, contact.value);
    const item = document.createElement("li");
    const anchor = document.createElement("a");
    anchor.href = votingLink(electionId, issued.token);
    anchor.textContent = `${contact.value}: voting link`;
    item.appendChild(anchor);
    links.appendChild(item);
    contact.value = "";
  });

  const closeButton = document.createElement("button");
  closeButton.className = "close-election";
  closeButton.textContent = "Close and tally";
  const status = document.createElement("p");
  status.className = "close-status";
  closeButton.addEventListener("click", async () => {
    try {
      await api.closeElection(electionId);
      status.textContent = "tallied";
      window.location.hash = `#/results?election=${electionId}`;
    } catch (failure) {
      status.textContent = failure instanceof ApiError
        ? `${failure.rule}: ${failure.message}`
        : "network failure, try again";
    }
  });

  panel.append(title, contact, registerButton, links, closeButton, status);
  return panel;
}
