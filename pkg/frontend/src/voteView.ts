// Voter flow: load the election, fill in the method-specific form, confirm
// the exact payload, submit, show the receipt. Token reuse and closed
// elections render as terminal states.

import { ApiError, ElectionApi, type ElectionView } from "./api";
import {
  RankedFormState,
  clampScore,
  confirmSubmission,
  initialRankedState,
  move,
  pick,
  rankedPayload,
  scorePayload,
  submitConfirmed,
  unpick,
} from "./ballotForm";

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderVoteView(
  api: ElectionApi,
  election: ElectionView,
  token: string,
): HTMLElement {
  const root = el("div", "vote");
  root.appendChild(el("h2", "vote-title", `Vote: ${election.method}`));

  const confirmBox = el("div", "confirm-box");
  const outcome = el("p", "vote-outcome");

  let buildPayload: () => unknown;

  if (election.method === "score") {
    const min = election.min_score ?? 0;
    const max = election.max_score ?? 0;
    const entries = new Map<number, number>();
    const list = el("ul", "score-inputs");
    for (const candidate of election.candidates) {
      const input = document.createElement("input");
      input.type = "number";
      input.min = String(min);
      input.max = String(max);
      input.value = String(min);
      input.dataset.candidateId = String(candidate.id);
      entries.set(candidate.id, min);
      input.addEventListener("change", () => {
        // Out-of-range typing clamps immediately; the payload clamps again.
        const clamped = clampScore(Number(input.value), min, max);
        input.value = String(clamped);
        entries.set(candidate.id, clamped);
      });
      const item = el("li", "score-input");
      item.append(`${candidate.name} (${min}..${max}) `, input);
      list.appendChild(item);
    }
    root.appendChild(list);
    buildPayload = () => scorePayload(token, entries, min, max);
  } else {
    let state: RankedFormState = initialRankedState(election.candidates);
    const availableList = el("ul", "available");
    const chosenList = el("ol", "chosen");

    const redraw = () => {
      availableList.replaceChildren();
      for (const candidate of state.available) {
        const item = el("li", "available-candidate");
        const add = document.createElement("button");
        add.textContent = `rank ${candidate.name}`;
        add.addEventListener("click", () => {
          state = pick(state, candidate.id);
          redraw();
        });
        item.appendChild(add);
        availableList.appendChild(item);
      }
      chosenList.replaceChildren();
      state.chosen.forEach((candidate, index) => {
        const item = el("li", "chosen-candidate", candidate.name + " ");
        item.dataset.candidateId = String(candidate.id);
        const up = document.createElement("button");
        up.textContent = "up";
        up.addEventListener("click", () => {
          state = move(state, index, -1);
          redraw();
        });
        const down = document.createElement("button");
        down.textContent = "down";
        down.addEventListener("click", () => {
          state = move(state, index, 1);
          redraw();
        });
        const drop = document.createElement("button");
        drop.textContent = "remove";
        drop.addEventListener("click", () => {
          state = unpick(state, candidate.id);
          redraw();
        });
        item.append(up, down, drop);
        chosenList.appendChild(item);
      });
    };
    redraw();
    root.append(el("h3", "", "Available"), availableList,
      el("h3", "", "Your ranking (best first)"), chosenList);
    buildPayload = () => rankedPayload(token, state);
  }

  const confirmButton = document.createElement("button");
  confirmButton.className = "confirm";
  confirmButton.textContent = "Review ballot";
  confirmButton.addEventListener("click", () => {
    const confirmed = confirmSubmission(buildPayload());
    confirmBox.replaceChildren();
    confirmBox.appendChild(el("pre", "confirmed-payload", confirmed));
    const send = document.createElement("button");
    send.className = "submit";
    send.textContent = "Cast ballot";
    send.addEventListener("click", async () => {
      try {
        // The confirmed string itself is transmitted, never a re-encoding.
        const receipt = await submitConfirmed(api, election.id, confirmed);
        outcome.className = "vote-outcome receipt";
        outcome.textContent = `Ballot received. Receipt: ${receipt.receipt}`;
        send.disabled = true;
      } catch (failure) {
        if (failure instanceof ApiError && failure.rule === "token-used") {
          outcome.className = "vote-outcome terminal";
          outcome.textContent = "Already voted: this link was used.";
        } else if (failure instanceof ApiError
                   && failure.rule === "wrong-status") {
          outcome.className = "vote-outcome terminal";
          outcome.textContent = "This election is closed.";
        } else {
          outcome.className = "vote-outcome error";
          outcome.textContent = failure instanceof ApiError
            ? `${failure.rule}: ${failure.message}`
            : "network failure, try again";
        }
      }
    });
    confirmBox.appendChild(send);
  });

  root.append(confirmButton, confirmBox, outcome);
  return root;
}
