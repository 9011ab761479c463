"""Service-side precondition checks for the "precheck" enforcement mode.

Deliberately written against the stored representations and without reusing
the tallying core's validators: agreement between this module's decisions
and the core's own precondition failures is a tested property, not a
given. Returns human-readable problems instead of raising so the caller
decides how to fail.
"""

from __future__ import annotations

from typing import Mapping, Sequence


def precheck_tally_inputs(definition: Mapping,
                          payloads: Sequence[Mapping]) -> list[str]:
    """Every reason the tallying core would reject this election, or []."""
    problems: list[str] = []
    method = definition["method"]
    roster = [cid for cid, _ in definition["candidates"]]

    if not roster:
        problems.append("no candidates")
    if len(set(roster)) != len(roster):
        problems.append("candidate roster repeats an id")
    if any(cid < 1 for cid in roster):
        problems.append("candidate ids below 1 are reserved")
    if method == "stv" and definition.get("seats", 0) > len(roster):
        problems.append("more seats than candidates")

    known = set(roster)
    for index, payload in enumerate(payloads):
        if method == "score":
            scores = payload.get("scores")
            if not isinstance(scores, dict):
                problems.append(f"ballot {index}: not a score ballot")
                continue
            lo, hi = definition["min_score"], definition["max_score"]
            for cid_text, value in scores.items():
                cid = int(cid_text)
                if cid not in known:
                    problems.append(f"ballot {index}: scores unknown "
                                    f"candidate {cid}")
                if not isinstance(value, int) or not lo <= value <= hi:
                    problems.append(f"ballot {index}: score {value} outside "
                                    f"[{lo}, {hi}]")
        else:
            ranking = payload.get("ranking")
            if not isinstance(ranking, list):
                problems.append(f"ballot {index}: not a preference ballot")
                continue
            if method == "stv" and ranking == []:
                problems.append(f"ballot {index}: empty")
            if len(set(ranking)) != len(ranking):
                problems.append(f"ballot {index}: repeats a candidate")
            for cid in ranking:
                if cid not in known:
                    problems.append(f"ballot {index}: ranks unknown "
                                    f"candidate {cid}")
    return problems
