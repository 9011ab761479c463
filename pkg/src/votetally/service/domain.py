"""Domain flow for live elections.

State is an event-sourced dict rebuilt from the store on startup. Every
mutation appends an event and applies it to the in-memory state under one
writer lock, so concurrent requests for the same election are serialized
and a cast token can be consumed exactly once.

Stored ballots are never linked to a voter: consuming a token and storing
the ballot are two separate events, and the ballot record carries only the
payload and its position.
"""

from __future__ import annotations

import hashlib
import json
import secrets
import threading
import uuid
from datetime import datetime, timezone
from typing import Mapping, Sequence

from .. import ballotio
from ..errors import InvalidBallotError, PreconditionViolation, TallyError
from ..validate import check_preference_ballot, check_score_ballot
from .config import HALT, PRECHECK, ServiceConfig
from .enforcement import precheck_tally_inputs
from .store import EventLog, Outbox

OPEN = "open"
CLOSED = "closed"
TALLIED = "tallied"


class ServiceError(TallyError):
    pass


class NotFoundError(ServiceError):
    def __init__(self, message: str, tombstone_reason: str | None = None):
        self.tombstone_reason = tombstone_reason
        super().__init__(message)


class WrongStatusError(ServiceError):
    pass


class UnknownTokenError(ServiceError):
    pass


class TokenUsedError(ServiceError):
    pass


class ValidationFailureError(ServiceError):
    """A tally was rejected by precondition enforcement; the election has
    been invalidated."""


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _digest(token: str) -> str:
    return hashlib.sha256(token.encode("utf-8")).hexdigest()


def _receipt(payload: Mapping) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def empty_state() -> dict:
    return {"elections": {}, "tombstones": {}}


def apply_event(state: dict, event: dict) -> None:
    """Fold one event into the state; the only place state shape changes."""
    kind = event["type"]
    if kind == "election-created":
        election = event["election"]
        state["elections"][election["id"]] = election
    elif kind == "voter-registered":
        election = state["elections"][event["election_id"]]
        registration = event["registration"]
        election["registrations"][registration["id"]] = registration
    elif kind == "token-used":
        election = state["elections"][event["election_id"]]
        election["registrations"][event["registration_id"]]["used"] = True
    elif kind == "ballot-stored":
        election = state["elections"][event["election_id"]]
        election["ballots"].append(event["payload"])
    elif kind == "election-closed":
        state["elections"][event["election_id"]]["status"] = CLOSED
    elif kind == "election-tallied":
        election = state["elections"][event["election_id"]]
        election["status"] = TALLIED
        election["result"] = event["result"]
        election["rounds"] = event["rounds"]
    elif kind == "election-invalidated":
        state["elections"].pop(event["election_id"], None)
        state["tombstones"][event["election_id"]] = {
            "reason": event["reason"], "at": event["at"]}
    else:
        raise ValueError(f"unknown event type {kind!r}")


class ElectionService:
    def __init__(self, config: ServiceConfig):
        self.config = config
        self._log = EventLog(config.store_path, config.snapshot_every)
        self._outbox = Outbox(config.outbox_path)
        self._lock = threading.Lock()
        snapshot, events = self._log.replay()
        self._state = snapshot if snapshot is not None else empty_state()
        for event in events:
            apply_event(self._state, event)

    # -- internals ---------------------------------------------------------

    def _record(self, event: dict) -> None:
        apply_event(self._state, event)
        self._log.append(event)
        self._log.maybe_snapshot(self._state)

    def _election(self, election_id: str) -> dict:
        tombstone = self._state["tombstones"].get(election_id)
        if tombstone is not None:
            raise NotFoundError(
                f"election {election_id} was invalidated: "
                f"{tombstone['reason']}", tombstone["reason"])
        election = self._state["elections"].get(election_id)
        if election is None:
            raise NotFoundError(f"no election {election_id}")
        return election

    def _definition(self, election: dict) -> ballotio.ElectionDefinition:
        stored = election["definition"]
        return ballotio.ElectionDefinition(
            method=stored["method"],
            candidates=tuple((cid, name) for cid, name in stored["candidates"]),
            min_score=stored.get("min_score"),
            max_score=stored.get("max_score"),
            max_tied_placements=stored.get("max_tied_placements"),
            seats=stored.get("seats"))

    @staticmethod
    def _decode_ballots(method: str, payloads: Sequence[Mapping]) -> list:
        """Stored payloads back to core ballot values. A payload that does
        not even decode is a precondition failure, same as one the core
        rejects."""
        try:
            if method == "score":
                return [{int(cid): value
                         for cid, value in p["scores"].items()}
                        for p in payloads]
            return [tuple(p["ranking"]) for p in payloads]
        except (KeyError, TypeError, ValueError, AttributeError) as broken:
            raise PreconditionViolation(
                "corrupt-ballot", f"stored ballot does not decode: {broken!r}")

    # -- operations ---------------------------------------------------------

    def create_election(self, method: str, candidate_names: Sequence[str],
                        **parameters) -> dict:
        definition = ballotio.build_definition(method, candidate_names,
                                               **parameters)
        election = {
            "id": uuid.uuid4().hex,
            "definition": {
                "method": definition.method,
                "candidates": [[cid, name]
                               for cid, name in definition.candidates],
                "min_score": definition.min_score,
                "max_score": definition.max_score,
                "max_tied_placements": definition.max_tied_placements,
                "seats": definition.seats,
            },
            "status": OPEN,
            "created_at": _now(),
            "registrations": {},
            "ballots": [],
            "result": None,
            "rounds": None,
        }
        with self._lock:
            self._record({"type": "election-created", "election": election})
        return self.describe_election(election["id"])

    def describe_election(self, election_id: str) -> dict:
        with self._lock:
            election = self._election(election_id)
            definition = election["definition"]
            return {
                "id": election["id"],
                "status": election["status"],
                "method": definition["method"],
                "candidates": [{"id": cid, "name": name}
                               for cid, name in definition["candidates"]],
                "min_score": definition.get("min_score"),
                "max_score": definition.get("max_score"),
                "max_tied_placements": definition.get("max_tied_placements"),
                "seats": definition.get("seats"),
                "created_at": election["created_at"],
                "ballots_cast": len(election["ballots"]),
            }

    def register_voter(self, election_id: str, contact: str) -> str:
        token = secrets.token_urlsafe(16)
        with self._lock:
            election = self._election(election_id)
            if election["status"] != OPEN:
                raise WrongStatusError("registration requires an open election")
            registration = {"id": uuid.uuid4().hex, "contact": contact,
                            "token_digest": _digest(token), "used": False}
            self._record({"type": "voter-registered",
                          "election_id": election_id,
                          "registration": registration})
        return token

    def cast_ballot(self, election_id: str, token: str,
                    payload: Mapping) -> dict:
        with self._lock:
            election = self._election(election_id)
            if election["status"] != OPEN:
                raise WrongStatusError("election is no longer open")
            digest = _digest(token)
            registration = next(
                (r for r in election["registrations"].values()
                 if r["token_digest"] == digest), None)
            if registration is None:
                raise UnknownTokenError("token was never issued here")
            if registration["used"]:
                raise TokenUsedError("token already used")

            stored = self._validated_payload(election, payload)
            self._record({"type": "token-used", "election_id": election_id,
                          "registration_id": registration["id"]})
            self._record({"type": "ballot-stored", "election_id": election_id,
                          "payload": stored})
        return {"election_id": election_id, "receipt": _receipt(stored)}

    def _validated_payload(self, election: dict, payload: Mapping) -> dict:
        definition = self._definition(election)
        roster = frozenset(definition.roster())
        if definition.method == "score":
            scores = payload.get("scores")
            if scores is None:
                raise InvalidBallotError("wrong-ballot-kind",
                                         "this election takes score ballots")
            scores = {int(cid): value for cid, value in scores.items()}
            check_score_ballot(scores, roster, definition.min_score,
                               definition.max_score)
            return {"scores": {str(cid): value
                               for cid, value in sorted(scores.items())}}
        ranking = payload.get("ranking")
        if ranking is None:
            raise InvalidBallotError("wrong-ballot-kind",
                                     "this election takes ranked ballots")
        ranking = [int(c) for c in ranking]
        check_preference_ballot(ranking, roster,
                                allow_empty=definition.method != "stv")
        return {"ranking": ranking}

    def close_and_tally(self, election_id: str) -> dict:
        with self._lock:
            election = self._election(election_id)
            if election["status"] not in (OPEN, CLOSED):
                raise WrongStatusError("election already tallied")
            if election["status"] == OPEN:
                self._record({"type": "election-closed",
                              "election_id": election_id})

            definition = self._definition(election)
            payloads = list(election["ballots"])
            try:
                if self.config.enforcement_mode == PRECHECK:
                    problems = precheck_tally_inputs(election["definition"],
                                                     payloads)
                    if problems:
                        raise PreconditionViolation("precheck", problems[0])
                outcome = ballotio.tally_election(
                    definition, self._decode_ballots(definition.method,
                                                     payloads))
            except PreconditionViolation as failure:
                reason = f"tally rejected: {failure}"
                self._invalidate_locked(election_id, reason)
                raise ValidationFailureError(reason) from failure

            document = ballotio.result_to_json(outcome)
            self._record({"type": "election-tallied",
                          "election_id": election_id,
                          "result": document["result"],
                          "rounds": document["rounds"]})
        return self.get_result(election_id)

    def invalidate_election(self, election_id: str, reason: str) -> None:
        with self._lock:
            self._election(election_id)  # NotFound on tombstone or absence
            self._invalidate_locked(election_id, reason)

    def _invalidate_locked(self, election_id: str, reason: str) -> None:
        election = self._state["elections"][election_id]
        at = _now()
        for registration in election["registrations"].values():
            self._outbox.append(registration["contact"], election_id,
                                reason, at)
        self._record({"type": "election-invalidated",
                      "election_id": election_id, "reason": reason,
                      "at": at})
        # Compact immediately: the store file must retain no trace of the
        # election or its ballots, only the tombstone inside the snapshot.
        self._log.snapshot(self._state)

    def get_result(self, election_id: str) -> dict:
        with self._lock:
            election = self._election(election_id)
            if election["status"] != TALLIED:
                raise WrongStatusError("election not tallied yet")
            return {"election_id": election_id, "status": TALLIED,
                    "result": election["result"],
                    "rounds": election["rounds"]}

    def export_ballots(self, election_id: str) -> list[dict]:
        """Stored ballot payloads in acceptance order (audit/test seam)."""
        with self._lock:
            return [dict(p) for p in self._election(election_id)["ballots"]]
