"""Single-file persistence: an append-only event log with state snapshots.

The file holds one JSON record per line, either ``{"kind": "event", ...}``
or ``{"kind": "snapshot", "state": ...}``. Replay starts from the last
snapshot. Writing a snapshot rewrites the file to that single record, which
doubles as compaction: anything absent from the snapshotted state (for
example an invalidated election) leaves no bytes behind.
"""

from __future__ import annotations

import json
import os
from typing import Any, Iterator


class EventLog:
    def __init__(self, path: str, snapshot_every: int = 100):
        self.path = path
        self.snapshot_every = snapshot_every
        self._events_since_snapshot = 0

    def replay(self) -> tuple[dict | None, list[dict]]:
        """Last snapshotted state (or None) and the events recorded after it."""
        snapshot: dict | None = None
        events: list[dict] = []
        for record in self._records():
            if record.get("kind") == "snapshot":
                snapshot = record["state"]
                events = []
            else:
                events.append(record["event"])
        self._events_since_snapshot = len(events)
        return snapshot, events

    def _records(self) -> Iterator[dict]:
        if not os.path.exists(self.path):
            return
        with open(self.path, "r", encoding="utf-8") as handle:
            lines = [line.strip() for line in handle]
        for index, line in enumerate(lines):
            if not line:
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError:
                # A torn final line means the last append was interrupted;
                # drop it. Corruption anywhere else is a real fault.
                if index == len(lines) - 1:
                    return
                raise

    def append(self, event: dict[str, Any]) -> None:
        with open(self.path, "a", encoding="utf-8") as handle:
            handle.write(json.dumps({"kind": "event", "event": event},
                                    sort_keys=True) + "\n")
        self._events_since_snapshot += 1

    def snapshot(self, state: dict[str, Any]) -> None:
        """Rewrite the store as a single snapshot of ``state``."""
        temporary = self.path + ".tmp"
        with open(temporary, "w", encoding="utf-8") as handle:
            handle.write(json.dumps({"kind": "snapshot", "state": state},
                                    sort_keys=True) + "\n")
        os.replace(temporary, self.path)
        self._events_since_snapshot = 0

    def maybe_snapshot(self, state: dict[str, Any]) -> None:
        if self._events_since_snapshot >= self.snapshot_every:
            self.snapshot(state)


class Outbox:
    """Durable append-only notification records; a pluggable sender can
    drain the file later. No network delivery happens here."""

    def __init__(self, path: str):
        self.path = path

    def append(self, recipient: str, election_id: str, reason: str,
               timestamp: str) -> None:
        record = {"recipient": recipient, "election_id": election_id,
                  "reason": reason, "timestamp": timestamp}
        with open(self.path, "a", encoding="utf-8") as handle:
            handle.write(json.dumps(record, sort_keys=True) + "\n")

    def records(self) -> list[dict]:
        if not os.path.exists(self.path):
            return []
        with open(self.path, "r", encoding="utf-8") as handle:
            return [json.loads(line) for line in handle if line.strip()]
