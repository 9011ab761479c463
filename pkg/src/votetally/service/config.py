"""Service configuration from a JSON file and/or environment variables."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

PRECHECK = "precheck"
HALT = "halt"
ENFORCEMENT_MODES = (PRECHECK, HALT)

_ENV_PREFIX = "VOTETALLY_"


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    store_path: str = "votetally-store.jsonl"
    outbox_path: str = "votetally-outbox.jsonl"
    #: How tallying preconditions are enforced: "precheck" validates in the
    #: service before calling the core, "halt" calls the core directly and
    #: treats its structured precondition failure as the rejection signal.
    enforcement_mode: str = PRECHECK
    #: Events appended between full-state snapshots of the store file.
    snapshot_every: int = 100

    def __post_init__(self):
        if self.enforcement_mode not in ENFORCEMENT_MODES:
            raise ValueError(
                f"enforcement_mode must be one of {ENFORCEMENT_MODES}, "
                f"got {self.enforcement_mode!r}")

    def replace(self, **changes) -> "ServiceConfig":
        return dataclasses.replace(self, **changes)

    @classmethod
    def load(cls, path: str | None = None,
             env: dict[str, str] | None = None) -> "ServiceConfig":
        """File values first, then ``VOTETALLY_*`` environment overrides."""
        values: dict = {}
        if path is not None:
            with open(path, "r", encoding="utf-8") as handle:
                values.update(json.load(handle))
        environment = os.environ if env is None else env
        for name in ("host", "port", "store_path", "outbox_path",
                     "enforcement_mode", "snapshot_every"):
            raw = environment.get(_ENV_PREFIX + name.upper())
            if raw is not None:
                values[name] = raw
        for name in ("port", "snapshot_every"):
            if name in values:
                values[name] = int(values[name])
        return cls(**values)
