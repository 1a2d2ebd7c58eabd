"""Append-only store of calibrated critical values.

The file is JSON lines: a version header followed by one entry per line.
Lookups match every key field exactly, so a value calibrated with a
different replication count or entropy estimator is never returned.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass
from pathlib import Path

from .errors import ConfigError

STORE_ENV = "RSSENTROPY_STORE"
DEFAULT_STORE = "critical_values.jsonl"
_HEADER = {"format": "rssentropy-critical-values", "version": 1}


@dataclass(frozen=True)
class CriticalKey:
    test: str
    variant: str
    estimator: str
    k: int
    r: int
    m: int
    alpha: float
    reps: int


@dataclass(frozen=True)
class CriticalEntry:
    key: CriticalKey
    value: float
    stderr: float
    config_hash: str

    @property
    def critical(self) -> float:
        return self.value


def default_store_path() -> Path:
    return Path(os.environ.get(STORE_ENV, DEFAULT_STORE))


class CriticalValueStore:
    def __init__(self, path=None):
        self.path = Path(path) if path is not None else default_store_path()
        self._entries: dict[CriticalKey, CriticalEntry] = {}
        if self.path.exists():
            self._load()

    def _load(self):
        with self.path.open() as fh:
            lines = fh.read().splitlines()
        if not lines:
            return
        try:
            header = json.loads(lines[0])
        except json.JSONDecodeError:
            header = None
        if header != _HEADER:
            raise ConfigError(f"{self.path}:1: not a critical-value store (bad version header)")
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                key = CriticalKey(**rec["key"])
                entry = CriticalEntry(key, float(rec["value"]), float(rec["stderr"]), rec["config_hash"])
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ConfigError(f"{self.path}:{lineno}: malformed store entry ({exc})") from None
            self._entries[key] = entry

    def __len__(self):
        return len(self._entries)

    def __contains__(self, key):
        return key in self._entries

    def get(self, key: CriticalKey) -> CriticalEntry | None:
        return self._entries.get(key)

    def lookup(self, key: CriticalKey) -> CriticalEntry:
        try:
            return self._entries[key]
        except KeyError:
            raise KeyError(f"no critical value stored for {key}") from None

    def add(self, entries):
        """Append entries to the file (creating it with a header if needed)."""
        entries = list(entries)
        new_file = not self.path.exists() or self.path.stat().st_size == 0
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            if new_file:
                fh.write(json.dumps(_HEADER) + "\n")
            for e in entries:
                rec = {
                    "key": asdict(e.key),
                    "value": e.value,
                    "stderr": e.stderr,
                    "config_hash": e.config_hash,
                }
                fh.write(json.dumps(rec) + "\n")
                self._entries[e.key] = e
